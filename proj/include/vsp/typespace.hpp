#pragma once

#include <string>

#include "vsp/element.hpp"
#include "vsp/invariant.hpp"
#include "vsp/iso.hpp"
#include "vsp/model.hpp"

namespace vsp {

enum class TypeKind { Realized, GenericFree, SumType };

/// 1-type of an element over a finitely generated fragment A.
///
/// A SumType records the least n with x - m in X^n for some m in A, the
/// canonical such m, and the invariant of (basis of A, x - m), which pins
/// down the type completely.
struct TypeDescriptor {
    TypeKind kind = TypeKind::GenericFree;
    ModelElement element;  // Realized: the element itself; SumType: the coset representative
    std::size_t n = 0;
    QfInvariant profile;

    std::string to_string() const;
    friend bool operator==(const TypeDescriptor&, const TypeDescriptor&) = default;
};

TypeDescriptor classify(const FieldCtx& field, const ModelElement& a, const SubspaceHandle& fragment);

/// Partial isomorphism fixing a basis of the fragment and sending a to b.
/// When the fragment and a - m lie in F it is the hull isomorphism, which
/// matches the support components of a and b axis by axis.
PartialIso conjugacy_witness(const FieldCtx& field, const ModelElement& a, const ModelElement& b,
                             const SubspaceHandle& fragment);

}  // namespace vsp
