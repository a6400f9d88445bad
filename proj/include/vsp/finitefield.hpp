#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"
#include "vsp/model.hpp"

namespace vsp {

using Pair = std::array<ModelElement, 2>;

/// Pairs a, b over GF(p) with the same quantifier-free type whose spans
/// have weights p and p+1. Axis i < p carries m_i = e(Ai,0) and
/// m_i' = e(Ai,1); m = e(Ap,0).
struct FfCounterexample {
    FieldCtx field;
    Pair a;
    Pair b;
};

FfCounterexample construct_counterexample(std::uint64_t p);

/// Checks that `model` has the axes the construction uses.
void require_counterexample_room(const Model& model);

struct CombinationWeight {
    Scalar lambda, mu;
    std::optional<std::size_t> weight_a;  // nullopt outside F
    std::optional<std::size_t> weight_b;
    bool zero_a = false;
    bool zero_b = false;
};

/// Every combination λx₀ + μx₁ over the finite field, for both pairs.
std::vector<CombinationWeight> combination_table(const FieldCtx& field, const Pair& a, const Pair& b);

/// Exhaustive qf-equivalence of pairs: every two-variable atom tests zero or
/// membership in X^n of some λx₀ + μx₁.
bool brute_qf_equiv(const FieldCtx& field, const Pair& a, const Pair& b);

/// Number of axes met by the span, found by exhausting its elements.
std::size_t exhaustive_subspace_weight(const FieldCtx& field, const Pair& x);
/// Largest weight of a single element of the span.
std::size_t max_element_weight(const FieldCtx& field, const Pair& x);

/// Rendering used by the command line tool.
std::string describe_counterexample(const FfCounterexample& ce);

}  // namespace vsp
