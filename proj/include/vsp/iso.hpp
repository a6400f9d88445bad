#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"
#include "vsp/model.hpp"

namespace vsp {

/// Linear map between finitely generated subspaces, given on generators.
/// Construction checks that the generator tuples satisfy the same linear
/// relations, so the map is well defined.
class PartialIso {
public:
    static PartialIso make(const FieldCtx& field, std::vector<ModelElement> domain, std::vector<ModelElement> image);
    static PartialIso empty(const FieldCtx& field) { return make(field, {}, {}); }

    const FieldCtx& field() const { return field_; }
    const std::vector<ModelElement>& domain_generators() const { return domain_; }
    const std::vector<ModelElement>& image_generators() const { return image_; }
    /// Axis bijection used to build a hull isomorphism; empty otherwise.
    const std::map<AxisId, AxisId>& sigma() const { return sigma_; }

    bool in_domain(const ModelElement& x) const;
    ModelElement apply(const ModelElement& x) const;
    PartialIso inverse() const;
    PartialIso extend(const ModelElement& a, const ModelElement& b) const;
    /// Whether the generator tuples have the same quantifier-free type.
    bool preserves_qf_type() const;

    /// One `x |-> y` line per generator.
    std::string to_string() const;

private:
    friend PartialIso extend_to_hat(const FieldCtx&, std::span<const ModelElement>, std::span<const ModelElement>);
    explicit PartialIso(FieldCtx f) : field_(f) {}
    FieldCtx field_;
    std::vector<ModelElement> domain_;
    std::vector<ModelElement> image_;
    std::map<AxisId, AxisId> sigma_;
};

/// For qf-equivalent tuples inside F, the isomorphism of hulls extending
/// a_l ↦ b_l. Domain generators form a basis of the hull made of axis vectors.
PartialIso extend_to_hat(const FieldCtx& field, std::span<const ModelElement> a, std::span<const ModelElement> b);

/// Extends `f` to a domain containing `a`; returns the extension and the image of `a`.
/// Fresh coordinates are drawn from `target`.
std::pair<PartialIso, ModelElement> back_and_forth_step(const PartialIso& f, const ModelElement& a,
                                                        const Model& source, const Model& target);

}  // namespace vsp
