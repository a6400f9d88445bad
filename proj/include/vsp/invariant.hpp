#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"
#include "vsp/linalg.hpp"

namespace vsp {

/// f_a : K^n -> M, (λ_i) ↦ Σ λ_i a_i.
class LinearMapFa {
public:
    LinearMapFa(FieldCtx field, std::vector<ModelElement> tuple) : field_(field), tuple_(std::move(tuple)) {}

    const FieldCtx& field() const { return field_; }
    const std::vector<ModelElement>& tuple() const { return tuple_; }
    std::size_t arity() const { return tuple_.size(); }

    ModelElement operator()(const Vec& lambda) const;
    /// Generators of f_a(U).
    std::vector<ModelElement> image(const Subspace& u) const;

private:
    FieldCtx field_;
    std::vector<ModelElement> tuple_;
};

ModelElement apply_fa(const LinearMapFa& m, const Vec& lambda);

/// Complete quantifier-free data of a tuple: the coefficient vectors landing
/// in F(M), and one kernel ker(π_Y ∘ f_a) ∩ v_f per axis Y met by f_a(v_f).
struct QfInvariant {
    FieldCtx field;
    std::size_t arity = 0;
    Subspace v_f;
    std::vector<Subspace> kernels;  // sorted

    /// `arity=2; vf=[(1,0),(0,1)]; kernels=[ [], [(1,0)] ]`
    std::string to_string() const;
    friend bool operator==(const QfInvariant&, const QfInvariant&) = default;
};

QfInvariant qf_invariant(const FieldCtx& field, std::span<const ModelElement> tuple);

/// Multiplicity of `v` among the kernels.
std::size_t g_of(const QfInvariant& inv, const Subspace& v);
/// Weight of f_a(λ) for λ in v_f, read off the kernels.
std::size_t weight_from_invariant(const QfInvariant& inv, const Vec& lambda);
/// ker f_a as the intersection of v_f with every kernel.
Subspace kernel_of(const QfInvariant& inv);

using WeightOracle = std::function<std::size_t(const Subspace&)>;

/// U ↦ w(f_a(U)), through a generic witness over the rationals and the
/// union of supports otherwise.
WeightOracle weight_oracle(const LinearMapFa& m);

/// Decides g_a(V) >= r from subspace weights alone. `candidates` must contain
/// every subspace that can occur as a kernel; elements of candidates strictly
/// above V supply the finite test set.
bool g_via_inclusion_exclusion(const WeightOracle& weights, const Subspace& v, std::size_t r,
                               std::span<const Subspace> candidates);

/// Kernels of the per-axis row blocks of the tuple's coordinate matrix.
std::vector<Subspace> kernel_candidates(const LinearMapFa& m);

bool qf_equiv(const FieldCtx& field, std::span<const ModelElement> a, std::span<const ModelElement> b);

}  // namespace vsp
