#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"

namespace vsp {

/// Countable cardinal: a natural number or aleph_0.
class CardinalSymbol {
public:
    CardinalSymbol() = default;
    static CardinalSymbol finite(std::uint64_t n) { return CardinalSymbol(false, n); }
    static CardinalSymbol aleph0() { return CardinalSymbol(true, 0); }
    static CardinalSymbol parse(const std::string& text);

    bool is_aleph0() const { return aleph0_; }
    bool is_finite() const { return !aleph0_; }
    std::uint64_t value() const { return n_; }
    /// True when `n` (a natural) is strictly below this cardinal.
    bool exceeds(std::uint64_t n) const { return aleph0_ || n < n_; }

    std::string to_string() const;

    friend bool operator==(const CardinalSymbol&, const CardinalSymbol&) = default;
    friend std::strong_ordering operator<=>(const CardinalSymbol& a, const CardinalSymbol& b);

private:
    CardinalSymbol(bool a, std::uint64_t n) : aleph0_(a), n_(n) {}
    bool aleph0_ = false;
    std::uint64_t n_ = 0;
};

/// Isomorphism invariant of a model: codimension of F(M) and the number of
/// axes of each dimension.
struct ModelDescriptor {
    CardinalSymbol f_codim;
    std::map<CardinalSymbol, CardinalSymbol> axis_census;  // dimension -> count

    /// aleph_0 many aleph_0-dimensional axes and F(M) of infinite codimension.
    static ModelDescriptor rich();

    /// Drops zero counts; rejects zero-dimensional axes.
    ModelDescriptor normalized() const;
    CardinalSymbol total_axes() const;
    /// A model of the theory proper needs infinitely many axes.
    bool is_fragment() const { return total_axes().is_finite(); }
    bool is_rich() const;
    std::string to_string() const;

    friend bool operator==(const ModelDescriptor&, const ModelDescriptor&) = default;
};

bool descriptor_iso(const ModelDescriptor& d1, const ModelDescriptor& d2);

/// Lazily materialized canonical model: axes are numbered 0,1,...; axis i
/// has the dimension assigned to it by the descriptor, and free coordinates
/// span a complement of F(M).
class Model {
public:
    static Model canonical(const ModelDescriptor& descriptor, const FieldCtx& field);
    static Model rich(const FieldCtx& field) { return canonical(ModelDescriptor::rich(), field); }

    const FieldCtx& field() const { return field_; }
    const ModelDescriptor& descriptor() const { return descriptor_; }

    bool has_axis(AxisId axis) const;
    CardinalSymbol axis_dim(AxisId axis) const;
    CardinalSymbol axis_count() const { return descriptor_.total_axes(); }
    CardinalSymbol free_codim() const { return descriptor_.f_codim; }
    /// Total dimension when finite.
    std::optional<std::uint64_t> finite_dimension() const;
    /// Basis of a finite-dimensional model: axis units then free units.
    std::vector<ModelElement> finite_basis() const;

    /// Whether every coordinate of `e` exists in this model and its scalars
    /// lie in this model's field.
    bool contains(const ModelElement& e) const;

    void define_constant(const std::string& name, const ModelElement& value);
    const std::map<std::string, ModelElement>& constants() const { return constants_; }
    const ModelElement& constant(const std::string& name) const;

    /// First axis index governed by the aleph_0-count census entries.
    std::uint64_t finite_block_end() const { return finite_blocks_.empty() ? 0 : finite_blocks_.back().first; }
    std::uint64_t cycling_period() const { return cycling_dims_.size(); }

    friend bool operator==(const Model&, const Model&) = default;

private:
    Model(ModelDescriptor d, FieldCtx f);

    FieldCtx field_;
    ModelDescriptor descriptor_;
    // Axes [0, finite_block_end_) come from finite-count census entries in
    // dimension order; past that point, aleph_0-count entries alternate.
    std::vector<std::pair<std::uint64_t, CardinalSymbol>> finite_blocks_;  // (end index, dim)
    std::vector<CardinalSymbol> cycling_dims_;
    std::map<std::string, ModelElement> constants_;
};

/// Hands out fresh coordinates relative to a set of already-used elements.
/// Fresh means linearly independent from everything registered.
class FreshAllocator {
public:
    explicit FreshAllocator(const Model& model);
    FreshAllocator(const Model& model, std::span<const ModelElement> used);

    void avoid(const ModelElement& e);
    void avoid(std::span<const ModelElement> es);

    /// An axis with no registered component, optionally of a given dimension;
    /// the axis is registered as used.
    AxisId fresh_axis(std::optional<CardinalSymbol> dimension = std::nullopt);
    /// Fresh axis unit e(A_fresh, 0); the axis is registered as used.
    ModelElement fresh_axis_element(std::optional<CardinalSymbol> dimension = std::nullopt);
    /// A coordinate unit on `axis` outside the span of registered components there.
    ModelElement fresh_coord(AxisId axis);
    /// A free coordinate unit outside the span of registered free parts.
    ModelElement fresh_free();

private:
    const Model* model_;
    std::set<AxisId> used_axes_;
    std::map<AxisId, std::vector<ModelElement>> axis_components_;
    std::vector<ModelElement> free_parts_;
};

// Support/weight/projection calculus on F(M).

/// The support of a in F(M): its nonzero per-axis components.
std::vector<ModelElement> support(const ModelElement& a);
std::size_t weight(const ModelElement& a);
std::set<AxisId> axes_of(const ModelElement& a);
ModelElement proj_axis(const ModelElement& a, AxisId axis);
bool in_Xn(const ModelElement& a, std::uint64_t n);
/// Same axis; both arguments must be nonzero elements of X.
bool parallel(const ModelElement& a, const ModelElement& b);

struct SubspaceHandle {
    std::vector<ModelElement> generators;
};

std::set<AxisId> axes_of_subspace(std::span<const ModelElement> generators);
std::size_t weight_of_subspace(std::span<const ModelElement> generators);
/// a* in the span with axes(a*) = axes(span). Over GF(p) this may not exist.
ModelElement witness_star(const FieldCtx& field, std::span<const ModelElement> generators);
/// Span of all axis projections of the generators (returned as a basis).
std::vector<ModelElement> hull_hat(const FieldCtx& field, std::span<const ModelElement> generators);
ModelElement pi_A(const ModelElement& a, std::span<const ModelElement> generators);

/// Multiples of a never leave X^{w(a)}; always true for a in F(M).
bool z_multiple_check(const FieldCtx& field, const ModelElement& a, long long k);

}  // namespace vsp
