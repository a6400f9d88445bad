#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vsp/field.hpp"
#include "vsp/linalg.hpp"

namespace vsp {

struct AxisId {
    std::uint64_t index = 0;
    friend auto operator<=>(const AxisId&, const AxisId&) = default;
};

std::string to_string(AxisId id);

/// One coordinate of the canonical model: either coordinate `coord` of axis
/// `axis`, or free coordinate `coord` (outside the span of the axes).
struct Coord {
    bool free = false;
    std::uint64_t axis = 0;
    std::uint64_t coord = 0;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// A finite-support vector of the canonical model. Zero scalars are never
/// stored, so equal elements are structurally equal.
class ModelElement {
public:
    ModelElement() = default;

    static ModelElement axis_unit(const FieldCtx& field, AxisId axis, std::uint64_t coord);
    static ModelElement free_unit(const FieldCtx& field, std::uint64_t coord);

    const std::map<Coord, Scalar>& entries() const { return entries_; }
    Scalar get(const Coord& c, const FieldCtx& field) const;
    void set(const Coord& c, const Scalar& value);

    bool is_zero() const { return entries_.empty(); }
    bool has_free_part() const;
    bool in_F() const { return !has_free_part(); }
    bool in_X() const;

    std::set<AxisId> axes() const;
    ModelElement axis_component(AxisId axis) const;
    ModelElement axis_part() const;
    ModelElement free_part() const;

    ModelElement operator-() const;
    friend ModelElement operator+(const ModelElement& a, const ModelElement& b);
    friend ModelElement operator-(const ModelElement& a, const ModelElement& b);
    friend ModelElement operator*(const Scalar& c, const ModelElement& a);
    ModelElement& operator+=(const ModelElement& b) { return *this = *this + b; }

    friend bool operator==(const ModelElement&, const ModelElement&) = default;
    friend std::strong_ordering operator<=>(const ModelElement& a, const ModelElement& b);

    /// Canonical rendering, e.g. `e(A0,0) + 2*e(A1,3) + -1/2*f(0)`.
    std::string to_string() const;

private:
    std::map<Coord, Scalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const ModelElement& e);

/// Shorthand for the axis unit e(A<axis>, coord).
ModelElement e_axis(const FieldCtx& field, std::uint64_t axis, std::uint64_t coord);
ModelElement e_free(const FieldCtx& field, std::uint64_t coord);

ModelElement linear_combination(std::span<const ModelElement> elements, const Vec& coeffs);

/// Coordinate system spanned by all coordinates touched by a family of
/// elements; lets the dense linear algebra act on model elements.
class CoordFrame {
public:
    CoordFrame() = default;
    explicit CoordFrame(std::span<const ModelElement> elements);
    void include(const ModelElement& e);

    std::size_t size() const { return coords_.size(); }
    const std::vector<Coord>& coords() const { return coords_; }
    Vec to_vec(const FieldCtx& field, const ModelElement& e) const;
    ModelElement from_vec(const Vec& v) const;
    /// Columns are the given elements.
    Matrix column_matrix(const FieldCtx& field, std::span<const ModelElement> elements) const;

private:
    std::vector<Coord> coords_;
    std::map<Coord, std::size_t> index_;
};

/// Coefficients λ with Σ λ_i gens_i = x, or nullopt.
std::optional<Vec> solve_combination(const FieldCtx& field, std::span<const ModelElement> gens,
                                     const ModelElement& x);
bool in_span(const FieldCtx& field, std::span<const ModelElement> gens, const ModelElement& x);
std::size_t span_dim(const FieldCtx& field, std::span<const ModelElement> gens);
/// Linearly independent subfamily of `gens` with the same span (first-come order).
std::vector<ModelElement> independent_subfamily(const FieldCtx& field, std::span<const ModelElement> gens);
/// Kernel of f_gens : K^{|gens|} -> M.
Subspace relation_space(const FieldCtx& field, std::span<const ModelElement> gens);

}  // namespace vsp
