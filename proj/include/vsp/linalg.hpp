#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsp/field.hpp"

namespace vsp {

using Vec = std::vector<Scalar>;

Vec zero_vec(const FieldCtx& field, std::size_t n);
Vec unit_vec(const FieldCtx& field, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
Scalar dot(const Vec& a, const Vec& b);
std::string vec_to_string(const Vec& v);

/// Dense matrix, row-major. `cols` is kept explicitly so that a matrix
/// without rows still has a well-defined width.
struct Matrix {
    FieldCtx field;
    std::size_t cols = 0;
    std::vector<Vec> rows;

    Matrix() = default;
    Matrix(FieldCtx f, std::size_t c) : field(f), cols(c) {}
    Matrix(FieldCtx f, std::size_t c, std::vector<Vec> r);

    std::size_t row_count() const { return rows.size(); }
    Vec apply(const Vec& x) const;
    Matrix transpose() const;
};

struct EchelonForm {
    std::vector<Vec> rows;           // nonzero rows, reduced
    std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row-echelon form; pivots strictly increase, pivot entries are 1
/// and every other entry in a pivot column is 0.
EchelonForm rref(const Matrix& m);

/// Some x with m·x = b, or nullopt. Free variables are set to zero.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// A finite-dimensional subspace of K^n stored by its reduced echelon basis,
/// which makes equality of subspaces structural.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(const FieldCtx& field, std::size_t ambient);
    static Subspace full(const FieldCtx& field, std::size_t ambient);
    static Subspace from_generators(const FieldCtx& field, std::size_t ambient,
                                    std::span<const Vec> vectors);
    static Subspace from_generators(const FieldCtx& field, std::size_t ambient,
                                    std::initializer_list<Vec> vectors) {
        return from_generators(field, ambient, std::span<const Vec>(vectors.begin(), vectors.size()));
    }
    /// Null space {x : m·x = 0}.
    static Subspace kernel(const Matrix& m);

    const FieldCtx& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return basis_.size() == ambient_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// {x : <x, v> = 0 for all v in this}.
    Subspace annihilator() const;
    /// Basis vectors of a complement, chosen among standard unit vectors.
    std::vector<Vec> complement_basis() const;
    /// A vector in this subspace but outside `inner`, if any.
    std::optional<Vec> vector_outside(const Subspace& inner) const;

    /// Coordinates of v in terms of basis(); v must be a member.
    Vec coordinates(const Vec& v) const;

    std::string to_string() const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    /// Canonical total order: by dimension, then basis rows lexicographically.
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

private:
    void check_ambient(std::size_t n, const char* what) const;

    FieldCtx field_;
    std::size_t ambient_ = 0;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
inline std::size_t dim(const Subspace& s) { return s.dim(); }
inline bool member(const Vec& v, const Subspace& s) { return s.contains(v); }
inline Subspace subspace_from_generators(const FieldCtx& field, std::size_t ambient,
                                         std::span<const Vec> vectors) {
    return Subspace::from_generators(field, ambient, vectors);
}
inline Subspace kernel(const Matrix& m) { return Subspace::kernel(m); }

}  // namespace vsp
