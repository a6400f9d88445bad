#include "vsp/linalg.hpp"

#include <algorithm>

#include "vsp/error.hpp"

namespace vsp {

namespace {

void check_len(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) {
        fail(ErrorKind::DimensionMismatch,
             "vector lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
}

}  // namespace

Vec zero_vec(const FieldCtx& field, std::size_t n) { return Vec(n, field.zero()); }

Vec unit_vec(const FieldCtx& field, std::size_t n, std::size_t i) {
    Vec v = zero_vec(field, n);
    v.at(i) = field.one();
    return v;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(const Vec& a, const Vec& b) {
    check_len(a, b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    check_len(a, b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(const Scalar& c, const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

Scalar dot(const Vec& a, const Vec& b) {
    check_len(a, b);
    if (a.empty()) return Scalar{};
    Scalar acc = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::string vec_to_string(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].to_string();
    }
    return out + ")";
}

Matrix::Matrix(FieldCtx f, std::size_t c, std::vector<Vec> r) : field(f), cols(c), rows(std::move(r)) {
    for (const auto& row : rows) {
        if (row.size() != cols) {
            fail(ErrorKind::DimensionMismatch,
                 "matrix row of length " + std::to_string(row.size()) + ", expected " + std::to_string(cols));
        }
    }
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols) fail(ErrorKind::DimensionMismatch, "matrix/vector shape mismatch");
    Vec out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(cols == 0 ? field.zero() : dot(row, x));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(field, rows.size());
    for (std::size_t c = 0; c < cols; ++c) {
        Vec col(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][c];
        t.rows.push_back(std::move(col));
    }
    return t;
}

EchelonForm rref(const Matrix& m) {
    std::vector<Vec> a = m.rows;
    for (const auto& row : a) {
        if (row.size() != m.cols) fail(ErrorKind::DimensionMismatch, "ragged matrix");
    }
    EchelonForm out;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols && lead < a.size(); ++col) {
        std::size_t pick = lead;
        while (pick < a.size() && a[pick][col].is_zero()) ++pick;
        if (pick == a.size()) continue;
        std::swap(a[lead], a[pick]);
        Scalar inv = a[lead][col].inverse();
        for (auto& s : a[lead]) s *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == lead || a[r][col].is_zero()) continue;
            Scalar f = a[r][col];
            for (std::size_t c = col; c < m.cols; ++c) a[r][c] -= f * a[lead][c];
        }
        out.pivots.push_back(col);
        ++lead;
    }
    a.resize(lead);
    out.rows = std::move(a);
    return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows.size()) fail(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
    Matrix aug(m.field, m.cols + 1);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        Vec row = m.rows[r];
        row.push_back(b[r]);
        aug.rows.push_back(std::move(row));
    }
    auto e = rref(aug);
    Vec x = zero_vec(m.field, m.cols);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == m.cols) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][m.cols];
    }
    return x;
}

void Subspace::check_ambient(std::size_t n, const char* what) const {
    if (n != ambient_) {
        fail(ErrorKind::DimensionMismatch, std::string(what) + ": ambient dimension " + std::to_string(n) +
                                               " vs " + std::to_string(ambient_));
    }
}

Subspace Subspace::zero(const FieldCtx& field, std::size_t ambient) {
    Subspace s;
    s.field_ = field;
    s.ambient_ = ambient;
    return s;
}

Subspace Subspace::full(const FieldCtx& field, std::size_t ambient) {
    Subspace s = zero(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        s.basis_.push_back(unit_vec(field, ambient, i));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::from_generators(const FieldCtx& field, std::size_t ambient, std::span<const Vec> vectors) {
    Matrix m(field, ambient);
    for (const auto& v : vectors) {
        if (v.size() != ambient) {
            fail(ErrorKind::DimensionMismatch,
                 "generator of length " + std::to_string(v.size()) + " in ambient dimension " + std::to_string(ambient));
        }
        m.rows.push_back(v);
    }
    auto e = rref(m);
    Subspace s = zero(field, ambient);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::kernel(const Matrix& m) {
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> gens;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(m.field, m.cols);
        v[free] = m.field.one();
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        gens.push_back(std::move(v));
    }
    return from_generators(m.field, m.cols, gens);
}

bool Subspace::contains(const Vec& v) const {
    check_ambient(v.size(), "member");
    // Reduce v against the echelon basis; it is a member iff it reduces to 0.
    Vec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Scalar& c = r[pivots_[i]];
        if (c.is_zero()) continue;
        Scalar f = c;
        for (std::size_t k = 0; k < ambient_; ++k) r[k] -= f * basis_[i][k];
    }
    return is_zero_vec(r);
}

bool Subspace::contains(const Subspace& other) const {
    check_ambient(other.ambient_, "contains");
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    check_ambient(other.ambient_, "sum");
    std::vector<Vec> gens = basis_;
    gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
    return from_generators(field_, ambient_, gens);
}

Subspace Subspace::annihilator() const {
    return kernel(Matrix(field_, ambient_, basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    check_ambient(other.ambient_, "intersect");
    if (basis_.empty() || other.basis_.empty()) return zero(field_, ambient_);
    // x = sum c_i b_i lies in `other` iff every annihilator row of `other` kills it.
    auto ann = other.annihilator();
    Matrix constraints(field_, basis_.size());
    for (const auto& a : ann.basis()) {
        Vec row(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) row[i] = dot(a, basis_[i]);
        constraints.rows.push_back(std::move(row));
    }
    auto coeffs = kernel(constraints);
    std::vector<Vec> gens;
    for (const auto& c : coeffs.basis()) {
        Vec v = zero_vec(field_, ambient_);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (!c[i].is_zero()) v = add(v, scale(c[i], basis_[i]));
        }
        gens.push_back(std::move(v));
    }
    return from_generators(field_, ambient_, gens);
}

std::vector<Vec> Subspace::complement_basis() const {
    std::vector<bool> is_pivot(ambient_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t i = 0; i < ambient_; ++i) {
        if (!is_pivot[i]) out.push_back(unit_vec(field_, ambient_, i));
    }
    return out;
}

std::optional<Vec> Subspace::vector_outside(const Subspace& inner) const {
    check_ambient(inner.ambient_, "vector_outside");
    for (const auto& v : basis_) {
        if (!inner.contains(v)) return v;
    }
    return std::nullopt;
}

Vec Subspace::coordinates(const Vec& v) const {
    check_ambient(v.size(), "coordinates");
    Vec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    Vec back = zero_vec(field_, ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i) back = add(back, scale(c[i], basis_[i]));
    if (back != v) fail(ErrorKind::DimensionMismatch, "vector is not in the subspace");
    return c;
}

std::string Subspace::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) out += ",";
        out += vec_to_string(basis_[i]);
    }
    return out + "]";
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
    if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.basis_.size(); ++i) {
        for (std::size_t k = 0; k < a.ambient_; ++k) {
            if (auto c = a.basis_[i][k] <=> b.basis_[i][k]; c != 0) return c;
        }
    }
    return std::strong_ordering::equal;
}

Subspace sum(const Subspace& a, const Subspace& b) { return a.sum(b); }
Subspace intersect(const Subspace& a, const Subspace& b) { return a.intersect(b); }

}  // namespace vsp
