#include "vsp/element.hpp"

#include <ostream>

#include "vsp/error.hpp"

namespace vsp {

std::string to_string(AxisId id) { return "A" + std::to_string(id.index); }

ModelElement ModelElement::axis_unit(const FieldCtx& field, AxisId axis, std::uint64_t coord) {
    ModelElement e;
    e.entries_[Coord{false, axis.index, coord}] = field.one();
    return e;
}

ModelElement ModelElement::free_unit(const FieldCtx& field, std::uint64_t coord) {
    ModelElement e;
    e.entries_[Coord{true, 0, coord}] = field.one();
    return e;
}

Scalar ModelElement::get(const Coord& c, const FieldCtx& field) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? field.zero() : it->second;
}

void ModelElement::set(const Coord& c, const Scalar& value) {
    if (value.is_zero()) {
        entries_.erase(c);
    } else {
        entries_[c] = value;
    }
}

bool ModelElement::has_free_part() const {
    // Free coordinates sort after all axis coordinates.
    return !entries_.empty() && entries_.rbegin()->first.free;
}

bool ModelElement::in_X() const { return in_F() && axes().size() <= 1; }

std::set<AxisId> ModelElement::axes() const {
    std::set<AxisId> out;
    for (const auto& [c, _] : entries_) {
        if (!c.free) out.insert(AxisId{c.axis});
    }
    return out;
}

ModelElement ModelElement::axis_component(AxisId axis) const {
    ModelElement out;
    auto it = entries_.lower_bound(Coord{false, axis.index, 0});
    for (; it != entries_.end() && !it->first.free && it->first.axis == axis.index; ++it) {
        out.entries_.insert(*it);
    }
    return out;
}

ModelElement ModelElement::axis_part() const {
    ModelElement out;
    for (const auto& kv : entries_) {
        if (!kv.first.free) out.entries_.insert(kv);
    }
    return out;
}

ModelElement ModelElement::free_part() const {
    ModelElement out;
    for (const auto& kv : entries_) {
        if (kv.first.free) out.entries_.insert(kv);
    }
    return out;
}

ModelElement ModelElement::operator-() const {
    ModelElement out = *this;
    for (auto& [_, s] : out.entries_) s = -s;
    return out;
}

ModelElement operator+(const ModelElement& a, const ModelElement& b) {
    ModelElement out = a;
    for (const auto& [c, s] : b.entries_) {
        auto it = out.entries_.find(c);
        if (it == out.entries_.end()) {
            out.entries_.emplace(c, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) out.entries_.erase(it);
        }
    }
    return out;
}

ModelElement operator-(const ModelElement& a, const ModelElement& b) { return a + (-b); }

ModelElement operator*(const Scalar& c, const ModelElement& a) {
    ModelElement out;
    if (c.is_zero()) return out;
    for (const auto& [k, s] : a.entries_) out.entries_.emplace(k, c * s);
    return out;
}

std::strong_ordering operator<=>(const ModelElement& a, const ModelElement& b) {
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    for (; ia != a.entries_.end() && ib != b.entries_.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        if (auto c = ia->second <=> ib->second; c != 0) return c;
    }
    return a.entries_.size() <=> b.entries_.size();
}

std::string ModelElement::to_string() const {
    if (entries_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, s] : entries_) {
        if (!first) out += " + ";
        first = false;
        if (!s.is_one()) out += s.to_string() + "*";
        if (c.free) {
            out += "f(" + std::to_string(c.coord) + ")";
        } else {
            out += "e(A" + std::to_string(c.axis) + "," + std::to_string(c.coord) + ")";
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const ModelElement& e) { return os << e.to_string(); }

ModelElement e_axis(const FieldCtx& field, std::uint64_t axis, std::uint64_t coord) {
    return ModelElement::axis_unit(field, AxisId{axis}, coord);
}

ModelElement e_free(const FieldCtx& field, std::uint64_t coord) { return ModelElement::free_unit(field, coord); }

ModelElement linear_combination(std::span<const ModelElement> elements, const Vec& coeffs) {
    if (coeffs.size() != elements.size()) {
        fail(ErrorKind::ArityMismatch, "coefficient vector of length " + std::to_string(coeffs.size()) +
                                           " for " + std::to_string(elements.size()) + " elements");
    }
    ModelElement out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!coeffs[i].is_zero()) out += coeffs[i] * elements[i];
    }
    return out;
}

CoordFrame::CoordFrame(std::span<const ModelElement> elements) {
    for (const auto& e : elements) include(e);
}

void CoordFrame::include(const ModelElement& e) {
    for (const auto& [c, _] : e.entries()) {
        if (index_.emplace(c, coords_.size()).second) coords_.push_back(c);
    }
}

Vec CoordFrame::to_vec(const FieldCtx& field, const ModelElement& e) const {
    Vec v = zero_vec(field, coords_.size());
    for (const auto& [c, s] : e.entries()) {
        auto it = index_.find(c);
        if (it == index_.end()) fail(ErrorKind::InvalidElement, "element leaves the coordinate frame");
        v[it->second] = s;
    }
    return v;
}

ModelElement CoordFrame::from_vec(const Vec& v) const {
    if (v.size() != coords_.size()) fail(ErrorKind::DimensionMismatch, "frame vector length mismatch");
    ModelElement out;
    for (std::size_t i = 0; i < v.size(); ++i) out.set(coords_[i], v[i]);
    return out;
}

Matrix CoordFrame::column_matrix(const FieldCtx& field, std::span<const ModelElement> elements) const {
    Matrix m(field, elements.size());
    for (std::size_t r = 0; r < coords_.size(); ++r) m.rows.emplace_back(elements.size(), field.zero());
    for (std::size_t col = 0; col < elements.size(); ++col) {
        for (const auto& [c, s] : elements[col].entries()) {
            auto it = index_.find(c);
            if (it == index_.end()) fail(ErrorKind::InvalidElement, "element leaves the coordinate frame");
            m.rows[it->second][col] = s;
        }
    }
    return m;
}

std::optional<Vec> solve_combination(const FieldCtx& field, std::span<const ModelElement> gens,
                                     const ModelElement& x) {
    CoordFrame frame(gens);
    for (const auto& [c, _] : x.entries()) {
        bool known = false;
        for (const auto& g : gens) {
            if (g.entries().count(c)) {
                known = true;
                break;
            }
        }
        if (!known) return std::nullopt;
    }
    auto m = frame.column_matrix(field, gens);
    return solve(m, frame.to_vec(field, x));
}

bool in_span(const FieldCtx& field, std::span<const ModelElement> gens, const ModelElement& x) {
    if (x.is_zero()) return true;
    return solve_combination(field, gens, x).has_value();
}

std::size_t span_dim(const FieldCtx& field, std::span<const ModelElement> gens) {
    CoordFrame frame(gens);
    Matrix m(field, frame.size());
    for (const auto& g : gens) m.rows.push_back(frame.to_vec(field, g));
    return rref(m).rows.size();
}

std::vector<ModelElement> independent_subfamily(const FieldCtx& field, std::span<const ModelElement> gens) {
    std::vector<ModelElement> out;
    for (const auto& g : gens) {
        if (!in_span(field, out, g)) out.push_back(g);
    }
    return out;
}

Subspace relation_space(const FieldCtx& field, std::span<const ModelElement> gens) {
    CoordFrame frame(gens);
    return Subspace::kernel(frame.column_matrix(field, gens));
}

}  // namespace vsp
