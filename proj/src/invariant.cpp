#include "vsp/invariant.hpp"

#include <algorithm>
#include <map>

#include "vsp/error.hpp"
#include "vsp/model.hpp"

namespace vsp {

ModelElement LinearMapFa::operator()(const Vec& lambda) const { return linear_combination(tuple_, lambda); }

std::vector<ModelElement> LinearMapFa::image(const Subspace& u) const {
    if (u.ambient_dim() != arity()) fail(ErrorKind::ArityMismatch, "subspace ambient differs from tuple arity");
    std::vector<ModelElement> out;
    for (const auto& b : u.basis()) out.push_back((*this)(b));
    return out;
}

ModelElement apply_fa(const LinearMapFa& m, const Vec& lambda) { return m(lambda); }

namespace {

// Rows of the coordinate matrix of `tuple`, grouped by coordinate.
std::map<Coord, Vec> coordinate_rows(const FieldCtx& field, std::span<const ModelElement> tuple) {
    std::map<Coord, Vec> rows;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (const auto& [c, s] : tuple[i].entries()) {
            auto [it, _] = rows.try_emplace(c, zero_vec(field, tuple.size()));
            it->second[i] = s;
        }
    }
    return rows;
}

}  // namespace

QfInvariant qf_invariant(const FieldCtx& field, std::span<const ModelElement> tuple) {
    const std::size_t n = tuple.size();
    auto rows = coordinate_rows(field, tuple);

    Matrix free_rows(field, n);
    std::map<std::uint64_t, Matrix> axis_rows;
    for (const auto& [c, row] : rows) {
        if (c.free) {
            free_rows.rows.push_back(row);
        } else {
            auto [it, _] = axis_rows.try_emplace(c.axis, Matrix(field, n));
            it->second.rows.push_back(row);
        }
    }

    QfInvariant inv{field, n, Subspace::kernel(free_rows), {}};
    for (auto& [axis, m] : axis_rows) {
        auto k = Subspace::kernel(m).intersect(inv.v_f);
        if (k != inv.v_f) inv.kernels.push_back(std::move(k));
    }
    std::sort(inv.kernels.begin(), inv.kernels.end());
    return inv;
}

std::string QfInvariant::to_string() const {
    std::string out = "arity=" + std::to_string(arity) + "; vf=" + v_f.to_string() + "; kernels=[";
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        out += i ? ", " : " ";
        out += kernels[i].to_string();
    }
    return out + (kernels.empty() ? "]" : " ]");
}

std::size_t g_of(const QfInvariant& inv, const Subspace& v) {
    if (v.ambient_dim() != inv.arity) fail(ErrorKind::DimensionMismatch, "g_of: subspace ambient differs from arity");
    return static_cast<std::size_t>(std::count(inv.kernels.begin(), inv.kernels.end(), v));
}

std::size_t weight_from_invariant(const QfInvariant& inv, const Vec& lambda) {
    if (!inv.v_f.contains(lambda)) fail(ErrorKind::NotInF, "coefficient vector leaves F(M)");
    return static_cast<std::size_t>(
        std::count_if(inv.kernels.begin(), inv.kernels.end(), [&](const Subspace& k) { return !k.contains(lambda); }));
}

Subspace kernel_of(const QfInvariant& inv) {
    Subspace k = inv.v_f;
    for (const auto& ker : inv.kernels) k = k.intersect(ker);
    return k;
}

WeightOracle weight_oracle(const LinearMapFa& m) {
    return [m](const Subspace& u) -> std::size_t {
        auto gens = m.image(u);
        if (m.field().is_finite()) return weight_of_subspace(gens);
        return weight(witness_star(m.field(), gens));
    };
}

std::vector<Subspace> kernel_candidates(const LinearMapFa& m) {
    const auto& field = m.field();
    auto rows = coordinate_rows(field, m.tuple());
    std::map<std::uint64_t, Matrix> blocks;
    for (const auto& [c, row] : rows) {
        if (c.free) continue;
        auto [it, _] = blocks.try_emplace(c.axis, Matrix(field, m.arity()));
        it->second.rows.push_back(row);
    }
    std::vector<Subspace> out;
    for (const auto& [_, block] : blocks) out.push_back(Subspace::kernel(block));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool g_via_inclusion_exclusion(const WeightOracle& weights, const Subspace& v, std::size_t r,
                               std::span<const Subspace> candidates) {
    if (r == 0) return true;
    // One representative outside V for each candidate strictly above V.
    std::vector<Vec> test;
    for (const auto& w : candidates) {
        if (w.ambient_dim() != v.ambient_dim() || !w.contains(v) || w == v) continue;
        test.push_back(*w.vector_outside(v));
    }
    if (v.is_full()) return false;
    // Any vector outside V also tests axes whose kernel is exactly V.
    test.push_back(*Subspace::full(v.field(), v.ambient_dim()).vector_outside(v));

    const std::size_t wv = weights(v);
    const std::size_t count = test.size();
    // |⋂_i S_i| = Σ_{∅≠J} (-1)^{|J|+1} |⋃_{j∈J} S_j|, with S_i = axes(f(u_i)) ∖ axes(f(V))
    // and |⋃_J S_j| = w(f(⟨V, u_J⟩)) − w(f(V)).
    long long total = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
        std::vector<Vec> gens = v.basis();
        int bits = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (mask >> i & 1) {
                gens.push_back(test[i]);
                ++bits;
            }
        }
        auto span = Subspace::from_generators(v.field(), v.ambient_dim(), gens);
        long long uni = static_cast<long long>(weights(span)) - static_cast<long long>(wv);
        total += (bits % 2 ? 1 : -1) * uni;
    }
    return total >= static_cast<long long>(r);
}

bool qf_equiv(const FieldCtx& field, std::span<const ModelElement> a, std::span<const ModelElement> b) {
    if (a.size() != b.size()) {
        fail(ErrorKind::ArityMismatch,
             "tuples of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    return qf_invariant(field, a) == qf_invariant(field, b);
}

}  // namespace vsp
