#include "vsp/typespace.hpp"

#include <algorithm>
#include <bit>

#include "vsp/error.hpp"

namespace vsp {

namespace {

constexpr std::size_t kMaxAxes = 20;

ModelElement project(const ModelElement& e, const std::vector<AxisId>& axes) {
    ModelElement out;
    for (auto y : axes) out += e.axis_component(y);
    return out;
}

// The point of p + D with zero coordinates at the pivots of D.
Vec canonical_point(const Subspace& d, Vec p) {
    for (std::size_t i = 0; i < d.basis().size(); ++i) {
        Scalar f = p[d.pivots()[i]];
        if (!f.is_zero()) p = sub(p, scale(f, d.basis()[i]));
    }
    return p;
}

// Affine subspace p + D of coefficient vectors over the fragment basis.
struct Flat {
    Vec point;
    Subspace directions;
};

bool flat_within(const Flat& a, const Flat& b) {
    return b.directions.contains(a.directions) && b.directions.contains(sub(a.point, b.point));
}

}  // namespace

std::string TypeDescriptor::to_string() const {
    switch (kind) {
        case TypeKind::Realized: return "Realized(" + element.to_string() + ")";
        case TypeKind::GenericFree: return "GenericFree";
        case TypeKind::SumType: return "SumType(" + std::to_string(n) + ", " + element.to_string() + ")";
    }
    return {};
}

TypeDescriptor classify(const FieldCtx& field, const ModelElement& a, const SubspaceHandle& fragment) {
    TypeDescriptor t;
    auto basis = independent_subfamily(field, fragment.generators);
    if (in_span(field, basis, a)) {
        t.kind = TypeKind::Realized;
        t.element = a;
        return t;
    }
    std::vector<ModelElement> free_parts;
    for (const auto& g : basis) free_parts.push_back(g.free_part());
    std::optional<Vec> p0 = a.has_free_part() ? solve_combination(field, free_parts, a.free_part())
                                              : std::optional<Vec>(zero_vec(field, basis.size()));
    if (!p0) {
        t.kind = TypeKind::GenericFree;
        return t;
    }

    // m ranges over p0 + F(A); look for the largest sets of axes on which a - m vanishes.
    const std::size_t r = basis.size();
    const ModelElement c = a - linear_combination(basis, *p0);
    Subspace fa = relation_space(field, free_parts);
    std::vector<ModelElement> zs;
    for (const auto& mu : fa.basis()) zs.push_back(linear_combination(basis, mu));
    std::set<AxisId> relevant = c.axes();
    for (const auto& z : zs) {
        auto ax = z.axes();
        relevant.insert(ax.begin(), ax.end());
    }
    std::vector<AxisId> axes(relevant.begin(), relevant.end());
    if (axes.size() > kMaxAxes) fail(ErrorKind::ResourceLimit, "fragment meets too many axes to classify");

    std::vector<Flat> flats;
    std::size_t best = 0;
    for (std::size_t size = axes.size() + 1; size-- > 0 && flats.empty();) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << axes.size()); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
            std::vector<AxisId> chosen;
            for (std::size_t i = 0; i < axes.size(); ++i) {
                if (mask >> i & 1) chosen.push_back(axes[i]);
            }
            std::vector<ModelElement> gens;
            for (const auto& z : zs) gens.push_back(project(z, chosen));
            auto target = project(c, chosen);
            std::optional<Vec> sol;
            if (target.is_zero()) {
                sol = zero_vec(field, gens.size());
            } else if (!gens.empty()) {
                sol = solve_combination(field, gens, target);
            }
            if (!sol) continue;
            Vec point = *p0;
            for (std::size_t k = 0; k < zs.size(); ++k) point = add(point, scale((*sol)[k], fa.basis()[k]));
            std::vector<Vec> dirs;
            if (!gens.empty()) {
                auto relations = relation_space(field, gens);
                for (const auto& rel : relations.basis()) {
                    Vec d = zero_vec(field, r);
                    for (std::size_t k = 0; k < zs.size(); ++k) d = add(d, scale(rel[k], fa.basis()[k]));
                    dirs.push_back(std::move(d));
                }
            }
            flats.push_back({point, Subspace::from_generators(field, r, dirs)});
            best = size;
        }
    }

    // The minimizers form the union of these flats; its maximal flats do not
    // depend on how a was written, so neither does the representative.
    std::optional<ModelElement> rep;
    for (std::size_t i = 0; i < flats.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < flats.size() && !dominated; ++j) {
            if (i == j || !flat_within(flats[i], flats[j])) continue;
            dominated = !flat_within(flats[j], flats[i]) || j < i;
        }
        if (dominated) continue;
        auto m = linear_combination(basis, canonical_point(flats[i].directions, flats[i].point));
        if (!rep || m < *rep) rep = m;
    }

    t.kind = TypeKind::SumType;
    t.n = axes.size() - best;
    t.element = *rep;
    auto tuple = basis;
    tuple.push_back(a - *rep);
    t.profile = qf_invariant(field, tuple);
    return t;
}

PartialIso conjugacy_witness(const FieldCtx& field, const ModelElement& a, const ModelElement& b,
                             const SubspaceHandle& fragment) {
    auto ta = classify(field, a, fragment);
    auto tb = classify(field, b, fragment);
    if (ta.kind == TypeKind::Realized || tb.kind == TypeKind::Realized) {
        if (a == b) {
            auto basis = independent_subfamily(field, fragment.generators);
            return PartialIso::make(field, basis, basis);
        }
        fail(ErrorKind::NotSameType, "a realized type is conjugate only to itself");
    }
    if (!(ta == tb)) fail(ErrorKind::NotSameType, ta.to_string() + " differs from " + tb.to_string());
    auto basis = independent_subfamily(field, fragment.generators);
    auto dom = basis;
    auto img = basis;
    dom.push_back(a);
    img.push_back(b);
    bool in_f = std::all_of(dom.begin(), dom.end(), [](const ModelElement& e) { return e.in_F(); }) &&
                std::all_of(img.begin(), img.end(), [](const ModelElement& e) { return e.in_F(); });
    if (in_f) return extend_to_hat(field, dom, img);
    return PartialIso::make(field, dom, img);
}

}  // namespace vsp
