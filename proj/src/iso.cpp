#include "vsp/iso.hpp"

#include <algorithm>
#include <tuple>

#include "vsp/error.hpp"
#include "vsp/invariant.hpp"

namespace vsp {

PartialIso PartialIso::make(const FieldCtx& field, std::vector<ModelElement> domain, std::vector<ModelElement> image) {
    if (domain.size() != image.size()) {
        fail(ErrorKind::ArityMismatch, "partial isomorphism needs as many images as domain generators");
    }
    if (relation_space(field, domain) != relation_space(field, image)) {
        fail(ErrorKind::NotQfEquivalent, "generator tuples satisfy different linear relations");
    }
    PartialIso f(field);
    f.domain_ = std::move(domain);
    f.image_ = std::move(image);
    return f;
}

bool PartialIso::in_domain(const ModelElement& x) const { return in_span(field_, domain_, x); }

ModelElement PartialIso::apply(const ModelElement& x) const {
    if (x.is_zero()) return x;
    auto c = solve_combination(field_, domain_, x);
    if (!c) fail(ErrorKind::InvalidElement, x.to_string() + " is outside the domain");
    return linear_combination(image_, *c);
}

PartialIso PartialIso::inverse() const {
    PartialIso g(field_);
    g.domain_ = image_;
    g.image_ = domain_;
    for (auto [y, z] : sigma_) g.sigma_[z] = y;
    return g;
}

PartialIso PartialIso::extend(const ModelElement& a, const ModelElement& b) const {
    auto d = domain_;
    auto i = image_;
    d.push_back(a);
    i.push_back(b);
    return make(field_, std::move(d), std::move(i));
}

bool PartialIso::preserves_qf_type() const { return qf_equiv(field_, domain_, image_); }

std::string PartialIso::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < domain_.size(); ++k) {
        out += domain_[k].to_string() + " |-> " + image_[k].to_string() + "\n";
    }
    return out;
}

namespace {

// Axes of the tuple with the kernel of π_Y ∘ f, sorted by kernel then axis.
std::vector<std::pair<Subspace, AxisId>> axis_kernels(const FieldCtx& field, std::span<const ModelElement> t) {
    std::map<AxisId, Matrix> blocks;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (auto axis : t[i].axes()) blocks.try_emplace(axis, Matrix(field, t.size()));
    }
    for (auto& [axis, m] : blocks) {
        std::map<std::uint64_t, Vec> rows;
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto component = t[i].axis_component(axis);
            for (const auto& [c, s] : component.entries()) {
                auto [it, _] = rows.try_emplace(c.coord, zero_vec(field, t.size()));
                it->second[i] = s;
            }
        }
        for (auto& [_, row] : rows) m.rows.push_back(std::move(row));
    }
    std::vector<std::pair<Subspace, AxisId>> out;
    for (const auto& [axis, m] : blocks) out.emplace_back(Subspace::kernel(m), axis);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (auto c = x.first <=> y.first; c != 0) return c < 0;
        return x.second < y.second;
    });
    return out;
}

void require_F(std::span<const ModelElement> t, const char* what) {
    for (const auto& e : t) {
        if (e.has_free_part()) fail(ErrorKind::NotInF, std::string(what) + ": " + e.to_string() + " is not in F(M)");
    }
}

}  // namespace

PartialIso extend_to_hat(const FieldCtx& field, std::span<const ModelElement> a, std::span<const ModelElement> b) {
    if (a.size() != b.size()) fail(ErrorKind::ArityMismatch, "extend_to_hat: tuples of different length");
    require_F(a, "extend_to_hat");
    require_F(b, "extend_to_hat");
    if (!qf_equiv(field, a, b)) fail(ErrorKind::NotQfEquivalent, "tuples are not qf-equivalent");

    auto ka = axis_kernels(field, a);
    auto kb = axis_kernels(field, b);
    PartialIso h(field);
    std::vector<ModelElement> domain, image;
    std::map<AxisId, AxisId> sigma;
    for (std::size_t k = 0; k < ka.size(); ++k) {
        auto y = ka[k].second;
        auto z = kb[k].second;
        sigma[y] = z;
        std::vector<ModelElement> pieces;
        for (std::size_t l = 0; l < a.size(); ++l) {
            auto p = a[l].axis_component(y);
            if (p.is_zero() || in_span(field, pieces, p)) continue;
            pieces.push_back(p);
            domain.push_back(p);
            image.push_back(b[l].axis_component(z));
        }
    }
    h = PartialIso::make(field, std::move(domain), std::move(image));
    h.sigma_ = std::move(sigma);
    return h;
}

}  // namespace vsp

namespace vsp {

std::pair<PartialIso, ModelElement> back_and_forth_step(const PartialIso& f, const ModelElement& a,
                                                        const Model& source, const Model& target) {
    const auto& field = f.field();
    if (!source.contains(a)) fail(ErrorKind::InvalidElement, a.to_string() + " is not an element of the source model");
    if (f.in_domain(a)) return {f, f.apply(a)};

    const auto& dom = f.domain_generators();
    const auto& img = f.image_generators();
    FreshAllocator alloc(target, img);

    // Free part of a outside that of A: F does not grow, a fresh free vector matches.
    std::vector<ModelElement> free_parts;
    for (const auto& d : dom) free_parts.push_back(d.free_part());
    auto lambda = solve_combination(field, free_parts, a.free_part());
    if (!lambda && a.has_free_part()) {
        auto b = alloc.fresh_free();
        return {f.extend(a, b), b};
    }

    // Otherwise a - Σ λ_i d_i lies in F and it suffices to map that.
    ModelElement shift_a, shift_b;
    if (lambda) {
        shift_a = linear_combination(dom, *lambda);
        shift_b = linear_combination(img, *lambda);
    }
    const ModelElement a0 = a - shift_a;

    // F(A) = f_dom(v_f) and its image.
    auto v_f = relation_space(field, free_parts);
    std::vector<ModelElement> fa, fb;
    for (const auto& v : v_f.basis()) {
        fa.push_back(linear_combination(dom, v));
        fb.push_back(linear_combination(img, v));
    }
    auto h = extend_to_hat(field, fa, fb);

    ModelElement b0;
    if (h.in_domain(a0)) {
        b0 = h.apply(a0);
    } else {
        for (auto axis : a0.axes()) {
            auto piece = a0.axis_component(axis);
            auto it = h.sigma().find(axis);
            if (it == h.sigma().end()) {
                std::optional<CardinalSymbol> dimension;
                if (!target.descriptor().is_rich()) dimension = source.axis_dim(axis);
                b0 += alloc.fresh_axis_element(dimension);
            } else if (h.in_domain(piece)) {
                b0 += h.apply(piece);
            } else {
                b0 += alloc.fresh_coord(it->second);
            }
        }
    }
    auto b = b0 + shift_b;
    return {f.extend(a, b), b};
}

}  // namespace vsp
