#include "vsp/model.hpp"

#include <algorithm>

#include "vsp/error.hpp"

namespace vsp {

CardinalSymbol CardinalSymbol::parse(const std::string& text) {
    if (text == "aleph0" || text == "ℵ0" || text == "omega") return aleph0();
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        fail(ErrorKind::InvalidDescriptor, "bad cardinal '" + text + "'");
    }
    return finite(std::stoull(text));
}

std::string CardinalSymbol::to_string() const { return aleph0_ ? std::string("aleph0") : std::to_string(n_); }

std::strong_ordering operator<=>(const CardinalSymbol& a, const CardinalSymbol& b) {
    if (a.aleph0_ != b.aleph0_) return a.aleph0_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.n_ <=> b.n_;
}

ModelDescriptor ModelDescriptor::rich() {
    ModelDescriptor d;
    d.f_codim = CardinalSymbol::aleph0();
    d.axis_census[CardinalSymbol::aleph0()] = CardinalSymbol::aleph0();
    return d;
}

ModelDescriptor ModelDescriptor::normalized() const {
    ModelDescriptor out;
    out.f_codim = f_codim;
    for (const auto& [dim, count] : axis_census) {
        if (dim == CardinalSymbol::finite(0)) {
            if (count == CardinalSymbol::finite(0)) continue;
            fail(ErrorKind::InvalidDescriptor, "axes are nonzero subspaces; dimension 0 is not allowed");
        }
        if (count == CardinalSymbol::finite(0)) continue;
        out.axis_census[dim] = count;
    }
    return out;
}

CardinalSymbol ModelDescriptor::total_axes() const {
    std::uint64_t total = 0;
    for (const auto& [dim, count] : axis_census) {
        if (count.is_aleph0()) return CardinalSymbol::aleph0();
        total += count.value();
    }
    return CardinalSymbol::finite(total);
}

bool ModelDescriptor::is_rich() const {
    auto n = normalized();
    return n.f_codim.is_aleph0() && n.axis_census.size() == 1 &&
           n.axis_census.begin()->first.is_aleph0() && n.axis_census.begin()->second.is_aleph0();
}

std::string ModelDescriptor::to_string() const {
    std::string out = "codim=" + f_codim.to_string() + " axes={";
    bool first = true;
    for (const auto& [dim, count] : axis_census) {
        if (!first) out += ", ";
        first = false;
        out += dim.to_string() + "->" + count.to_string();
    }
    return out + "}";
}

bool descriptor_iso(const ModelDescriptor& d1, const ModelDescriptor& d2) {
    return d1.normalized() == d2.normalized();
}

Model::Model(ModelDescriptor d, FieldCtx f) : field_(f), descriptor_(std::move(d)) {
    std::uint64_t end = 0;
    for (const auto& [dim, count] : descriptor_.axis_census) {
        if (count.is_aleph0()) {
            cycling_dims_.push_back(dim);
        } else {
            end += count.value();
            finite_blocks_.emplace_back(end, dim);
        }
    }
}

Model Model::canonical(const ModelDescriptor& descriptor, const FieldCtx& field) {
    auto d = descriptor.normalized();
    if (d.total_axes() == CardinalSymbol::finite(0)) {
        fail(ErrorKind::InvalidDescriptor, "a model needs at least one axis");
    }
    return Model(std::move(d), field);
}

bool Model::has_axis(AxisId axis) const { return axis_count().exceeds(axis.index); }

CardinalSymbol Model::axis_dim(AxisId axis) const {
    for (const auto& [end, dim] : finite_blocks_) {
        if (axis.index < end) return dim;
    }
    if (cycling_dims_.empty()) fail(ErrorKind::InvalidElement, "no axis " + vsp::to_string(axis) + " in this model");
    std::uint64_t past = axis.index - (finite_blocks_.empty() ? 0 : finite_blocks_.back().first);
    return cycling_dims_[past % cycling_dims_.size()];
}

std::optional<std::uint64_t> Model::finite_dimension() const {
    if (descriptor_.f_codim.is_aleph0() || !cycling_dims_.empty()) return std::nullopt;
    std::uint64_t total = descriptor_.f_codim.value();
    for (const auto& [dim, count] : descriptor_.axis_census) {
        if (dim.is_aleph0()) return std::nullopt;
        total += dim.value() * count.value();
    }
    return total;
}

std::vector<ModelElement> Model::finite_basis() const {
    if (!finite_dimension()) fail(ErrorKind::InvalidDescriptor, "model is infinite-dimensional");
    std::vector<ModelElement> out;
    for (std::uint64_t a = 0; a < axis_count().value(); ++a) {
        for (std::uint64_t c = 0; c < axis_dim(AxisId{a}).value(); ++c) out.push_back(e_axis(field_, a, c));
    }
    for (std::uint64_t c = 0; c < descriptor_.f_codim.value(); ++c) out.push_back(e_free(field_, c));
    return out;
}

bool Model::contains(const ModelElement& e) const {
    for (const auto& [c, s] : e.entries()) {
        if (!(s.field() == field_)) return false;
        if (c.free) {
            if (!free_codim().exceeds(c.coord)) return false;
        } else {
            if (!has_axis(AxisId{c.axis}) || !axis_dim(AxisId{c.axis}).exceeds(c.coord)) return false;
        }
    }
    return true;
}

void Model::define_constant(const std::string& name, const ModelElement& value) {
    if (!contains(value)) fail(ErrorKind::InvalidElement, "constant $" + name + " is not an element of the model");
    constants_[name] = value;
}

const ModelElement& Model::constant(const std::string& name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) fail(ErrorKind::UnknownConstant, "unknown constant $" + name);
    return it->second;
}

FreshAllocator::FreshAllocator(const Model& model) : model_(&model) {}

FreshAllocator::FreshAllocator(const Model& model, std::span<const ModelElement> used) : model_(&model) {
    avoid(used);
}

void FreshAllocator::avoid(const ModelElement& e) {
    for (auto axis : e.axes()) {
        used_axes_.insert(axis);
        axis_components_[axis].push_back(e.axis_component(axis));
    }
    if (e.has_free_part()) free_parts_.push_back(e.free_part());
}

void FreshAllocator::avoid(std::span<const ModelElement> es) {
    for (const auto& e : es) avoid(e);
}

AxisId FreshAllocator::fresh_axis(std::optional<CardinalSymbol> dimension) {
    auto total = model_->axis_count();
    std::uint64_t limit = total.is_finite() ? total.value()
                                            : model_->finite_block_end() + model_->cycling_period() +
                                                  (used_axes_.empty() ? 0 : used_axes_.rbegin()->index + 1);
    for (std::uint64_t i = 0; i < limit; ++i) {
        AxisId axis{i};
        if (used_axes_.count(axis)) continue;
        if (dimension && !(model_->axis_dim(axis) == *dimension)) continue;
        used_axes_.insert(axis);
        return axis;
    }
    fail(ErrorKind::TargetNotRich,
         "no fresh axis" + (dimension ? " of dimension " + dimension->to_string() : std::string()) + " available");
}

ModelElement FreshAllocator::fresh_axis_element(std::optional<CardinalSymbol> dimension) {
    return fresh_coord(fresh_axis(dimension));
}

ModelElement FreshAllocator::fresh_coord(AxisId axis) {
    const auto& field = model_->field();
    if (!model_->has_axis(axis)) fail(ErrorKind::TargetNotRich, "no axis " + vsp::to_string(axis));
    auto dim = model_->axis_dim(axis);
    auto& comps = axis_components_[axis];
    std::uint64_t start = 0;
    if (dim.is_aleph0()) {
        for (const auto& c : comps) {
            for (const auto& [k, _] : c.entries()) start = std::max(start, k.coord + 1);
        }
    }
    for (std::uint64_t c = start; dim.exceeds(c); ++c) {
        auto e = ModelElement::axis_unit(field, axis, c);
        if (!in_span(field, comps, e)) {
            used_axes_.insert(axis);
            comps.push_back(e);
            return e;
        }
    }
    fail(ErrorKind::TargetNotRich, "axis " + vsp::to_string(axis) + " has no fresh coordinate left");
}

ModelElement FreshAllocator::fresh_free() {
    const auto& field = model_->field();
    auto codim = model_->free_codim();
    std::uint64_t start = 0;
    if (codim.is_aleph0()) {
        for (const auto& f : free_parts_) {
            for (const auto& [k, _] : f.entries()) start = std::max(start, k.coord + 1);
        }
    }
    for (std::uint64_t c = start; codim.exceeds(c); ++c) {
        auto e = ModelElement::free_unit(field, c);
        if (!in_span(field, free_parts_, e)) {
            free_parts_.push_back(e);
            return e;
        }
    }
    fail(ErrorKind::TargetNotRich, "no fresh free coordinate left");
}

namespace {

void require_F(const ModelElement& a, const char* what) {
    if (a.has_free_part()) fail(ErrorKind::NotInF, std::string(what) + ": " + a.to_string() + " is not in F(M)");
}

void require_F(std::span<const ModelElement> gens, const char* what) {
    for (const auto& g : gens) require_F(g, what);
}

}  // namespace

std::vector<ModelElement> support(const ModelElement& a) {
    require_F(a, "support");
    std::vector<ModelElement> out;
    for (auto axis : a.axes()) out.push_back(a.axis_component(axis));
    return out;
}

std::size_t weight(const ModelElement& a) {
    require_F(a, "weight");
    return a.axes().size();
}

std::set<AxisId> axes_of(const ModelElement& a) {
    require_F(a, "axes_of");
    return a.axes();
}

ModelElement proj_axis(const ModelElement& a, AxisId axis) {
    require_F(a, "proj_axis");
    return a.axis_component(axis);
}

bool in_Xn(const ModelElement& a, std::uint64_t n) { return a.in_F() && a.axes().size() <= n; }

bool parallel(const ModelElement& a, const ModelElement& b) {
    for (const auto* e : {&a, &b}) {
        if (e->is_zero() || !e->in_X()) {
            fail(ErrorKind::NotOnAxis, "parallelism is defined on X minus 0; got " + e->to_string());
        }
    }
    return (a + b).in_X();
}

std::set<AxisId> axes_of_subspace(std::span<const ModelElement> generators) {
    require_F(generators, "axes_of_subspace");
    std::set<AxisId> out;
    for (const auto& g : generators) {
        auto ax = g.axes();
        out.insert(ax.begin(), ax.end());
    }
    return out;
}

std::size_t weight_of_subspace(std::span<const ModelElement> generators) {
    return axes_of_subspace(generators).size();
}

namespace {

// Nonzero λ for which a − λ·b loses an axis shared by a and b.
std::vector<Scalar> critical_scalars(const FieldCtx& field, const ModelElement& a, const ModelElement& b) {
    std::vector<Scalar> out;
    auto axes_b = b.axes();
    for (auto axis : a.axes()) {
        if (!axes_b.count(axis)) continue;
        auto ca = a.axis_component(axis);
        auto cb = b.axis_component(axis);
        // a_Y = λ b_Y forces λ = ratio of any matching entry.
        const auto& [k, sb] = *cb.entries().begin();
        Scalar lambda = ca.get(k, field) / sb;
        if (!lambda.is_zero() && ca == lambda * cb) out.push_back(lambda);
    }
    return out;
}

}  // namespace

ModelElement witness_star(const FieldCtx& field, std::span<const ModelElement> generators) {
    auto target = axes_of_subspace(generators);
    auto basis = independent_subfamily(field, generators);
    if (basis.empty()) return ModelElement{};

    if (field.is_finite()) {
        // Exhaust the span: every element is a combination of the basis.
        const auto values = field.elements();
        std::vector<std::size_t> digits(basis.size(), 0);
        double count = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) count *= static_cast<double>(values.size());
        if (count <= 4e6) {
            while (true) {
                ModelElement x;
                for (std::size_t i = 0; i < basis.size(); ++i) x += values[digits[i]] * basis[i];
                if (x.axes() == target) return x;
                std::size_t pos = 0;
                while (pos < digits.size() && ++digits[pos] == values.size()) digits[pos++] = 0;
                if (pos == digits.size()) break;
            }
            fail(ErrorKind::NoGenericWitness,
                 "no element of the span carries all " + std::to_string(target.size()) + " axes over " + field.name());
        }
    }

    ModelElement acc = basis.front();
    for (std::size_t i = 1; i < basis.size(); ++i) {
        const auto& b = basis[i];
        auto bad = critical_scalars(field, acc, b);
        std::optional<Scalar> chosen;
        if (field.is_finite()) {
            for (const auto& lambda : field.nonzero_elements()) {
                if (std::find(bad.begin(), bad.end(), lambda) == bad.end()) {
                    chosen = lambda;
                    break;
                }
            }
        } else {
            for (long long k = 1;; ++k) {
                auto lambda = field.from_int(k);
                if (std::find(bad.begin(), bad.end(), lambda) == bad.end()) {
                    chosen = lambda;
                    break;
                }
            }
        }
        if (!chosen) fail(ErrorKind::NoGenericWitness, "every nonzero scalar collides over " + field.name());
        acc = acc - (*chosen) * b;
    }
    return acc;
}

std::vector<ModelElement> hull_hat(const FieldCtx& field, std::span<const ModelElement> generators) {
    require_F(generators, "hull_hat");
    std::vector<ModelElement> projections;
    for (const auto& g : generators) {
        for (auto axis : g.axes()) projections.push_back(g.axis_component(axis));
    }
    return independent_subfamily(field, projections);
}

ModelElement pi_A(const ModelElement& a, std::span<const ModelElement> generators) {
    require_F(a, "pi_A");
    ModelElement out;
    for (auto axis : axes_of_subspace(generators)) out += a.axis_component(axis);
    return out;
}

bool z_multiple_check(const FieldCtx& field, const ModelElement& a, long long k) {
    auto n = weight(a);
    return in_Xn(field.from_int(k) * a, n);
}

}  // namespace vsp
