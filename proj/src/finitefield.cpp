#include "vsp/finitefield.hpp"

#include <algorithm>
#include <sstream>

#include "vsp/error.hpp"

namespace vsp {

namespace {

void require_finite(const FieldCtx& field) {
    if (!field.is_finite()) fail(ErrorKind::FieldNotFinite, "exhaustive checks need a finite field, got " + field.name());
}

ModelElement combine(const Scalar& lambda, const Scalar& mu, const Pair& x) { return lambda * x[0] + mu * x[1]; }

std::optional<std::size_t> weight_if_in_F(const ModelElement& e) {
    if (!e.in_F()) return std::nullopt;
    return weight(e);
}

}  // namespace

FfCounterexample construct_counterexample(std::uint64_t p) {
    FfCounterexample ce{FieldCtx::prime(p), {}, {}};
    const auto& f = ce.field;
    const auto nonzero = f.nonzero_elements();
    for (std::uint64_t i = 0; i < p; ++i) {
        ce.a[0] += e_axis(f, i, 0);
        ce.a[1] += e_axis(f, i, 1);
    }
    ce.b[0] = ce.a[0];
    ce.b[1] = e_axis(f, p, 0);
    for (std::uint64_t i = 1; i <= p - 1; ++i) ce.b[1] += nonzero[i - 1] * e_axis(f, i, 0);
    return ce;
}

void require_counterexample_room(const Model& model) {
    const auto& f = model.field();
    require_finite(f);
    const std::uint64_t p = f.modulus();
    for (std::uint64_t i = 0; i <= p; ++i) {
        if (!model.has_axis(AxisId{i})) {
            fail(ErrorKind::InvalidDescriptor, "the construction needs " + std::to_string(p + 1) + " axes");
        }
        if (i < p && !model.axis_dim(AxisId{i}).exceeds(1)) {
            fail(ErrorKind::InvalidDescriptor, "axis " + std::to_string(i) + " needs dimension at least 2");
        }
    }
}

std::vector<CombinationWeight> combination_table(const FieldCtx& field, const Pair& a, const Pair& b) {
    require_finite(field);
    std::vector<CombinationWeight> rows;
    for (const auto& lambda : field.elements()) {
        for (const auto& mu : field.elements()) {
            auto xa = combine(lambda, mu, a);
            auto xb = combine(lambda, mu, b);
            rows.push_back({lambda, mu, weight_if_in_F(xa), weight_if_in_F(xb), xa.is_zero(), xb.is_zero()});
        }
    }
    return rows;
}

bool brute_qf_equiv(const FieldCtx& field, const Pair& a, const Pair& b) {
    auto rows = combination_table(field, a, b);
    return std::all_of(rows.begin(), rows.end(), [](const CombinationWeight& r) {
        return r.zero_a == r.zero_b && r.weight_a == r.weight_b;
    });
}

std::size_t exhaustive_subspace_weight(const FieldCtx& field, const Pair& x) {
    require_finite(field);
    std::set<AxisId> axes;
    for (const auto& lambda : field.elements()) {
        for (const auto& mu : field.elements()) {
            auto ax = combine(lambda, mu, x).axes();
            axes.insert(ax.begin(), ax.end());
        }
    }
    return axes.size();
}

std::size_t max_element_weight(const FieldCtx& field, const Pair& x) {
    require_finite(field);
    std::size_t best = 0;
    for (const auto& lambda : field.elements()) {
        for (const auto& mu : field.elements()) best = std::max(best, weight(combine(lambda, mu, x).axis_part()));
    }
    return best;
}

std::string describe_counterexample(const FfCounterexample& ce) {
    std::ostringstream out;
    out << "field: " << ce.field.name() << "\n";
    out << "a0 = " << ce.a[0] << "\n";
    out << "a1 = " << ce.a[1] << "\n";
    out << "b0 = " << ce.b[0] << "\n";
    out << "b1 = " << ce.b[1] << "\n";
    out << "lambda mu w(a) w(b)\n";
    for (const auto& r : combination_table(ce.field, ce.a, ce.b)) {
        out << r.lambda.to_string() << " " << r.mu.to_string() << " " << *r.weight_a << " " << *r.weight_b << "\n";
    }
    out << "w(<a>) = " << exhaustive_subspace_weight(ce.field, ce.a) << "\n";
    out << "w(<b>) = " << exhaustive_subspace_weight(ce.field, ce.b) << "\n";
    out << "qf-equivalent: " << (brute_qf_equiv(ce.field, ce.a, ce.b) ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace vsp
