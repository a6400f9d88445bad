#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vsp/error.hpp"
#include "vsp/invariant.hpp"
#include "vsp/model.hpp"

using namespace vsp;
using namespace vsp::testing;

namespace {

std::vector<ModelElement> random_tuple(std::mt19937& rng, std::size_t arity, int axes, double density = 0.35) {
    std::vector<ModelElement> t;
    for (std::size_t i = 0; i < arity; ++i) t.push_back(random_F_element(rng, Q, axes, 2, 2, density));
    return t;
}

/// Axis permutation combined with an invertible map on each axis: coordinate
/// c of axis i goes to (c+1) of axis perm[i], doubled, plus coordinate 0.
ModelElement automorphism(const ModelElement& e, const std::vector<std::uint64_t>& perm) {
    ModelElement out;
    for (const auto& [c, s] : e.entries()) {
        if (c.free) {
            out += s * ef(c.coord + 3);
            continue;
        }
        auto target = perm.at(c.axis);
        out += s * (q(2) * ea(target, c.coord + 1) + ea(target, 0));
    }
    return out;
}

}  // namespace

TEST_CASE("apply_fa examples") {
    LinearMapFa m(Q, {ea(0, 0), ea(1, 0) + ef(0)});
    CHECK(apply_fa(m, qv({0, 0})).is_zero());
    CHECK(apply_fa(m, qv({1, 0})) == ea(0, 0));
    CHECK(apply_fa(m, qv({0, 1})) == ea(1, 0) + ef(0));
    CHECK(apply_fa(m, qv({1, 1})) == ea(0, 0) + ea(1, 0) + ef(0));
    CHECK_THROWS_AS(apply_fa(m, qv({1})), Error);

    std::mt19937 rng(1);
    LinearMapFa r(Q, random_tuple(rng, 3, 4));
    for (int t = 0; t < 50; ++t) {
        Vec l{random_scalar(rng, Q, 3), random_scalar(rng, Q, 3), random_scalar(rng, Q, 3)};
        Vec u{random_scalar(rng, Q, 3), random_scalar(rng, Q, 3), random_scalar(rng, Q, 3)};
        auto c = random_scalar(rng, Q, 3);
        CHECK(r(add(l, u)) == r(l) + r(u));
        CHECK(r(scale(c, l)) == c * r(l));
    }
}

TEST_CASE("qf_invariant examples") {
    std::vector<ModelElement> single{ea(0, 0)};
    auto inv = qf_invariant(Q, single);
    CHECK(inv.v_f == Subspace::full(Q, 1));
    REQUIRE(inv.kernels.size() == 1);
    CHECK(inv.kernels[0].is_zero());

    std::vector<ModelElement> two{ea(0, 0) + ea(1, 0), ea(0, 1)};
    auto inv2 = qf_invariant(Q, two);
    REQUIRE(inv2.kernels.size() == 2);
    CHECK(inv2.kernels[0] == Subspace::zero(Q, 2));
    CHECK(inv2.kernels[1] == Subspace::from_generators(Q, 2, {qv({0, 1})}));
    CHECK(inv2.to_string() == "arity=2; vf=[(1,0),(0,1)]; kernels=[ [], [(0,1)] ]");

    CHECK(g_of(inv2, Subspace::from_generators(Q, 2, {qv({1, 0})})) == 0);
    CHECK(g_of(inv2, Subspace::from_generators(Q, 2, {qv({0, 1})})) == 1);
    CHECK(g_of(inv2, Subspace::full(Q, 2)) == 0);
    CHECK_THROWS_AS(g_of(inv2, Subspace::full(Q, 3)), Error);

    auto f2 = FieldCtx::prime(2);
    auto m = [&](std::uint64_t i) { return ea(i, 0, f2); };
    auto mp = [&](std::uint64_t i) { return ea(i, 1, f2); };
    std::vector<ModelElement> a{m(0) + m(1), mp(0) + mp(1)};
    std::vector<ModelElement> b{m(0) + m(1), m(2) + m(1)};
    CHECK(qf_invariant(f2, a).kernels.size() == 2);
    CHECK(qf_invariant(f2, b).kernels.size() == 3);
}

TEST_CASE("free parts restrict the coefficient space") {
    std::vector<ModelElement> t{ea(0, 0) + ef(0), ea(1, 0) + ef(0), ea(2, 0)};
    auto inv = qf_invariant(Q, t);
    CHECK(inv.v_f == Subspace::from_generators(Q, 3, {qv({1, -1, 0}), qv({0, 0, 1})}));
    CHECK(weight_from_invariant(inv, qv({1, -1, 0})) == 2);
    CHECK(weight_from_invariant(inv, qv({0, 0, 1})) == 1);
    CHECK_THROWS_AS(weight_from_invariant(inv, qv({1, 0, 0})), Error);
    CHECK(kernel_of(inv).is_zero());
}

TEST_CASE("kernel multiset recovers weights and kernels") {
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) {
        std::size_t arity = 1 + rng() % 3;
        auto tuple = random_tuple(rng, arity, 5);
        LinearMapFa m(Q, tuple);
        auto inv = qf_invariant(Q, tuple);
        std::size_t total = 0;
        for (std::size_t i = 0; i < inv.kernels.size(); ++i) {
            if (i == 0 || inv.kernels[i] != inv.kernels[i - 1]) total += g_of(inv, inv.kernels[i]);
            CHECK(inv.kernels[i] != inv.v_f);
        }
        CHECK(total == weight_of_subspace(tuple));
        CHECK(kernel_of(inv) == relation_space(Q, tuple));
        for (int s = 0; s < 10; ++s) {
            Vec l;
            for (std::size_t i = 0; i < arity; ++i) l.push_back(random_scalar(rng, Q, 2));
            CHECK(weight(m(l)) == weight_from_invariant(inv, l));
        }
    }
}

TEST_CASE("inclusion-exclusion agrees with kernel multiplicities") {
    std::vector<ModelElement> two{ea(0, 0) + ea(1, 0), ea(0, 1)};
    LinearMapFa m2(Q, two);
    auto oracle2 = weight_oracle(m2);
    auto cands2 = kernel_candidates(m2);
    auto line = Subspace::from_generators(Q, 2, {qv({0, 1})});
    CHECK(g_via_inclusion_exclusion(oracle2, line, 0, cands2));
    CHECK(g_via_inclusion_exclusion(oracle2, line, 1, cands2));
    CHECK_FALSE(g_via_inclusion_exclusion(oracle2, line, 2, cands2));

    std::mt19937 rng(13);
    int instances = 0;
    while (instances < 500) {
        std::size_t arity = 1 + rng() % 3;
        auto tuple = random_tuple(rng, arity, 5, 0.3);
        LinearMapFa m(Q, tuple);
        auto inv = qf_invariant(Q, tuple);
        auto oracle = weight_oracle(m);
        auto cands = kernel_candidates(m);
        // The kernels themselves plus a few subspaces that are not kernels.
        std::vector<Subspace> probes(inv.kernels.begin(), inv.kernels.end());
        probes.push_back(Subspace::zero(Q, arity));
        Vec l;
        for (std::size_t i = 0; i < arity; ++i) l.push_back(random_scalar(rng, Q, 2));
        probes.push_back(Subspace::from_generators(Q, arity, {l}));
        for (const auto& v : probes) {
            auto g = g_of(inv, v);
            for (std::size_t r = 0; r <= g + 1; ++r) {
                CHECK(g_via_inclusion_exclusion(oracle, v, r, cands) == (g >= r));
            }
            ++instances;
        }
    }
}

TEST_CASE("qf_equiv") {
    std::mt19937 rng(19);
    std::vector<std::uint64_t> perm{3, 0, 4, 1, 2};
    for (int t = 0; t < 100; ++t) {
        auto a = random_tuple(rng, 1 + rng() % 3, 5);
        if (t % 3 == 0) a.back() += ef(t % 2);
        CHECK(qf_equiv(Q, a, a));
        std::vector<ModelElement> image;
        for (const auto& e : a) image.push_back(automorphism(e, perm));
        CHECK(qf_equiv(Q, a, image));
    }
    std::vector<ModelElement> light{ea(0, 0), ea(1, 0)};
    std::vector<ModelElement> heavy{ea(0, 0) + ea(2, 0), ea(1, 0)};
    CHECK_FALSE(qf_equiv(Q, light, heavy));
    CHECK_THROWS_AS(qf_equiv(Q, light, std::vector<ModelElement>{ea(0, 0)}), Error);

    // Equivalence classes on a pool of small tuples.
    std::vector<std::vector<ModelElement>> pool;
    for (int i = 0; i < 40; ++i) pool.push_back(random_tuple(rng, 2, 3, 0.3));
    for (const auto& x : pool) {
        for (const auto& y : pool) {
            bool xy = qf_equiv(Q, x, y);
            CHECK(xy == qf_equiv(Q, y, x));
            if (!xy) continue;
            for (const auto& z : pool) {
                if (qf_equiv(Q, y, z)) CHECK(qf_equiv(Q, x, z));
            }
        }
    }
}
