#include <doctest.h>

#include <map>
#include <random>

#include "helpers.hpp"
#include "vsp/error.hpp"
#include "vsp/invariant.hpp"
#include "vsp/typespace.hpp"

using namespace vsp;
using namespace vsp::testing;

namespace {

SubspaceHandle sample_fragment() { return {{ea(0, 0), ea(0, 1) + ea(1, 0), ef(0) + ea(2, 0)}}; }

std::vector<ModelElement> with(std::vector<ModelElement> gens, const ModelElement& x) {
    gens.push_back(x);
    return gens;
}

// Least weight of a - m over m in the fragment with small coefficients.
std::optional<std::size_t> small_coset_weight(const ModelElement& a, const SubspaceHandle& frag, int bound) {
    const auto& g = frag.generators;
    std::optional<std::size_t> best;
    std::vector<int> lambda(g.size(), -bound);
    while (true) {
        ModelElement m;
        for (std::size_t i = 0; i < g.size(); ++i) m += Q.from_int(lambda[i]) * g[i];
        auto d = a - m;
        if (d.in_F() && (!best || weight(d) < *best)) best = weight(d);
        std::size_t pos = 0;
        while (pos < lambda.size() && ++lambda[pos] > bound) lambda[pos++] = -bound;
        if (pos == lambda.size()) break;
    }
    return best;
}

ModelElement random_candidate(std::mt19937& rng) {
    ModelElement a = random_F_element(rng, Q, 3, 2, 2, 0.3);
    if (rng() % 3 == 0) a += ea(2, 0) + ef(0);
    if (rng() % 4 == 0) a += ef(1);
    int fresh = static_cast<int>(rng() % 3);
    for (int i = 0; i < fresh; ++i) a += ea(5 + rng() % 3, 0);
    return a;
}

}  // namespace

TEST_CASE("realized and generic types") {
    auto frag = sample_fragment();
    auto inside = Q.from_int(2) * frag.generators[0] + frag.generators[2];
    auto t = classify(Q, inside, frag);
    CHECK(t.kind == TypeKind::Realized);
    CHECK(t.element == inside);
    t = classify(Q, ef(7), frag);
    CHECK(t.kind == TypeKind::GenericFree);
    CHECK(t.to_string() == "GenericFree");
    CHECK(classify(Q, ef(7) + ea(0, 0), frag) == t);
}

TEST_CASE("two fresh axes give a sum type of weight two") {
    auto frag = sample_fragment();
    auto a = ea(5, 0) + ea(6, 0);
    auto t = classify(Q, a, frag);
    CHECK(t.kind == TypeKind::SumType);
    CHECK(t.n == 2);
    CHECK(t.element.is_zero());
    CHECK(t.to_string() == "SumType(2, 0)");
    CHECK(small_coset_weight(a, frag, 2) == std::optional<std::size_t>(2));
}

TEST_CASE("translation by the fragment is absorbed into the coset") {
    auto frag = sample_fragment();
    auto shift = frag.generators[1] - frag.generators[0];
    auto t = classify(Q, ea(5, 0) + shift, frag);
    CHECK(t.kind == TypeKind::SumType);
    CHECK(t.n == 1);
    CHECK(t.element == shift);
    // Removing the free part brings in e(A2,0).
    t = classify(Q, ef(0) + ea(7, 0), frag);
    CHECK(t.n == 2);
    CHECK(t.element == frag.generators[2]);
}

TEST_CASE("minimal weight matches enumeration of small cosets") {
    std::mt19937 rng(5);
    auto frag = sample_fragment();
    for (int i = 0; i < 150; ++i) {
        auto a = random_candidate(rng);
        auto t = classify(Q, a, frag);
        auto grid = small_coset_weight(a, frag, 2);
        if (t.kind == TypeKind::GenericFree) {
            CHECK_FALSE(grid);
            continue;
        }
        if (t.kind == TypeKind::Realized) {
            CHECK(grid == std::optional<std::size_t>(0));
            continue;
        }
        REQUIRE(grid);
        CHECK(t.n >= 1);
        CHECK(t.n <= *grid);
        CHECK(in_span(Q, frag.generators, t.element));
        auto d = a - t.element;
        CHECK(d.in_F());
        CHECK(weight(d) == t.n);
    }
}

TEST_CASE("equal descriptors are exactly qf-equivalent extensions") {
    std::mt19937 rng(17);
    auto frag = sample_fragment();
    auto basis = independent_subfamily(Q, frag.generators);
    std::vector<ModelElement> pool;
    for (int i = 0; i < 60; ++i) pool.push_back(random_candidate(rng));
    int conjugate_pairs = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        auto ti = classify(Q, pool[i], frag);
        for (std::size_t j = i; j < pool.size(); ++j) {
            auto tj = classify(Q, pool[j], frag);
            bool same = ti == tj;
            CHECK(same == qf_equiv(Q, with(basis, pool[i]), with(basis, pool[j])));
            if (!same || ti.kind == TypeKind::Realized) continue;
            auto f = conjugacy_witness(Q, pool[i], pool[j], frag);
            CHECK(f.apply(pool[i]) == pool[j]);
            for (const auto& g : basis) CHECK(f.apply(g) == g);
            CHECK(f.preserves_qf_type());
            conjugate_pairs += i != j;
        }
    }
    CHECK(conjugate_pairs > 20);
}

TEST_CASE("conjugacy witness examples") {
    auto frag = sample_fragment();
    auto a = ea(5, 0) + ea(6, 0);
    auto id = conjugacy_witness(Q, a, a, frag);
    for (const auto& g : id.domain_generators()) CHECK(id.apply(g) == g);

    SubspaceHandle inside_f{{ea(0, 0), ea(0, 1) + ea(1, 0)}};
    auto b = ea(6, 3) + ea(8, 0);
    auto f = conjugacy_witness(Q, a, b, inside_f);
    CHECK(f.apply(a) == b);
    CHECK(f.apply(ea(5, 0)).axes().size() == 1);
    CHECK(f.sigma().at(AxisId{5}) != AxisId{5});
    CHECK(f.sigma().at(AxisId{0}) == AxisId{0});
    CHECK(qf_equiv(Q, with(inside_f.generators, a), with(inside_f.generators, b)));

    auto g = conjugacy_witness(Q, ef(3), ef(4) + ea(9, 0), frag);
    CHECK(g.apply(ef(3)) == ef(4) + ea(9, 0));

    try {
        conjugacy_witness(Q, ea(5, 0), ea(0, 5), frag);
        FAIL("expected NotSameType");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSameType);
    }
}

TEST_CASE("classification is invariant under maps fixing the fragment") {
    std::mt19937 rng(3);
    auto frag = sample_fragment();
    auto basis = independent_subfamily(Q, frag.generators);
    for (int i = 0; i < 40; ++i) {
        auto a = random_candidate(rng);
        auto t = classify(Q, a, frag);
        if (t.kind == TypeKind::Realized) continue;
        // Move everything off the fragment's span to new axes and coordinates.
        ModelElement b;
        for (const auto& [c, s] : a.entries()) {
            Coord moved = c;
            if (c.free && c.coord > 0) moved.coord += 10;
            if (!c.free && c.axis >= 5) moved.axis += 10;
            b.set(moved, s);
        }
        if (!qf_equiv(Q, with(basis, a), with(basis, b))) continue;
        CHECK(classify(Q, b, frag) == t);
    }
}
