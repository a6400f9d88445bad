#include <doctest.h>

#include "helpers.hpp"
#include "vsp/error.hpp"
#include "vsp/finitefield.hpp"
#include "vsp/model.hpp"

using namespace vsp;
using namespace vsp::testing;

TEST_CASE("construction for p = 2") {
    auto ce = construct_counterexample(2);
    const auto& f = ce.field;
    CHECK(ce.a[0] == e_axis(f, 0, 0) + e_axis(f, 1, 0));
    CHECK(ce.a[1] == e_axis(f, 0, 1) + e_axis(f, 1, 1));
    CHECK(ce.b[0] == ce.a[0]);
    CHECK(ce.b[1] == e_axis(f, 2, 0) + e_axis(f, 1, 0));
    auto rows = combination_table(f, ce.a, ce.b);
    CHECK(rows.size() == 4);
    for (const auto& r : rows) {
        if (r.lambda.is_zero() && r.mu.is_zero()) continue;
        CHECK(r.weight_a == std::optional<std::size_t>(2));
        CHECK(r.weight_b == std::optional<std::size_t>(2));
    }
}

TEST_CASE("qf-equivalent pairs with different subspace weights") {
    for (std::uint64_t p : {2, 3, 5}) {
        CAPTURE(p);
        auto ce = construct_counterexample(p);
        const auto& f = ce.field;
        CHECK(brute_qf_equiv(f, ce.a, ce.b));
        CHECK(brute_qf_equiv(f, ce.a, ce.a));
        for (const auto& x : {ce.a, ce.b}) {
            CHECK(weight(x[0]) == p);
            CHECK(weight(x[1]) == p);
            CHECK(max_element_weight(f, x) == p);
        }
        for (const auto& r : combination_table(f, ce.a, ce.b)) {
            if (!r.zero_a) CHECK(r.weight_b == std::optional<std::size_t>(p));
        }
        CHECK(exhaustive_subspace_weight(f, ce.a) == p);
        CHECK(exhaustive_subspace_weight(f, ce.b) == p + 1);
        CHECK(weight_of_subspace(ce.b) == p + 1);
        CHECK_NOTHROW(witness_star(f, ce.a));
        try {
            witness_star(f, ce.b);
            FAIL("expected NoGenericWitness");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NoGenericWitness);
        }
    }
}

TEST_CASE("stopping the sum at p-2 breaks qf-equivalence") {
    // Summing only up to p-2 leaves b1 with weight p-1.
    auto ce = construct_counterexample(3);
    const auto& f = ce.field;
    auto short_b1 = e_axis(f, 3, 0) + e_axis(f, 1, 0);
    CHECK(weight(short_b1) < 3);
    CHECK_FALSE(brute_qf_equiv(f, ce.a, Pair{ce.b[0], short_b1}));
}

TEST_CASE("finite field checks reject the rationals and composite moduli") {
    Pair x{ea(0, 0), ea(1, 0)};
    try {
        brute_qf_equiv(Q, x, x);
        FAIL("expected FieldNotFinite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldNotFinite);
    }
    try {
        construct_counterexample(4);
        FAIL("expected NotPrime");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrime);
    }
}

TEST_CASE("the construction needs p+1 axes, the first p of dimension two") {
    auto f = FieldCtx::prime(3);
    CHECK_NOTHROW(require_counterexample_room(Model::rich(f)));
    ModelDescriptor small;
    small.f_codim = CardinalSymbol::finite(0);
    small.axis_census[CardinalSymbol::finite(2)] = CardinalSymbol::finite(3);
    CHECK_THROWS_AS(require_counterexample_room(Model::canonical(small, f)), Error);
    small.axis_census[CardinalSymbol::finite(1)] = CardinalSymbol::finite(1);
    CHECK_THROWS_AS(require_counterexample_room(Model::canonical(small, f)), Error);
    small.axis_census.erase(CardinalSymbol::finite(1));
    small.axis_census[CardinalSymbol::finite(2)] = CardinalSymbol::finite(4);
    CHECK_NOTHROW(require_counterexample_room(Model::canonical(small, f)));
}
