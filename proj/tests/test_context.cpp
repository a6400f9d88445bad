#include <doctest.h>

#include <functional>
#include <random>

#include "helpers.hpp"
#include "vsp/context.hpp"
#include "vsp/error.hpp"

using namespace vsp;
using namespace vsp::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("parse elements in canonical rendering") {
    CHECK(parse_element("0", Q).is_zero());
    CHECK(parse_element("e(A0,0)", Q) == ea(0, 0));
    auto e = parse_element("e(A0,0) + 2*e(A1,3) + -1/2*f(0)", Q);
    CHECK(e == ea(0, 0) + q(2) * ea(1, 3) + q(-1, 2) * ef(0));
    CHECK(parse_element(e.to_string(), Q) == e);
    CHECK(parse_element(" -e( A2 , 1 )+f(4) ", Q) == -ea(2, 1) + ef(4));
    auto f3 = FieldCtx::prime(3);
    CHECK(parse_element("2*e(A0,0) + e(A0,0)", f3).is_zero());
    CHECK(kind_of([] { parse_element("e(B0,0)", Q); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_element("e(A0,0) +", Q); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_element("2 e(A0,0)", Q); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { parse_element("1/2*e(A0,0)", f3); }) == ErrorKind::MalformedScalar);
}

TEST_CASE("context files round-trip exactly") {
    const char* text = R"({"field": "zp:5",
        "descriptor": {"f_codim": 1, "axes": [{"dim": 2, "count": 3}, {"dim": "aleph0", "count": "aleph0"}]},
        "constants": {"a": {"axis": [[0, 1, "4"], [2, 0, "1"]], "free": [[0, "3"]]}, "z": {}}})";
    auto m = parse_context(text);
    CHECK(m.field() == FieldCtx::prime(5));
    CHECK(m.descriptor().f_codim == CardinalSymbol::finite(1));
    CHECK(m.axis_dim(AxisId{0}) == CardinalSymbol::finite(2));
    auto f5 = FieldCtx::prime(5);
    CHECK(m.constant("a") == f5.from_int(4) * ea(0, 1, f5) + ea(2, 0, f5) + f5.from_int(3) * ef(0, f5));
    CHECK(m.constant("z").is_zero());
    auto out = serialize_context(m);
    auto again = parse_context(out);
    CHECK(again == m);
    CHECK(serialize_context(again) == out);
}

TEST_CASE("random rational contexts round-trip") {
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
        auto m = Model::rich(Q);
        for (int k = 0; k < 3; ++k) {
            auto e = random_F_element(rng, Q, 4, 3, 7, 0.4);
            if (rng() % 2) e += random_scalar(rng, Q, 9, false) * ef(rng() % 3);
            m.define_constant("c" + std::to_string(k), e);
        }
        auto out = serialize_context(m);
        auto back = parse_context(out);
        CHECK(back == m);
        CHECK(serialize_context(back) == out);
    }
}

TEST_CASE("malformed contexts are rejected") {
    CHECK(kind_of([] { parse_context("{"); }) == ErrorKind::ContextFormat);
    CHECK(kind_of([] { parse_context(R"({"descriptor": {"f_codim": 0, "axes": []}})"); }) == ErrorKind::ContextFormat);
    CHECK(kind_of([] { parse_context(R"({"field": "q", "descriptor": {"f_codim": "many", "axes": []}})"); }) ==
          ErrorKind::ContextFormat);
    CHECK(kind_of([] {
              parse_context(R"({"field": "q", "descriptor": {"f_codim": 0, "axes": [{"dim": 1, "count": 1}]},
                                "constants": {"c": {"axis": [[0, 0, 1]]}}})");
          }) == ErrorKind::ContextFormat);
    // Coordinate 1 does not exist on a one-dimensional axis.
    CHECK(kind_of([] {
              parse_context(R"({"field": "q", "descriptor": {"f_codim": 0, "axes": [{"dim": 1, "count": 1}]},
                                "constants": {"c": {"axis": [[0, 1, "1"]]}}})");
          }) == ErrorKind::InvalidElement);
    CHECK(kind_of([] { load_context("/nonexistent/context.json"); }) == ErrorKind::ContextFormat);
}
