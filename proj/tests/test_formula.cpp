#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vsp/error.hpp"
#include "vsp/formula.hpp"
#include "vsp/model.hpp"

using namespace vsp;
using namespace vsp::testing;

namespace {

Term x_term(const std::string& v) { return Term::variable(Q, v); }

Term random_term(std::mt19937& rng, const FieldCtx& field) {
    static const char* vars[] = {"x", "y", "z1", "w"};
    static const char* consts[] = {"c", "d0"};
    Term t;
    int items = static_cast<int>(rng() % 4);
    for (int i = 0; i < items; ++i) {
        auto c = random_scalar(rng, field, 5);
        if (rng() % 3 == 0) {
            t = t + c * Term::constant(field, consts[rng() % 2]);
        } else {
            t = t + c * Term::variable(field, vars[rng() % 4]);
        }
    }
    return t;
}

FormulaPtr random_formula(std::mt19937& rng, const FieldCtx& field, int depth) {
    int choice = static_cast<int>(rng() % (depth <= 0 ? 3 : 9));
    switch (choice) {
        case 0: return Formula::eq(random_term(rng, field), random_term(rng, field));
        case 1: return Formula::xn(rng() % 5, random_term(rng, field));
        case 2: return Formula::truth(rng() % 2);
        case 3: return Formula::negation(random_formula(rng, field, depth - 1));
        case 4: return Formula::conj(random_formula(rng, field, depth - 1), random_formula(rng, field, depth - 1));
        case 5: return Formula::disj(random_formula(rng, field, depth - 1), random_formula(rng, field, depth - 1));
        case 6: return Formula::implies(random_formula(rng, field, depth - 1), random_formula(rng, field, depth - 1));
        case 7: return Formula::exists(rng() % 2 ? "x" : "y", random_formula(rng, field, depth - 1));
        default: return Formula::forall(rng() % 2 ? "z1" : "w", random_formula(rng, field, depth - 1));
    }
}

}  // namespace

TEST_CASE("parse examples") {
    auto f = parse_formula("X1(x)", Q);
    CHECK(f->kind() == FormulaKind::Xn);
    CHECK(f->n() == 1);
    CHECK(f->term() == x_term("x"));

    auto g = parse_formula("E x. (x + -1*c = 0)", Q);
    REQUIRE(g->kind() == FormulaKind::Exists);
    CHECK(g->var() == "x");
    CHECK(g->body()->kind() == FormulaKind::Eq);
    CHECK(g->body()->lhs() == x_term("x") - x_term("c"));
    CHECK(g->body()->rhs().is_zero());
    CHECK(g->free_variables() == std::set<std::string>{"c"});

    auto h = parse_formula("A x. (X1(x) -> X2(x))", Q);
    CHECK(h->kind() == FormulaKind::Forall);
    CHECK(h->body()->kind() == FormulaKind::Implies);
    CHECK(h->to_string() == "A x. (X1(x) -> X2(x))");

    auto chain = parse_formula("(x = 0 & y = 0 & TRUE)", Q);
    CHECK(chain->to_string() == "((x = 0 & y = 0) & TRUE)");
    CHECK(parse_formula("  ! ( -x + 1/2*$k = 0 )", Q)->to_string() == "!-1*x + 1/2*$k = 0");
    CHECK(parse_formula("3*x = 0", FieldCtx::prime(5))->lhs().variables().at("x") == FieldCtx::prime(5).from_int(3));
}

TEST_CASE("parse errors carry positions") {
    auto position_of = [](const std::string& text) -> std::size_t {
        try {
            parse_formula(text, Q);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    CHECK(position_of("X1(x") == 4);
    CHECK(position_of("(x = 0 & y = 0") == 0);
    CHECK(position_of("x = 0 )") == 6);
    CHECK(position_of("2 = x") == 0);
    CHECK(position_of("E X. x = 0") == 2);
    CHECK(position_of("x = ?") == 4);

    std::set<std::string> known{"c"};
    CHECK_NOTHROW(parse_formula("$c = 0", Q, &known));
    try {
        parse_formula("x = $d", Q, &known);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownConstant);
    }
    try {
        parse_formula("1/2*x = 0", FieldCtx::prime(3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MalformedScalar);
    }
}

TEST_CASE("printing and parsing are inverse on random formulas") {
    std::mt19937 rng(101);
    for (int i = 0; i < 500; ++i) {
        const FieldCtx field = i % 4 == 3 ? FieldCtx::prime(7) : Q;
        auto f = random_formula(rng, field, 4);
        auto text = f->to_string();
        auto back = parse_formula(text, field);
        CHECK_MESSAGE(structurally_equal(f, back), text);
        CHECK(back->to_string() == text);
    }
}

TEST_CASE("quantifier-free evaluation") {
    Env env;
    env.vars["x"] = ea(0, 0) + ea(1, 0);
    env.vars["y"] = ea(0, 0);
    env.consts["c"] = ea(1, 0);
    CHECK(eval_qf(parse_formula("0 = 0", Q), env, Q));
    CHECK_FALSE(eval_qf(parse_formula("X1(x)", Q), env, Q));
    CHECK(eval_qf(parse_formula("X2(x)", Q), env, Q));
    CHECK(eval_qf(parse_formula("x = y + $c", Q), env, Q));
    CHECK(eval_qf(parse_formula("(X1(x + -1*y) & !X0(y))", Q), env, Q));
    CHECK(eval_qf(parse_formula("(X0(y) -> FALSE)", Q), env, Q));
    CHECK_THROWS_AS(eval_qf(parse_formula("X1(u)", Q), env, Q), Error);
    CHECK_THROWS_AS(eval_qf(parse_formula("E u. X1(u)", Q), env, Q), Error);

    std::mt19937 rng(103);
    for (int i = 0; i < 100; ++i) {
        Env e;
        for (const char* v : {"x", "y", "z1", "w"}) e.vars[v] = random_F_element(rng, Q, 3, 2, 2, 0.3);
        for (const char* c : {"c", "d0"}) e.consts[c] = random_F_element(rng, Q, 3, 2, 2, 0.3);
        auto t = random_term(rng, Q);
        CHECK(eval_qf(Formula::xn(0, t), e, Q) == eval_qf(Formula::eq(t, Term{}), e, Q));
        // Unnormalized input normalizes to the same term.
        auto noisy = parse_formula("X2(" + t.to_string() + " + x + -1*x)", Q);
        CHECK(noisy->term() == t);
        CHECK(eval_qf(noisy, e, Q) == in_Xn(eval_term(t, e, Q), 2));
    }
}

TEST_CASE("shared subformulas") {
    auto leaf = parse_formula("X1(x)", Q);
    FormulaPtr f = leaf;
    for (int i = 0; i < 60; ++i) f = Formula::conj(f, f);
    CHECK(f->dag_size() == 61);
    Env env;
    env.vars["x"] = ea(0, 0);
    CHECK(eval_qf(f, env, Q));
    CHECK(f->free_variables() == std::set<std::string>{"x"});
}
