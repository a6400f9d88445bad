#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace vsp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "cli_test_" + name;
    std::ofstream(path) << text;
    return path;
}

const char* kContext = R"({"field": "q",
  "descriptor": {"f_codim": "aleph0", "axes": [{"dim": "aleph0", "count": "aleph0"}]},
  "constants": {"a": {"axis": [[0, 0, "1"], [1, 0, "1"]]},
                "b": {"axis": [[2, 0, "1"], [3, 5, "-2"]]},
                "c": {"axis": [[0, 0, "1"]]}}})";

}  // namespace

TEST_CASE("decide a sentence from the command line") {
    auto r = run({"decide", "--field", "q", "--formula", "A x. (X1(x) -> X2(x))"});
    CHECK(r.code == 0);
    CHECK(r.out == "true\n");
    r = run({"decide", "--formula", "A x. X1(x)"});
    CHECK(r.out == "false\n");
}

TEST_CASE("quantifier elimination refuses finite fields") {
    auto r = run({"qe", "--field", "zp:3", "--formula", "E x. X1(x)"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("ERROR:FieldNotInfinite:", 0) == 0);
}

TEST_CASE("finite-field counterexample report") {
    auto r = run({"ff-counterexample", "--p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("w(<a>) = 2\n") != std::string::npos);
    CHECK(r.out.find("w(<b>) = 3\n") != std::string::npos);
    CHECK(r.out.find("qf-equivalent: true\n") != std::string::npos);
    CHECK(run({"ff-counterexample", "--p", "4"}).err.rfind("ERROR:NotPrime:", 0) == 0);
}

TEST_CASE("qe prints a quantifier-free formula with the same free variables") {
    auto r = run({"qe", "--formula", "E y. (X1(y) & X1(x + -y) & !X1(x))"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find('E') == std::string::npos);
    CHECK(r.out.find("x") != std::string::npos);
    auto same = run({"qe", "--formula", "E y. (X1(y) & X1(x + -y) & !X1(x))"});
    CHECK(same.out == r.out);
}

TEST_CASE("context-driven subcommands") {
    auto ctx = write_temp("ctx.json", kContext);
    auto r = run({"qftp", "--model", ctx, "--tuple", "a;c"});
    CHECK(r.code == 0);
    CHECK(r.out == "arity=2; vf=[(1,0),(0,1)]; kernels=[ [(0,1)], [(1,-1)] ]\n");
    CHECK(run({"qfequiv", "--model", ctx, "--tuple", "a", "--tuple2", "$b"}).out == "true\n");
    CHECK(run({"qfequiv", "--model", ctx, "--tuple", "a", "--tuple2", "c"}).out == "false\n");
    r = run({"iso", "--model", ctx, "--tuple", "a", "--tuple2", "b"});
    CHECK(r.out == "e(A0,0) |-> e(A2,0)\ne(A1,0) |-> -2*e(A3,5)\n");
    r = run({"eval", "--model", ctx, "--formula", "X2(x + $a) & E y. (X1(y) & !(y = 0) & X1($a + -y))", "--let",
             "x=e(A1,0)"});
    CHECK(r.out == "true\n");
    r = run({"eval", "--model", ctx, "--formula", "X2(x + $a)", "--let", "x=e(A4,0)"});
    CHECK(r.out == "false\n");
    CHECK(run({"model-iso", "--model", ctx, "--model2", ctx}).out == "true\n");
    auto frag = write_temp("frag.json", R"({"field": "q", "descriptor": {"f_codim": 0, "axes": [{"dim": 1, "count": 2}]}})");
    CHECK(run({"model-iso", "--model", ctx, "--model2", frag}).out == "false\n");
    auto formula = write_temp("formula.txt", "E x. ($c + x = 0)\n");
    CHECK(run({"eval", "--model", ctx, "--formula", "@" + formula}).out == "true\n");
    std::remove(ctx.c_str());
    std::remove(frag.c_str());
    std::remove(formula.c_str());
}

TEST_CASE("errors carry stable prefixes and exit codes") {
    auto r = run({"decide", "--formula", "E x. ("});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR:ParseError:", 0) == 0);
    r = run({"decide", "--formula", "X1(x)"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("ERROR:FreeSymbols:", 0) == 0);
    r = run({"eval", "--formula", "X1($k)"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("ERROR:UnknownConstant:", 0) == 0);
    r = run({"eval", "--model", "missing.json", "--formula", "TRUE"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR:ContextFormat:", 0) == 0);
    r = run({"qftp", "--tuple", "e(A0,0);1/0*f(1)"});
    CHECK(r.code == 2);
    r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("ERROR:Usage:", 0) == 0);
    CHECK(run({"decide"}).code == 2);
    CHECK(run({"eval", "--formula", "X1(x)"}).err.rfind("ERROR:UnboundSymbol:", 0) == 0);
}
