#include <doctest.h>

#include <string>
#include <vector>

#include "projkit/error.hpp"
#include "projkit/expr.hpp"
#include "support.hpp"

using namespace projkit;
using projkit::testing::q;
using projkit::testing::RandomSource;
using projkit::testing::xpoly;

TEST_CASE("parse: literals and structure")
{
    const ExprPtr half = parse("1/2");
    REQUIRE(std::holds_alternative<ast::Literal>(half->node));
    CHECK(std::get<ast::Literal>(half->node).value == q(1, 2));

    const ExprPtr e = parse("exp(-2*x)");
    const ExprPtr expected =
        make_apply(Function::Exp, make_binary('*', make_literal(q(-2)), make_variable('x')));
    CHECK(equal(*e, *expected));

    CHECK(equal(*parse("-x^2"), *make_negate(make_power(make_variable('x'), q(2)))));
    CHECK(equal(*parse("a - b - c"),
                *make_binary('-', make_binary('-', make_parameter("a"), make_parameter("b")), make_parameter("c"))));
    CHECK(equal(*parse("(x+1)^(3/2)"),
                *make_power(make_binary('+', make_variable('x'), make_literal(q(1))), q(3, 2))));
}

TEST_CASE("parse: syntax errors carry offsets")
{
    auto offset_of = [](const std::string &text) -> long {
        try {
            (void)parse(text);
        } catch (const SyntaxError &e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("x + * y") == 4);
    CHECK(offset_of("(x + 1") == 0);
    CHECK(offset_of("x ^ y") == 4);
    CHECK(offset_of("x $ 1") == 2);
    CHECK(offset_of("log(x)") == 0);
    CHECK(offset_of("x y") == 2);
    CHECK(offset_of("1/0") == 1);
}

TEST_CASE("expand: examples")
{
    CHECK(expand("exp(-2*x)", {}, 2) == xpoly({1, -2, 2}, 2));

    // Frozen from the square check below.
    const Jet2 r = expand("(x+1)^(3/2)", {}, 2);
    CHECK(r == xpoly({1, q(3, 2), q(3, 8)}, 2));
    CHECK(r * r == expand("(x+1)^3", {}, 2));

    CHECK(expand("g", {{"g", q(3, 4)}}) == Jet2::constant(q(3, 4)));
    CHECK(agree(expand("1/(1-x)", {}, 3), xpoly({1, 1, 1, 1}, 3)));
    CHECK(agree(expand("(1+x)^(-2)", {}, 3), xpoly({1, -2, 3, -4}, 3)));
}

TEST_CASE("expand: errors")
{
    auto kind_of = [](const std::string &text, const ParamEnv &env) {
        try {
            (void)expand(text, env);
        } catch (const Error &e) {
            return e.kind();
        }
        FAIL("expected an error");
        return ErrorKind::SyntaxError;
    };
    CHECK(kind_of("c*x", {}) == ErrorKind::UnboundParameter);
    CHECK(kind_of("1/x", {}) == ErrorKind::NonUnitDivisor);
    CHECK(kind_of("(2+x)^(1/2)", {}) == ErrorKind::NonSquareConstant);
    CHECK(kind_of("(1+x)^(1/3)", {}) == ErrorKind::UnsupportedExponent);
    CHECK(kind_of("exp(1+x)", {}) == ErrorKind::NonZeroConstantTerm);
}

TEST_CASE("parameters are collected")
{
    const auto names = parameters(*parse("alpha*exp(x) + beta*y^2 - exp(c*y)"));
    CHECK(names == std::set<std::string>{"alpha", "beta", "c"});
}

namespace {

// Random expression text built from a small grammar; every output parses.
std::string random_text(RandomSource &rng, int depth)
{
    if (depth == 0) {
        switch (rng.integer(0, 4)) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "k";
        case 3: return std::to_string(rng.integer(0, 9));
        default: return std::to_string(rng.integer(1, 9)) + "/" + std::to_string(rng.integer(1, 9));
        }
    }
    const std::string a = random_text(rng, depth - 1);
    const std::string b = random_text(rng, depth - 1);
    switch (rng.integer(0, 7)) {
    case 0: return a + " + " + b;
    case 1: return a + " - " + b;
    case 2: return a + "*" + b;
    case 3: return "(" + a + ")*(" + b + ")";
    case 4: return "-" + a;
    case 5: return "(" + a + ")^" + std::to_string(rng.integer(0, 3));
    case 6: return "exp(x*(" + a + "))";
    default: return "(" + a + ") - (" + b + ")";
    }
}

} // namespace

TEST_CASE("property: print then parse is structurally stable")
{
    RandomSource rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const ExprPtr e = parse(random_text(rng, rng.integer(0, 4)));
        const std::string printed = print(*e);
        INFO(printed);
        CHECK(equal(*parse(printed), *e));
    }
    for (const char *text : {"x/(1/2)", "-1/2*x", "x*-2", "x - -3", "(1/2)^3", "x^(-1)", "--x", "-(x*y)",
                             "sqrt(1 + x)^(3/2)", "1/x/y"}) {
        const ExprPtr e = parse(text);
        CHECK(equal(*parse(print(*e)), *e));
    }
}

TEST_CASE("property: expand is a ring homomorphism")
{
    RandomSource rng(8);
    const ParamEnv env{{"k", q(-2, 3)}};
    for (int trial = 0; trial < 40; ++trial) {
        const ExprPtr a = parse(random_text(rng, 3));
        const ExprPtr b = parse(random_text(rng, 3));
        const int n = rng.integer(2, 8);
        CHECK(expand(*make_binary('+', a, b), env, n) == expand(*a, env, n) + expand(*b, env, n));
        CHECK(expand(*make_binary('*', a, b), env, n) == expand(*a, env, n) * expand(*b, env, n));
        CHECK(expand(*make_negate(a), env, n) == -expand(*a, env, n));
    }
}

TEST_CASE("property: polynomials of degree <= N expand exactly")
{
    RandomSource rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::string text = "0";
        std::vector<std::tuple<int, int, Rational>> terms;
        for (int k = 0; k < 5; ++k) {
            const int i = rng.integer(0, 3), j = rng.integer(0, 3);
            const Rational c = rng.rational();
            text += " + (" + to_string(c) + ")*x^" + std::to_string(i) + "*y^" + std::to_string(j);
            terms.emplace_back(i, j, c);
        }
        Jet2 expected(6);
        for (const auto &[i, j, c] : terms) {
            expected.set_coeff(i, j, expected.coeff(i, j) + c);
        }
        CHECK(expand(text, {}, 6) == expected);
    }
}
