#include <doctest.h>

#include <cmath>

#include "wpdo/builtins.hpp"
#include "wpdo/expression.hpp"

using namespace wpdo;

TEST_CASE("expression parsing and evaluation") {
    const WeightFunction w = bracket_weight();
    SUBCASE("arithmetic and precedence") {
        CHECK(Expression::parse("1+2*3").eval(0, 0, w) == cplx(7.0, 0.0));
        CHECK(Expression::parse("(1+2)*3").eval(0, 0, w) == cplx(9.0, 0.0));
        CHECK(Expression::parse("2^3^1").eval(0, 0, w).real() == doctest::Approx(8.0));
        CHECK(Expression::parse("-2^2").eval(0, 0, w).real() == doctest::Approx(-4.0));
        CHECK(Expression::parse("1/4").eval(0, 0, w) == cplx(0.25, 0.0));
    }
    SUBCASE("variables, functions, and the weight hook") {
        CHECK(Expression::parse("sin(x)").eval(1.3, 0, w).real() == doctest::Approx(std::sin(1.3)));
        CHECK(Expression::parse("k^2").eval(0, 5, w).real() == doctest::Approx(25.0));
        CHECK(Expression::parse("L(k)").eval(0, 3, w).real() == doctest::Approx(std::sqrt(10.0)));
        CHECK(Expression::parse("L(k)^0.5").eval(0, 3, w).real() ==
              doctest::Approx(std::pow(10.0, 0.25)));
        CHECK(Expression::parse("exp(cos(x))").eval(0.4, 0, w).real() ==
              doctest::Approx(std::exp(std::cos(0.4))));
        const cplx v = Expression::parse("i*L(k)").eval(0, 4, w);
        CHECK(v.real() == doctest::Approx(0.0));
        CHECK(v.imag() == doctest::Approx(std::sqrt(17.0)));
        CHECK(Expression::parse("2+pi").eval(0, 0, w).real() ==
              doctest::Approx(2.0 + std::numbers::pi));
    }
    SUBCASE("malformed input fails with a config error") {
        CHECK_THROWS_AS((void)Expression::parse("2+"), Error);
        CHECK_THROWS_AS((void)Expression::parse("sin 3"), Error);
        CHECK_THROWS_AS((void)Expression::parse("foo(2)"), Error);
        CHECK_THROWS_AS((void)Expression::parse("(1+2"), Error);
        CHECK_THROWS_AS((void)Expression::parse("1 2"), Error);
    }
    SUBCASE("expression symbols plug into the calculus") {
        const Symbol s = expression_symbol("(2+sin(x))*L(k)", 1.0, 1.0, w);
        const Symbol ref = builtin_symbol("shear");
        for (long k : {-9L, 0L, 21L})
            for (int j = 0; j < 8; ++j) {
                const double x = two_pi * j / 8.0;
                CHECK(std::abs(s(x, k) - ref(x, k)) < 1e-14);
            }
        CHECK(check_M_membership(s, 1, 1, {32, 64}).consistent);
    }
}

TEST_CASE("builtin specs") {
    CHECK(builtin_symbol("bessel:s=2")(0.0, 3).real() == doctest::Approx(0.1));
    CHECK(builtin_symbol("bracket_power:m=2")(0.0, 2).real() == doctest::Approx(5.0));
    CHECK_THROWS_AS((void)builtin_symbol("nope"), Error);
    CHECK_THROWS_AS((void)builtin_weight("nope"), Error);
    CHECK(builtin_weight("even_power:p=3")(1) == doctest::Approx(std::pow(2.0, 1.0 / 6.0)));
    for (const std::string& name : builtin_torus_names(true)) CHECK(builtin_symbol(name).valid());
    for (const std::string& name : builtin_lattice_names())
        CHECK(builtin_symbol(name).side() == SymbolSide::Lattice);
}
