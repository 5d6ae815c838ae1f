#include <complex>
#include <random>

#include "doctest.h"
#include "mm/laurent.hpp"
#include "mm/measure.hpp"

using namespace mm;
using cd = std::complex<double>;

namespace {

LaurentPolynomial random_poly(std::mt19937_64& rng, int nvars, int nterms) {
    static const std::vector<std::string> names = {"x", "y", "z", "w", "u", "v"};
    std::uniform_int_distribution<int> exp_dist(-5, 5);
    std::uniform_int_distribution<int> coeff_dist(-9, 9);
    LaurentPolynomial p;
    for (int t = 0; t < nterms; ++t) {
        std::vector<std::string> vars(names.begin(), names.begin() + nvars);
        std::vector<int> exps(static_cast<std::size_t>(nvars));
        for (auto& e : exps) e = exp_dist(rng);
        int c = coeff_dist(rng);
        if (c == 0) c = 1;
        p = p + LaurentPolynomial::monomial(vars, exps, Rational(c));
    }
    return p;
}

std::vector<cd> random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> U(0.3, 1.4);
    std::uniform_real_distribution<double> A(0.0, 6.28);
    std::vector<cd> pt(n);
    for (auto& z : pt) z = std::polar(U(rng), A(rng));
    return pt;
}

} // namespace

TEST_CASE("parse basics") {
    LaurentPolynomial p = parse("1+x+y+z");
    CHECK(p.term_count() == 4);
    for (const auto& [e, c] : p.terms()) CHECK(c == Rational(1));

    LaurentPolynomial q = parse("(1-x)*(1-y)+(1+x)*(1+y)*z");
    CHECK(q.term_count() == 8);
    CHECK(q.coefficient({{"x", 1}, {"y", 1}, {"z", 1}}) == Rational(1));
    CHECK(q.coefficient({{"x", 1}, {"y", 1}}) == Rational(1));
    CHECK(q.coefficient({{"x", 1}}) == Rational(-1));

    LaurentPolynomial r = parse("1+x+y^-1-(1+x+y)*z");
    CHECK(r.coefficient({{"y", -1}}) == Rational(1));
    CHECK(r.coefficient({{"y", 1}, {"z", 1}}) == Rational(-1));
}

TEST_CASE("parse rational coefficients and unary minus") {
    LaurentPolynomial p = parse("-1/2+3*x^2");
    CHECK(p.coefficient({}) == Rational(-1, 2));
    CHECK(p.coefficient({{"x", 2}}) == Rational(3));
    CHECK(parse("(-x)*(-x)") == parse("x^2"));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse("1+x+("), ParseError);
    CHECK_THROWS_AS(parse("x^y"), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
    try {
        parse("1+*x");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position <= 4);
    }
}

TEST_CASE("evaluate") {
    CHECK(parse("1+x+y+z").evaluate(std::vector<cd>{1.0, 1.0, 1.0}).real() ==
          doctest::Approx(4.0));
    CHECK(parse("x^-1").evaluate(std::vector<cd>{2.0}).real() == doctest::Approx(0.5));
    cd w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
    CHECK(std::abs(parse("1+x+y").evaluate(std::vector<cd>{w, std::conj(w)})) <
          1e-14);
    CHECK_THROWS(parse("x^-1").evaluate(std::vector<cd>{cd(0.0)}));
}

TEST_CASE("ring axioms at random points") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        LaurentPolynomial p = random_poly(rng, 3, 4);
        LaurentPolynomial q = random_poly(rng, 3, 4);
        auto pt = random_point(rng, 3);
        cd lhs = (p + q).evaluate(pt);
        cd rhs = p.evaluate(pt) + q.evaluate(pt);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
        lhs = (p * q).evaluate(pt);
        rhs = p.evaluate(pt) * q.evaluate(pt);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("print/parse round trip") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
        LaurentPolynomial p = random_poly(rng, 1 + it % 6, 5);
        CHECK(parse(p.str()) == p);
    }
    CHECK(parse(LaurentPolynomial().str()) == LaurentPolynomial());
}

TEST_CASE("equality ignores insertion order and phantom variables") {
    CHECK(parse("x+y") == parse("y+x"));
    CHECK(parse("x+y-y") == parse("x"));
    CHECK(parse("x+z-z") == parse("x+y-y"));
}

TEST_CASE("as_poly_in") {
    auto cs = as_poly_in(parse("1+x+y+z"), "z");
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == parse("1+x+y"));
    CHECK(cs[1] == parse("1"));

    auto ds = as_poly_in(parse("(1-x)*(1-y)+(1+x)*(1+y)*z"), "z");
    REQUIRE(ds.size() == 2);
    CHECK(ds[0] == parse("(1-x)*(1-y)"));
    CHECK(ds[1] == parse("(1+x)*(1+y)"));

    CHECK_THROWS(as_poly_in(parse("1+x"), "z"));
}

TEST_CASE("as_poly_in reassembly is the identity") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        LaurentPolynomial p = random_poly(rng, 3, 5);
        auto [q, shift] = shift_var_nonneg(p, "z");
        CHECK(q == p.shift("z", shift));
        auto cs = as_poly_in(q, "z");
        LaurentPolynomial back;
        for (std::size_t k = 0; k < cs.size(); ++k)
            back = back + cs[k] * LaurentPolynomial::variable("z").pow(static_cast<int>(k));
        CHECK(back == q);
    }
}

TEST_CASE("boundary curve of R(x,y)") {
    // (1-x)/(1-y): |R| = 1 on the torus iff (xy-1)(x-y) = 0
    RationalFunction R{parse("1-x"), parse("1-y")};
    LaurentPolynomial c = boundary_curve(R);
    LaurentPolynomial target = parse("(x*y-1)*(x-y)");
    bool match = false;
    for (int s : {1, -1})
        for (int ex = -2; ex <= 2; ++ex)
            for (int ey = -2; ey <= 2; ++ey) {
                LaurentPolynomial cand =
                    (LaurentPolynomial::constant(Rational(s)) * target)
                        .shift("x", ex)
                        .shift("y", ey);
                if (cand == c) match = true;
            }
    CHECK(match);
}
