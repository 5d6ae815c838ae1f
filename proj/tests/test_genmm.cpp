#include <cmath>
#include <complex>

#include "doctest.h"
#include "mm/genmm.hpp"

using namespace mm;
using cd = std::complex<double>;

TEST_CASE("family plumbing") {
    CHECK(family_from_string("1mx") == Family::one_minus_x);
    CHECK(family_from_string("ratio") == Family::ratio);
    CHECK(family_from_string("golden") == Family::golden);
    CHECK_THROWS(family_from_string("nope"));
    for (Family f : {Family::one_minus_x, Family::ratio, Family::golden})
        CHECK(family_from_string(family_to_string(f)) == f);
    CHECK(family_poly(Family::golden, "x") == parse("1+x-x^-1"));
}

TEST_CASE("log sup norms") {
    CHECK(family_log_sup_norm(Family::one_minus_x) ==
          doctest::Approx(std::log(2.0)));
    CHECK(family_log_sup_norm(Family::golden) ==
          doctest::Approx(0.5 * std::log(5.0)));
    CHECK(std::isinf(family_log_sup_norm(Family::ratio)));
}

TEST_CASE("sup_norm heuristic") {
    auto [v1, t1] = sup_norm(parse("1-x"));
    CHECK(v1 == doctest::Approx(2.0).epsilon(1e-9));
    auto [v2, t2] = sup_norm(parse("1+x-x^-1"));
    CHECK(v2 == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    auto [v3, t3] = sup_norm(parse("1+x+y"));
    CHECK(v3 == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS(sup_norm(LaurentPolynomial()));
}

TEST_CASE("closed forms, low orders") {
    CHECK(std::abs(closed_one_minus_x(1)) < 1e-15);
    CHECK(std::abs(closed_ratio(1)) < 1e-15);
    double phi = (std::sqrt(5.0) + 1.0) / 2.0;
    CHECK(closed_golden(1) == doctest::Approx(std::log(phi)).epsilon(1e-14));
    CHECK(closed_golden(2) == doctest::Approx(0.63688119561918743).epsilon(1e-12));
    CHECK_THROWS(closed_one_minus_x(0));
    CHECK_THROWS(closed_golden(-1));
}

TEST_CASE("order statistic vs closed form, n <= 4") {
    QuadratureConfig cfg;
    for (Family f : {Family::one_minus_x, Family::ratio, Family::golden}) {
        for (int n = 1; n <= 4; ++n) {
            auto r = gmm_order_stat(family_profile(f), n, cfg);
            CHECK(std::abs(r.value - closed_family(f, n)) < 1e-6);
        }
    }
}

TEST_CASE("profile validation rejects a lying profile") {
    MonotoneProfile p = family_profile(Family::one_minus_x);
    p.g = [](double u) { return 2.0 * std::sin(3.141592653589793 * u) + 0.05; };
    QuadratureConfig cfg;
    CHECK_THROWS(gmm_order_stat(p, 2, cfg));
}

TEST_CASE("direct estimator, moderate budget") {
    QuadratureConfig cfg;
    cfg.method = QuadMethod::qmc;
    cfg.total_samples = 200000;
    for (Family f : {Family::one_minus_x, Family::golden}) {
        for (int n = 1; n <= 3; ++n) {
            auto r = gmm_direct_family(f, n, cfg);
            CHECK(std::abs(r.value - closed_family(f, n)) <
                  4.0 * r.error_estimate + 1e-5);
        }
    }
    auto r = gmm_direct_family(Family::ratio, 2, cfg);
    CHECK(std::abs(r.value - closed_ratio(2)) < 4.0 * r.error_estimate + 1e-4);
}

TEST_CASE("gmm_direct argument checks") {
    QuadratureConfig cfg;
    CHECK_THROWS(gmm_direct({}, cfg));
    CHECK_THROWS(gmm_direct({LaurentPolynomial()}, cfg));
    CHECK_THROWS(gmm_direct_family(Family::golden, 0, cfg));
}

TEST_CASE("limit series") {
    CHECK(limit_series(1) == doctest::Approx(0.0));
    // the series is the odd closed form by construction, bit for bit
    for (int m : {2, 5, 9, 21, 41}) {
        CHECK(limit_series(m) == closed_one_minus_x(2 * m - 1));
    }
    double gap9 = std::log(2.0) - limit_series(9);
    double gap41 = std::log(2.0) - limit_series(41);
    CHECK(gap41 < gap9);
    CHECK(gap9 > 0.0);
}

TEST_CASE("values stay below the sup norm") {
    for (int n = 1; n <= 81; ++n)
        CHECK(closed_one_minus_x(n) < std::log(2.0));
    for (int n = 1; n <= 20; ++n)
        CHECK(closed_golden(n) < 0.5 * std::log(5.0));
}
