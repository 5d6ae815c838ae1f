#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mm/identities.hpp"
#include "mm/special.hpp"

using namespace mm;
using cd = std::complex<double>;

TEST_CASE("registry and lookup") {
    CHECK(registry().size() >= 10);
    const auto& rec = lookup("smyth_xyz");
    CHECK(rec.kind == IdentityKind::mahler);
    CHECK(rec.closed_form.eval() ==
          doctest::Approx(7.0 * zeta(3) / (2.0 * std::numbers::pi * std::numbers::pi))
              .epsilon(1e-14));
    CHECK_THROWS_AS(lookup("nope"), std::out_of_range);
    CHECK_THROWS_AS(verify("smyth_xyz", VerifyMethod::order_stat, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify("gmm_golden_1", VerifyMethod::jensen, {}),
                    std::invalid_argument);
}

TEST_CASE("closed-form JSON round trips") {
    for (const auto& rec : registry()) {
        ClosedForm back = ClosedForm::from_json(rec.closed_form.to_json());
        CHECK(back.eval() == rec.closed_form.eval());
        CHECK(back.str() == rec.closed_form.str());
    }
    CHECK(ClosedForm::quotient(ClosedForm::zeta_of(3),
                               ClosedForm::power(ClosedForm::pi_const(), 2))
              .eval() ==
          doctest::Approx(zeta(3) / (std::numbers::pi * std::numbers::pi)));
}

TEST_CASE("record JSON carries the essentials") {
    auto j = lookup("gmm_golden_2").to_json();
    CHECK(j.contains("id"));
    CHECK(j.contains("kind"));
    CHECK(j.contains("closed_form"));
    CHECK(j.contains("source"));
    CHECK(j["id"] == "gmm_golden_2");
}

TEST_CASE("polylog relations") {
    QuadratureConfig cfg;
    for (const auto& rel : builtin_relations()) {
        auto rep = verify(rel.id, VerifyMethod::automatic, cfg);
        CHECK(rep.pass);
        CHECK(rep.abs_diff < 1e-10);
    }
}

TEST_CASE("gmm records, both routes") {
    QuadratureConfig cfg;
    for (const char* id :
         {"gmm_1mx_2", "gmm_1mx_3", "gmm_ratio_2", "gmm_golden_1", "gmm_golden_2"}) {
        auto a = verify(id, VerifyMethod::order_stat, cfg);
        CHECK(a.pass);
        CHECK(a.abs_diff < 1e-8);
        auto b = verify(id, VerifyMethod::closed_only, cfg);
        CHECK(b.pass);
    }
    CHECK(lookup("gmm_golden_1").closed_form.eval() ==
          doctest::Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));
    CHECK(lookup("gmm_golden_2").closed_form.eval() ==
          doctest::Approx(0.63688119561918743).epsilon(1e-11));
}

TEST_CASE("a fast mahler record through jensen") {
    QuadratureConfig cfg;
    auto rep = verify("smyth_xyz", VerifyMethod::jensen, cfg);
    CHECK(rep.pass);
    CHECK(rep.abs_diff < 1e-5);
    CHECK(rep.method == "jensen");
}

TEST_CASE("series record") {
    QuadratureConfig cfg;
    auto rep = verify("limit_log2", VerifyMethod::automatic, cfg);
    CHECK(rep.pass);
    CHECK(rep.closed_value == doctest::Approx(std::log(2.0)));
    CHECK(rep.abs_diff < 1e-3);
}

TEST_CASE("log2 block quadrature") {
    double v = log2_block();
    CHECK(std::abs(v - std::log(2.0)) < 1e-3 * std::log(2.0));
}

TEST_CASE("binomial tails and the inner constant") {
    for (int l = 1; l <= 10; ++l) {
        for (double lam : {0.2, 0.5, 0.8}) {
            double c = tail_closed(l, lam);
            CHECK(std::abs(tail_sum(l, lam) - c) < 1e-12 * (1.0 + std::abs(c)));
        }
    }
    CHECK(std::abs(inner_constant() -
                   std::numbers::pi * std::numbers::pi / 2.0) < 1e-10);
}

TEST_CASE("relation residual is seed-stable and small") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    const RelationSpec* five = nullptr;
    for (const auto& r : builtin_relations())
        if (r.id == "rel_five_term") five = &r;
    REQUIRE(five != nullptr);
    std::vector<std::pair<cd, cd>> pts;
    while (pts.size() < 60) {
        cd x(U(rng), U(rng)), y(U(rng), U(rng));
        if (!five->admissible || five->admissible(x, y)) pts.emplace_back(x, y);
    }
    CHECK(relation_residual(*five, pts) < 1e-10);
}
