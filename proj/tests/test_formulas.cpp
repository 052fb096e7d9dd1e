#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mulab/anatomy.hpp"
#include "mulab/errors.hpp"
#include "mulab/formulas.hpp"

using namespace mulab;

TEST_CASE("pair similarity location and scale") {
    CHECK(xi_q(0.3) == doctest::Approx(0.58).epsilon(1e-12));
    CHECK(xi_q(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xi_alpha(100, 0.3) == doctest::Approx(58.0).epsilon(1e-12));
    double beta2 = 8.0 * 100 * 0.3 * 0.7 * 0.58 * std::log(100.0);
    CHECK(xi_beta(100, 0.3) == doctest::Approx(std::sqrt(beta2)).epsilon(1e-12));
}

TEST_CASE("expected tree component count matches hand products") {
    // k=1: n (1-p)^(n-1)
    CHECK(expected_tree_components(10, 1, 0.1) ==
          doctest::Approx(10.0 * std::pow(0.9, 9)).epsilon(1e-10));
    // k=2: C(n,2) p (1-p)^(2(n-2)+1-1)
    CHECK(expected_tree_components(10, 2, 0.1) ==
          doctest::Approx(45.0 * 0.1 * std::pow(0.9, 16)).epsilon(1e-10));
    // k=3: C(n,3) 3 p^2 (1-p)^(3(n-3)+3-2)
    CHECK(expected_tree_components(10, 3, 0.1) ==
          doctest::Approx(120.0 * 3.0 * 0.01 * std::pow(0.9, 22)).epsilon(1e-10));
    CHECK(expected_tree_components(10, 1, 0.0) == 10.0);
    CHECK(expected_tree_components(10, 3, 0.0) == 0.0);
    CHECK(expected_tree_components(10, 3, 1.0) == 0.0);
    CHECK_THROWS_AS(expected_tree_components(10, 0, 0.1), DomainError);
    CHECK_THROWS_AS(expected_tree_components(10, 11, 0.1), DomainError);
}

TEST_CASE("expected isolated count outside a fixed subset") {
    CHECK(expected_outside_isolated(10, 4, 0.5) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(expected_outside_isolated(10, 0, 0.3) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(expected_outside_isolated(5, 6, 0.3), DomainError);
}

TEST_CASE("conjugate parameter: fixed point agrees with bisection") {
    for (int k = 1; k <= 100; ++k) {
        double lam = 1.0 + 9.0 * k / 100.0;
        double a = conjugate_lambda(lam);
        double b = conjugate_lambda_oracle(lam);
        CHECK(std::fabs(a - b) < 1e-10);
        CHECK(std::fabs(b * std::exp(-b) - lam * std::exp(-lam)) < 1e-12);
    }
    CHECK(conjugate_lambda_oracle(2.0) == doctest::Approx(0.40637).epsilon(2e-5));
    CHECK_THROWS_AS(conjugate_lambda_oracle(1.0), DomainError);
    CHECK_THROWS_AS(conjugate_lambda_oracle(0.5), DomainError);
}

TEST_CASE("asymptotic 2-core fraction") {
    double lp = conjugate_lambda_oracle(2.0);
    CHECK(core_fraction(2.0) ==
          doctest::Approx((1.0 - lp) * (1.0 - lp / 2.0)).epsilon(1e-9));
    CHECK(core_fraction(2.0) == doctest::Approx(0.473).epsilon(1e-3));
}

TEST_CASE("branching process floors") {
    CHECK(gw_mean_floor(0.05) == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(gw_mean_floor(0.2) == doctest::Approx(0.015).epsilon(1e-12));
    CHECK(gw_forest_floor(0.1, 1000) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("typical subset and degree windows") {
    auto w = typical_subset_window(100);
    double s = std::sqrt(100.0 * std::log(100.0));
    CHECK(w.first == int(std::ceil(50.0 - s)));
    CHECK(w.second == int(std::floor(50.0 + s)));
    CHECK(w.first >= 0);
    CHECK(w.second <= 100);

    auto dw = degree_window(100, 0.3);
    double half = std::sqrt(2.0 * 100 * 0.3 * 0.7 * std::log(100.0));
    CHECK(dw.first == doctest::Approx(30.0 - half).epsilon(1e-12));
    CHECK(dw.second == doctest::Approx(30.0 + half).epsilon(1e-12));
}

TEST_CASE("boring inequality sides") {
    CHECK(boring_lhs(0.5) == doctest::Approx(1.0 + std::pow(0.5, 5.4)).epsilon(1e-12));
    CHECK(boring_rhs(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // the majorant dominates the real left side wherever both matter
    for (double p : {0.01, 0.1, 0.2, 1.0 / 3.0})
        CHECK(boring_lhs_majorant(p) >= boring_lhs(p));
}
