#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_problems.hpp"

#include <cmath>

using namespace splitdde;
using splitdde::testing::example;
using splitdde::testing::undelayed;

TEST_CASE("fit_order recovers exact power laws") {
    const std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
    std::vector<double> lin;
    std::vector<double> quad;
    for (double h : hs) {
        lin.push_back(3.0 * h);
        quad.push_back(0.1 * h * h);
    }
    CHECK(fit_order(hs, lin) == doctest::Approx(1.0));
    CHECK(fit_order(hs, quad) == doctest::Approx(2.0));
    for (double p : pairwise_orders(hs, quad)) CHECK(p == doctest::Approx(2.0));
    CHECK(std::isnan(fit_order(hs, {0.0, 0.0, 0.0, 0.0})));
}

TEST_CASE("derivative sign changes") {
    CHECK(derivative_sign_changes({}) == 0);
    CHECK(derivative_sign_changes({1, 2, 3}) == 0);
    CHECK(derivative_sign_changes({1, 2, 1}) == 1);
    CHECK(derivative_sign_changes({1, 2, 2, 1, 3}) == 2);
    CHECK(derivative_sign_changes({0, 1, 0, 1, 0}) == 3);
}

TEST_CASE("first-order convergence on the nonautonomous distributed example") {
    const ConvergenceReport rep = convergence_study(example("dist-nonauto"), 1.0, {8, 16, 32, 64, 128}, 2);
    CHECK(rep.errors_strictly_decrease());
    CHECK(rep.product_order >= 0.8);
    CHECK(rep.product_order <= 1.2);
    CHECK(rep.head_order >= 0.8);
    CHECK(rep.head_order <= 1.2);
    for (std::size_t i = 0; i < rep.steps.size(); ++i) CHECK(rep.head_errors[i] <= rep.product_errors[i]);
}

TEST_CASE("without delay every error is at round-off") {
    const ConvergenceReport rep = convergence_study(undelayed(-1.0), 1.0, {8, 16, 32});
    CHECK(rep.exact);
    CHECK(rep.summary().find("exact") == 0);
}

TEST_CASE("convergence studies validate their inputs") {
    const ProblemSpec spec = example("dist-auto");
    CHECK_THROWS_AS((void)convergence_study(spec, 1.0, {8, 16}), ConfigError);
    CHECK_THROWS_AS((void)convergence_study(spec, 1.0, {8, 32, 16}), ConfigError);
    CHECK_THROWS_AS((void)convergence_study(spec, 1.0, {8, 16, 32}, 1, OracleConfig{1.0 / 100}), ConfigError);
}

TEST_CASE("local error is second order") {
    const LocalErrorReport rep =
        local_error_study(example("dist-auto"), {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128});
    const double head[] = {0.0009565429627911293, 0.000241617604938682, 6.071851425493158e-05,
                           1.5219130484078747e-05};
    for (std::size_t i = 0; i < 4; ++i) CHECK(rep.head_errors[i] == doctest::Approx(head[i]).epsilon(1e-6));
    REQUIRE(rep.ratios.size() == 3);
    for (double r : rep.ratios) {
        CHECK(r >= 3.5);
        CHECK(r <= 4.5);
    }
}

TEST_CASE("the trapezoid history error approaches the continuous L1 error") {
    // Continuous product-norm errors at h = 1/16 and 1/128.
    const double continuous[] = {0.0038067416755316946, 6.083702256419802e-05};
    double previous = INFINITY;
    for (int q : {1, 2, 8, 32}) {
        const LocalErrorReport rep = local_error_study(example("dist-auto"), {1.0 / 16, 1.0 / 128}, q);
        const double gap = std::abs(rep.product_errors[0] - continuous[0]) / continuous[0];
        CHECK(gap < previous);
        previous = gap;
        if (q == 32) {
            CHECK(gap < 0.03);
            CHECK(rep.product_errors[1] == doctest::Approx(continuous[1]).epsilon(0.03));
        }
    }
}

TEST_CASE("error constants scale linearly with the data") {
    const ScalingReport rep = error_constant_scaling(example("dist-nonauto"), 1.0 / 32);
    CHECK(rep.pass);
    CHECK(rep.errors[0] == 0.0);
    CHECK(rep.errors[2] == doctest::Approx(2.0 * rep.errors[1]).epsilon(1e-10));
    CHECK(rep.errors[3] == doctest::Approx(4.0 * rep.errors[1]).epsilon(1e-10));
}

TEST_CASE("long-time behaviour of the registered examples") {
    SUBCASE("nonautonomous distributed delay oscillates") {
        const LongTimeSummary sum = long_time_run(example("dist-nonauto"), 50.0, 6400);
        CHECK(sum.sign_changes == 16);
        CHECK(sum.min_head == doctest::Approx(0.002686289867915059).epsilon(1e-9));
        CHECK(sum.max_head == doctest::Approx(1.0488096180737001).epsilon(1e-9));
    }
    SUBCASE("autonomous distributed delay does not") {
        const LongTimeSummary sum = long_time_run(example("dist-auto"), 50.0, 6400);
        CHECK(sum.sign_changes == 2);
        CHECK(sum.max_head == doctest::Approx(1.2633127871145402).epsilon(1e-9));
    }
    SUBCASE("point delays") {
        CHECK(long_time_run(example("point-auto"), 50.0, 6400).sign_changes == 6);
        CHECK(long_time_run(example("point-nonauto"), 50.0, 6400).sign_changes == 16);
    }
    SUBCASE("autonomous and nonautonomous trajectories separate") {
        const LongTimeSummary a = long_time_run(example("dist-auto"), 50.0, 6400);
        const LongTimeSummary b = long_time_run(example("dist-nonauto"), 50.0, 6400);
        CHECK(sup_difference(a.trajectory, b.trajectory) == doctest::Approx(1.2546606713760362).epsilon(1e-9));
    }
    SUBCASE("without delay the head decays monotonically") {
        const LongTimeSummary sum = long_time_run(undelayed(-1.0), 50.0, 6400);
        CHECK(sum.sign_changes == 0);
        CHECK(sum.monotone_decreasing);
    }
    SUBCASE("zero data stays zero") {
        const LongTimeSummary sum = long_time_run(example("dist-nonauto").scaled(0.0), 10.0, 640);
        CHECK(sum.min_head == 0.0);
        CHECK(sum.max_head == 0.0);
    }
}

TEST_CASE("errors shrink with n on every registered example") {
    for (const std::string& id : example_ids()) {
        CAPTURE(id);
        const ConvergenceReport rep = convergence_study(example(id), 1.0, {8, 16, 32, 64});
        CHECK(rep.errors_strictly_decrease());
    }
}
