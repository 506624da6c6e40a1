#include <cmath>
#include <vector>

#include "doctest.h"
#include "gridcast/powerplan.hpp"
#include "gridcast/rng.hpp"
#include "support/waterfill_oracle.hpp"

using namespace gridcast;

TEST_CASE("single channel closes in one pass") {
    const std::vector<double> g = {1.0};
    const PowerAllocation a = waterfill(g, 2.0, 1.0);
    CHECK(a.water_level == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(a.power_w[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a.achieved_rate_bps == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.active == std::vector<int>{0});
}

TEST_CASE("two active channels share one water level") {
    const std::vector<double> g = {1.0, 4.0};
    const PowerAllocation a = waterfill(g, 4.0, 1.0);
    CHECK(a.water_level == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.power_w[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.power_w[1] == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(a.achieved_rate_bps == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(a.total_power_w == doctest::Approx(2.75).epsilon(1e-12));
}

TEST_CASE("weak channels get dropped and the level recomputed") {
    const std::vector<double> g = {1.0, 100.0};
    const PowerAllocation a = waterfill(g, 1.0, 1.0);
    CHECK(a.active == std::vector<int>{1});
    CHECK(a.water_level == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(a.power_w[0] == 0.0);
    CHECK(a.power_w[1] == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(a.achieved_rate_bps == doctest::Approx(1.0).epsilon(1e-12));
    // Cross-check against the independent bisection reference.
    CHECK(a.total_power_w ==
          doctest::Approx(testsupport::waterfill_bisection_power(g, 1.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("zero target is free; bad inputs throw") {
    const std::vector<double> g = {2.0, 3.0};
    const PowerAllocation a = waterfill(g, 0.0, 1.0);
    CHECK(a.total_power_w == 0.0);
    CHECK(a.achieved_rate_bps == 0.0);
    CHECK(a.active.empty());

    CHECK_THROWS_AS(waterfill({}, 1.0, 1.0), std::invalid_argument);
    const std::vector<double> bad = {1.0, -2.0};
    CHECK_THROWS_AS(waterfill(bad, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(waterfill(g, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("a thousand random instances hit the target and the optimum") {
    Xoshiro256pp rng(101);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        std::vector<double> g(n);
        for (auto& x : g) x = std::pow(10.0, -3.0 + 6.0 * rng.next_double());
        const double bandwidth = 1.0 + 9.0 * rng.next_double();
        const double target = bandwidth * (0.1 + 30.0 * rng.next_double());

        const PowerAllocation a = waterfill(g, target, bandwidth);
        REQUIRE(std::abs(a.achieved_rate_bps - target) / target <= 1e-9);
        for (double p : a.power_w) REQUIRE(p >= 0.0);
        // KKT shape: strictly positive power on active channels, level at or
        // below the inverse SNR elsewhere.
        for (int j = 0; j < n; ++j) {
            const bool active =
                std::find(a.active.begin(), a.active.end(), j) != a.active.end();
            if (active)
                REQUIRE(a.power_w[j] > 0.0);
            else
                REQUIRE(1.0 / g[j] >= a.water_level);
        }
        const double reference = testsupport::waterfill_bisection_power(g, target, bandwidth);
        REQUIRE(std::abs(a.total_power_w - reference) <=
                1e-6 * std::max(1e-12, reference));
    }
}

TEST_CASE("doubling the SNRs halves the power when all channels stay active") {
    const std::vector<double> g = {2.0, 2.0, 2.0};
    const std::vector<double> g2 = {4.0, 4.0, 4.0};
    const PowerAllocation a = waterfill(g, 6.0, 1.0);
    const PowerAllocation b = waterfill(g2, 6.0, 1.0);
    REQUIRE(a.active.size() == 3);
    REQUIRE(b.active.size() == 3);
    for (int j = 0; j < 3; ++j)
        CHECK(b.power_w[j] == doctest::Approx(a.power_w[j] / 2.0).epsilon(1e-12));
}

TEST_CASE("node power curve: closed form, monotone, convex") {
    CHECK(node_power_curve(3.0, 0.0, 1.0, 5) == std::vector<double>(5, 0.0));

    const auto curve = node_power_curve(1.0, 2.0, 1.0, 2);
    CHECK(curve[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(curve[1] == doctest::Approx(2.0).epsilon(1e-12));

    // The SNR enters as a pure 1/g factor.
    const auto a = node_power_curve(2.0, 5.0, 1.5, 6);
    const auto b = node_power_curve(8.0, 5.0, 1.5, 6);
    for (int i = 0; i < 6; ++i) CHECK(a[i] == doctest::Approx(4.0 * b[i]).epsilon(1e-12));

    Xoshiro256pp rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const double snr = std::pow(10.0, -2.0 + 4.0 * rng.next_double());
        const double target = 0.5 + 20.0 * rng.next_double();
        const auto c = node_power_curve(snr, target, 1.0, 8);
        for (int i = 1; i < 8; ++i) REQUIRE(c[i] < c[i - 1]);
        for (int i = 2; i < 8; ++i) REQUIRE(c[i] - c[i - 1] >= c[i - 1] - c[i - 2]);
    }

    CHECK_THROWS_AS(node_power_curve(0.0, 1.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(node_power_curve(-1.0, 1.0, 1.0, 3), std::invalid_argument);
}
