#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gridcast/gridflow.hpp"
#include "gridcast/rng.hpp"
#include "support/simplex.hpp"

using namespace gridcast;

TEST_CASE("zero efficiency means no transfer") {
    const std::vector<double> p = {4.0, 8.0};
    const std::vector<double> e = {10.0, 2.0};
    const FlowSettlement s = settle(p, e, 0.0);
    CHECK(s.delta_w[0] == doctest::Approx(6.0));
    CHECK(s.delta_w[1] == doctest::Approx(0.0));
    CHECK(s.total_ongrid_w == doctest::Approx(6.0));
}

TEST_CASE("surplus feeds deficit through the credit pool") {
    const std::vector<double> p = {4.0, 8.0};
    const std::vector<double> e = {10.0, 2.0};
    const FlowSettlement s = settle(p, e, 0.5);
    CHECK(s.surplus_set == std::vector<int>{0});
    CHECK(s.deficit_set == std::vector<int>{1});
    CHECK(s.delta_w[0] == doctest::Approx(6.0));
    CHECK(s.delta_w[1] == doctest::Approx(-3.0));
    CHECK(s.ongrid_w[0] == 0.0);
    CHECK(s.ongrid_w[1] == doctest::Approx(3.0));
    CHECK(s.total_ongrid_w == doctest::Approx(3.0));
    CHECK(s.total_ongrid_w == doctest::Approx(ongrid_total_closed_form(p, e, 0.5)));
    CHECK(total_objective(s) == doctest::Approx(3.0));
    // Against the independent LP oracle as well.
    CHECK(s.total_ongrid_w ==
          doctest::Approx(testsupport::settlement_lp_optimum(p, e, 0.5)).epsilon(1e-9));
}

TEST_CASE("perfect pooling collapses to the aggregate balance") {
    Xoshiro256pp rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> p(n), e(n);
        for (auto& x : p) x = 10.0 * rng.next_double();
        for (auto& x : e) x = 10.0 * rng.next_double();
        const FlowSettlement s = settle(p, e, 1.0);
        const double want = std::max(0.0, std::accumulate(p.begin(), p.end(), 0.0) -
                                              std::accumulate(e.begin(), e.end(), 0.0));
        REQUIRE(s.total_ongrid_w == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("everyone surplus means zero on-grid power") {
    const std::vector<double> p = {0.0, 0.0, 0.0};
    const std::vector<double> e = {1.0, 1.0, 1.0};
    CHECK(settle(p, e, 0.3).total_ongrid_w == 0.0);
    const std::vector<double> p2 = {0.5, 0.2};
    const std::vector<double> e2 = {1.0, 0.4};
    CHECK(settle(p2, e2, 0.7).total_ongrid_w == 0.0);
}

TEST_CASE("per-node settlement equals the closed form on 10^4 random triples") {
    Xoshiro256pp rng(41);
    for (int rep = 0; rep < 10000; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        std::vector<double> p(n), e(n);
        for (auto& x : p) x = 12.0 * rng.next_double();
        for (auto& x : e) x = 12.0 * rng.next_double();
        const double theta = rng.next_double();
        const FlowSettlement s = settle(p, e, theta);
        const double closed = ongrid_total_closed_form(p, e, theta);
        REQUIRE(std::abs(s.total_ongrid_w - closed) <= 1e-12);
        REQUIRE(std::abs(total_objective(s) - s.total_ongrid_w) <= 1e-12);

        // c2/c3 and the tie rule.
        double credit = 0.0;
        bool unserved = false;
        for (int i = 0; i < n; ++i) {
            REQUIRE(s.delta_w[i] <= e[i] + 1e-12);
            credit += s.delta_w[i] > 0.0 ? theta * s.delta_w[i] : s.delta_w[i];
            if (s.ongrid_w[i] > 0.0) unserved = true;
            if (p[i] >= e[i]) REQUIRE(s.delta_w[i] <= 0.0);
        }
        REQUIRE(credit >= -1e-12);
        if (unserved) REQUIRE(std::abs(credit) <= 1e-12);
    }
}

TEST_CASE("the total is order-invariant even though the split is not") {
    Xoshiro256pp rng(43);
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        std::vector<double> p(n), e(n);
        for (auto& x : p) x = 10.0 * rng.next_double();
        for (auto& x : e) x = 10.0 * rng.next_double();
        const double theta = rng.next_double();

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
        std::vector<double> pp(n), pe(n);
        for (int i = 0; i < n; ++i) {
            pp[i] = p[perm[i]];
            pe[i] = e[perm[i]];
        }
        REQUIRE(std::abs(settle(p, e, theta).total_ongrid_w -
                         settle(pp, pe, theta).total_ongrid_w) <= 1e-12);
    }
}

TEST_CASE("raising the transfer efficiency never costs grid power") {
    Xoshiro256pp rng(47);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> p(n), e(n);
        for (auto& x : p) x = 10.0 * rng.next_double();
        for (auto& x : e) x = 10.0 * rng.next_double();
        double prev = settle(p, e, 0.0).total_ongrid_w;
        for (double theta : {0.2, 0.5, 0.9, 1.0}) {
            const double cur = settle(p, e, theta).total_ongrid_w;
            REQUIRE(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("invalid inputs are rejected") {
    const std::vector<double> p = {1.0};
    const std::vector<double> e = {1.0, 2.0};
    CHECK_THROWS_AS(settle(p, e, 0.5), std::invalid_argument);
    const std::vector<double> neg = {-1.0};
    const std::vector<double> e1 = {1.0};
    CHECK_THROWS_AS(settle(neg, e1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(settle(p, e1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(settle(p, e1, -0.1), std::invalid_argument);
}
