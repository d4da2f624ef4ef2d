#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dsim/scale_grid.hpp"

using namespace dsim;

TEST_CASE("geometric grid times are base times powers of alpha") {
    const ScaleGrid g(2.0, 1, 2);
    const auto t = grid_times(g);
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Catch::Approx(1.0));
    CHECK(t[1] == Catch::Approx(2.0));
    CHECK(t[2] == Catch::Approx(4.0));
}

TEST_CASE("geometric grid has M*T + 1 points and consecutive ratio alpha") {
    const ScaleGrid g(1.05, 6, 500);
    const auto t = grid_times(g);
    REQUIRE(t.size() == 3001);
    CHECK(t.back() == Catch::Approx(std::pow(1.05, 3000)).epsilon(1e-12));
    for (std::size_t k = 1; k < t.size(); ++k) {
        REQUIRE(t[k] > t[k - 1]);
        CHECK(t[k] / t[k - 1] == Catch::Approx(1.05).epsilon(1e-12));
    }
}

TEST_CASE("lambda is alpha^T") {
    const ScaleGrid g(1.05, 6, 1);
    const auto t = grid_times(g);
    CHECK(t[6] / t[0] == Catch::Approx(1.3400956406).epsilon(1e-9));
    CHECK(g.lambda() == Catch::Approx(std::pow(1.05, 6)).epsilon(1e-14));
}

TEST_CASE("grid construction rejects bad parameters") {
    CHECK_THROWS_AS(ScaleGrid(1.0, 6, 10), std::invalid_argument);
    CHECK_THROWS_AS(ScaleGrid(1.05, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(ScaleGrid(1.05, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleGrid(1.05, 6, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(EquispacedScaleGrid(1.0, 5, 3), std::invalid_argument);
}

TEST_CASE("interval_index classifies left-closed scale intervals") {
    CHECK(interval_index(1.0, 1.5) == 1);
    CHECK(interval_index(std::pow(1.05, 9), std::pow(1.05, 6)) == 2);
    CHECK(interval_index(std::pow(1.2, 3), 1.2) == 4); // boundary belongs to the upper interval
    CHECK(interval_index(0.99 * std::pow(1.2, 3), 1.2) == 3);
    CHECK_THROWS_AS(interval_index(0.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(interval_index(2.0, 1.0), std::domain_error);
}

TEST_CASE("grid samples align with scale intervals") {
    const ScaleGrid g(1.05, 6, 20);
    for (int k = 0; k < g.M; ++k) {
        CHECK(interval_index(g.time(static_cast<std::size_t>(k) * g.T), g.lambda()) == k + 1);
        CHECK(g.interval_of(static_cast<std::size_t>(k) * g.T) == k + 1);
    }
    // every sample of interval k sits in A_{k+1}
    for (std::size_t k = 0; k + 1 < g.size(); ++k)
        CHECK(g.interval_of(k) == static_cast<long long>(k) / g.T + 1);
    // non-unit base falls back to time-based classification
    const ScaleGrid shifted(1.05, 6, 4, 2.0);
    CHECK(shifted.interval_of(0) == interval_index(2.0, shifted.lambda()));
}

TEST_CASE("equispaced grid places T uniform samples per interval") {
    const EquispacedScaleGrid g(1.2, 5, 3);
    REQUIRE(g.size() == 15);
    CHECK(g.time(0) == Catch::Approx(1.0));
    // within interval 0: 1 + q*(lambda-1)/T
    for (int q = 0; q < 5; ++q)
        CHECK(g.time(q) == Catch::Approx(1.0 + q * 0.2 / 5).epsilon(1e-14));
    // strictly increasing, below the interval's right edge
    for (std::size_t k = 1; k < g.size(); ++k) REQUIRE(g.time(k) > g.time(k - 1));
    for (std::size_t k = 0; k < g.size(); ++k) {
        const long long i = g.interval_of(k);
        CHECK(g.time(k) >= std::pow(1.2, static_cast<double>(i - 1)) * (1.0 - 1e-15));
        CHECK(g.time(k) < std::pow(1.2, static_cast<double>(i)));
    }
}

TEST_CASE("equispaced grid scales exactly between intervals") {
    const EquispacedScaleGrid g(1.2, 5, 4);
    for (std::size_t k = 0; k + 5 < g.size(); ++k)
        CHECK(g.time(k + 5) / g.time(k) == Catch::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("quasi-Lamperti transform pair") {
    SECTION("forward on a constant sequence") {
        const std::vector<double> y(5, 1.0);
        const auto x = lamperti_forward(y, 0.8, 1.05);
        CHECK(x[0] == 1.0);
        CHECK(x[2] == Catch::Approx(std::pow(1.05, 1.6)).epsilon(1e-14));
        CHECK(x[2] == Catch::Approx(1.0811923).epsilon(1e-6));
    }
    SECTION("forward on the zero sequence") {
        const std::vector<double> y(4, 0.0);
        for (double v : lamperti_forward(y, 1.3, 2.0)) CHECK(v == 0.0);
    }
    SECTION("inverse undoes the scaling") {
        const std::vector<double> x{0.0, 6.0};
        CHECK(lamperti_inverse(x, 0.5, 4.0)[1] == Catch::Approx(3.0).epsilon(1e-14));
    }
    SECTION("inverse of an exactly scale-invariant sequence is constant") {
        std::vector<double> x(8);
        for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::pow(1.05, 0.8 * static_cast<double>(n));
        for (double v : lamperti_inverse(x, 0.8, 1.05))
            CHECK(v == Catch::Approx(1.0).epsilon(1e-13));
    }
    SECTION("round-trip identity") {
        std::vector<double> y{0.3, -1.7, 2.9, 0.0, 5.5, -0.02};
        const auto back = lamperti_inverse(lamperti_forward(y, 0.73, 1.31), 0.73, 1.31);
        for (std::size_t n = 0; n < y.size(); ++n) {
            if (y[n] == 0.0) CHECK(back[n] == 0.0);
            else CHECK(back[n] == Catch::Approx(y[n]).epsilon(1e-14));
        }
    }
}

TEST_CASE("sampled path validation") {
    const ScaleGrid g(1.05, 6, 2);
    SampledPath p{GridVariant{g}, std::vector<double>(g.size(), 0.5), PathMeta{"test", 1, {}, {}}};
    CHECK_NOTHROW(p.validate());
    p.values.pop_back();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.values.push_back(std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_NOTHROW(p.scale_grid());
    CHECK_THROWS_AS(p.equispaced_grid(), std::domain_error);
}
