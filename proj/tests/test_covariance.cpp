#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dsim/covariance.hpp"
#include "oracles.hpp"

using namespace dsim;

namespace {
SeasonalCovariance from_spec(const oracle::TableSpec& t) {
    return SeasonalCovariance(t.H, t.alpha, t.T, t.r0, t.r1);
}
} // namespace

TEST_CASE("table construction rejects degenerate entries") {
    CHECK_THROWS_AS(SeasonalCovariance(0.8, 1.05, 2, {1.0, -1.0}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SeasonalCovariance(0.8, 1.05, 2, {1.0, 1.0}, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SeasonalCovariance(0.0, 1.05, 2, {1.0, 1.0}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SeasonalCovariance(0.8, 0.99, 2, {1.0, 1.0}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SeasonalCovariance(0.8, 1.05, 3, {1.0, 1.0}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("one-step ratio h") {
    const auto c = sbm_seasonal(0.8, 1.05, 6);
    CHECK(h_ratio(c, 0) == 1.0);
    CHECK(h_ratio(c, 3) == 1.0);
    CHECK(h_ratio(c, 5) == Catch::Approx(std::pow(1.05, 1.8)).epsilon(1e-13));
    CHECK(h_ratio(c, 5) == Catch::Approx(1.0917941).epsilon(1e-6));
    for (int i = 0; i < 6; ++i) CHECK(h_ratio(c, i + 6) == h_ratio(c, i));
    CHECK_THROWS_AS(h_ratio(c, -1), std::domain_error);
}

TEST_CASE("cumulative ratio htilde") {
    const auto c = sbm_seasonal(0.8, 1.05, 6);
    CHECK(h_tilde(c, -1) == 1.0);
    CHECK(h_tilde(c, 5) == Catch::Approx(std::pow(1.05, 1.8)).epsilon(1e-13));
    CHECK(h_tilde(c, 11) == Catch::Approx(std::pow(1.05, 3.6)).epsilon(1e-13));
    CHECK_THROWS_AS(h_tilde(c, -2), std::domain_error);

    // period decomposition htilde(kT+i) = htilde(T-1)^k htilde(i), exact by construction
    const auto t = oracle::random_table(31, true);
    const auto rc = from_spec(t);
    for (int k = 0; k <= 3; ++k)
        for (int i = 0; i < t.T; ++i)
            CHECK(h_tilde(rc, static_cast<long long>(k) * t.T + i) ==
                  Catch::Approx(pow_int(h_tilde(rc, t.T - 1), k) * h_tilde(rc, i)).epsilon(1e-14));
}

TEST_CASE("lattice covariance closed form") {
    const auto c = sbm_seasonal(0.8, 1.05, 6);
    SECTION("zero lag returns the variance table") {
        for (int n = 0; n < 6; ++n) REQUIRE(covariance_dsim(c, n, 0) == c.r0[n]);
        CHECK(covariance_dsim(c, 7, 0) ==
              Catch::Approx(c.r0[1] * pow_scale(c.lambda(), 1.6)).epsilon(1e-13));
    }
    SECTION("pinned values") {
        CHECK(covariance_dsim(c, 0, 6) == Catch::Approx(std::pow(1.05, 5.4)).epsilon(1e-12));
        CHECK(covariance_dsim(c, 0, 6) == Catch::Approx(1.3014342).epsilon(1e-6));
        CHECK(covariance_dsim(c, 6, -6) == Catch::Approx(std::pow(1.05, 5.4)).epsilon(1e-12));
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(covariance_dsim(c, -1, 2), std::domain_error);
        CHECK_THROWS_AS(covariance_dsim(c, 2, -3), std::domain_error);
    }
    SECTION("matches the brute-force lattice oracle") {
        for (long long n = 0; n < 6; ++n)
            for (long long tau = -18; tau <= 30; ++tau) {
                if (n + tau < 0) continue;
                const double want = oracle::sbm_lattice_cov(0.8, 1.05, 6, n + tau, n);
                CHECK(covariance_dsim(c, n, tau) == Catch::Approx(want).epsilon(1e-12));
            }
    }
}

TEST_CASE("covariance identities hold on random admissible tables") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const auto t = oracle::random_table(seed, true);
        const auto c = from_spec(t);
        const double lam2h = pow_scale(c.lambda(), 2.0 * c.H);
        for (long long n = 0; n <= 2 * t.T; ++n)
            for (long long tau = -static_cast<long long>(t.T); tau <= 2 * t.T; ++tau) {
                if (n + tau < 0) continue;
                const double base = covariance_dsim(c, n, tau);
                // scale invariance across one period
                CHECK(covariance_dsim(c, n + t.T, tau) == Catch::Approx(lam2h * base).epsilon(1e-12));
                // symmetry in the two sample indices
                CHECK(covariance_dsim(c, n + tau, -tau) == Catch::Approx(base).epsilon(1e-12));
            }
        // negative whole-plus-part lags against the positive-lag form:
        // R_n(-kT+v) = alpha^(-2kTH) R_{n+v}(kT-v)
        for (long long k = 1; k <= 2; ++k)
            for (long long v = 0; v < t.T; ++v) {
                const long long n = k * t.T + 2; // keeps n - kT + v >= 0
                const double lhs = covariance_dsim(c, n, -k * t.T + v);
                const double rhs = pow_scale(c.alpha, -2.0 * static_cast<double>(k * t.T) * c.H) *
                                   covariance_dsim(c, n + v, k * t.T - v);
                CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
            }
    }
}

TEST_CASE("stationary-type counterpart covariance") {
    const auto c = sbm_seasonal(0.8, 1.05, 6);
    for (int n = 0; n < 6; ++n)
        CHECK(covariance_pc(c, n, 0) ==
              Catch::Approx(pow_scale(c.alpha, -1.6 * n) * c.r0[n]).epsilon(1e-13));
    // T-periodic in n, including lags that reach below the origin
    for (long long n = 0; n < 6; ++n)
        for (long long tau : {-9LL, -3LL, 0LL, 4LL, 13LL})
            CHECK(covariance_pc(c, n, tau) ==
                  Catch::Approx(covariance_pc(c, n + 6, tau)).epsilon(1e-12));
}

TEST_CASE("admissibility test") {
    SECTION("the Brownian-derived table is admissible with the pinned margin") {
        const auto c = sbm_seasonal(0.8, 1.05, 6);
        const auto rep = check_admissible(c);
        CHECK(rep.admissible);
        REQUIRE(rep.margins.size() == 6);
        CHECK(rep.margins[5] ==
              Catch::Approx(std::pow(1.05, 21.8) - std::pow(1.05, 20.8)).epsilon(1e-12));
        CHECK_FALSE(rep.first_violation.has_value());
    }
    SECTION("constructed violation is caught at its index") {
        const SeasonalCovariance c(0.5, 1.1, 2, {1.0, 1.0}, {2.0, 0.1});
        const auto rep = check_admissible(c);
        CHECK_FALSE(rep.admissible);
        REQUIRE(rep.first_violation.has_value());
        CHECK(*rep.first_violation == 0);
        CHECK(rep.margins[0] == Catch::Approx(-3.0));
        CHECK_FALSE(admissible(c));
    }
    SECTION("equality is admitted") {
        const SeasonalCovariance c(0.7, 1.2, 2, {1.0, 4.0}, {2.0, 1.0});
        const auto rep = check_admissible(c);
        CHECK(rep.margins[0] == 0.0);
        CHECK(rep.admissible);
    }
    SECTION("seeded sweep agrees with the generator's intent") {
        for (std::uint64_t s = 1; s <= 30; ++s) {
            const auto good = oracle::random_table(1000 + s, true);
            CHECK(admissible(from_spec(good)));
            const auto bad = oracle::random_table(2000 + s, false);
            const auto rep = check_admissible(from_spec(bad));
            CHECK_FALSE(rep.admissible);
            REQUIRE(rep.first_violation.has_value());
            CHECK(*rep.first_violation == bad.violation_j);
        }
    }
}

TEST_CASE("Markov product identity") {
    SECTION("holds for the lattice covariance of admissible tables") {
        for (std::uint64_t s : {11ULL, 12ULL, 13ULL}) {
            const auto c = from_spec(oracle::random_table(s, true));
            std::vector<long long> idx;
            for (long long n = 0; n <= 4 * c.T; ++n) idx.push_back(n);
            CHECK(markov_product_check_dsim(c, idx) < 1e-12);
        }
    }
    SECTION("holds for Brownian covariance") {
        const std::vector<double> times{0.5, 1.0, 2.7, 3.1, 10.0};
        const std::vector<long long> idx{0, 1, 2, 3, 4};
        const double defect = markov_product_check(
            [&](long long a, long long b) { return oracle::brownian_cov(times[a], times[b]); }, idx);
        CHECK(defect < 1e-12);
    }
    SECTION("detects the non-Markov fractional covariance") {
        const std::vector<double> times{1.0, 2.0, 3.0};
        const std::vector<long long> idx{0, 1, 2};
        const double defect = markov_product_check(
            [&](long long a, long long b) { return oracle::fbm_cov(0.7, times[a], times[b]); }, idx);
        CHECK(defect > 1e-3);
        CHECK(defect == Catch::Approx(0.0415).margin(0.002));
    }
}

TEST_CASE("monotone factorization tracks admissibility") {
    SECTION("nondecreasing along the lattice for admissible tables") {
        for (std::uint64_t s : {21ULL, 22ULL}) {
            const auto c = from_spec(oracle::random_table(s, true));
            double prev = borisov_g(c, 0) / borisov_k(c, 0);
            REQUIRE(prev > 0.0);
            for (long long n = 1; n <= 4 * c.T; ++n) {
                const double cur = borisov_g(c, n) / borisov_k(c, n);
                REQUIRE(cur > 0.0);
                CHECK(cur >= prev * (1.0 - 1e-12));
                prev = cur;
            }
        }
    }
    SECTION("decreases across a planted violation") {
        const auto bad = oracle::random_table(77, false);
        const auto c = from_spec(bad);
        const long long j = bad.violation_j;
        const double before = borisov_g(c, j) / borisov_k(c, j);
        const double after = borisov_g(c, j + 1) / borisov_k(c, j + 1);
        CHECK(after < before);
    }
}

TEST_CASE("continuous-time Brownian-derived covariance") {
    const double lam = std::pow(1.05, 6);
    SECTION("H = 1/2 is plain min") {
        CHECK(sbm_cov(0.5, lam, 2.0, 3.5) == Catch::Approx(2.0).epsilon(1e-14));
        CHECK(sbm_cov(0.5, lam, 7.0, 1.2) == Catch::Approx(1.2).epsilon(1e-14));
    }
    SECTION("pinned lattice values") {
        CHECK(sbm_cov(0.8, lam, 1.0, 1.0) == Catch::Approx(std::pow(1.05, 3.6)).epsilon(1e-12));
        CHECK(sbm_cov(0.8, lam, std::pow(1.05, 6), std::pow(1.05, 5)) ==
              Catch::Approx(std::pow(1.05, 10.4)).epsilon(1e-12));
    }
    SECTION("times below 1 are rejected") {
        CHECK_THROWS_AS(sbm_cov(0.8, lam, 0.5, 2.0), std::domain_error);
    }
    SECTION("random drift adds a same-interval term") {
        const double t = std::pow(1.05, 2), s = std::pow(1.05, 3); // both in the first interval
        const double base = sbm_cov(0.8, lam, t, s, false);
        CHECK(sbm_cov(0.8, lam, t, s, true) ==
              Catch::Approx(base + pow_scale(lam, 1.6)).epsilon(1e-13));
        // distinct intervals: no extra term
        const double u = std::pow(1.05, 8);
        CHECK(sbm_cov(0.8, lam, t, u, true) == Catch::Approx(sbm_cov(0.8, lam, t, u, false)));
    }
}

TEST_CASE("Brownian-derived seasonal table") {
    const auto c = sbm_seasonal(0.8, 1.05, 6);
    CHECK(c.r0[0] == Catch::Approx(1.1920143).epsilon(1e-6));
    CHECK(c.r1[5] == Catch::Approx(std::pow(1.05, 10.4)).epsilon(1e-12));
    CHECK(c.r1[5] == Catch::Approx(1.6609965).epsilon(1e-6));
    for (int j = 0; j + 1 < 6; ++j) CHECK(c.r1[j] == c.r0[j]);

    const auto flat = sbm_seasonal(0.5, 1.3, 4);
    for (int n = 0; n < 4; ++n) {
        CHECK(flat.r0[n] == Catch::Approx(std::pow(1.3, n)).epsilon(1e-13));
        CHECK(h_ratio(flat, n) == Catch::Approx(1.0).epsilon(1e-14));
    }

    for (double H : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
        CHECK(admissible(sbm_seasonal(H, 1.05, 6)));
}

TEST_CASE("AR(1)-type variance table") {
    SECTION("T = 1 reduces to the AR(1) stationary variance") {
        const double H = 0.8, alpha = 1.3, phi = 0.6;
        const std::vector<double> theta{pow_scale(alpha, H) * phi};
        const std::vector<double> sigma{1.0};
        const auto r0 = dsiar1_r0(theta, sigma, H, alpha, 1);
        CHECK(r0[0] == Catch::Approx(1.0 / (1.0 - phi * phi)).epsilon(1e-12));
    }
    SECTION("solution satisfies the periodic variance recursion, wrap included") {
        const auto m = oracle::random_causal_dsiar1(42);
        const auto r0 = dsiar1_r0(m.theta, m.sigma, m.H, m.alpha, m.T);
        const double damp = pow_scale(m.alpha, -2.0 * m.H);
        std::vector<double> v(m.T);
        for (int j = 0; j < m.T; ++j) v[j] = pow_scale(m.alpha, -2.0 * j * m.H) * r0[j];
        for (int j = 0; j < m.T; ++j) {
            const int nx = (j + 1) % m.T;
            const double want = damp * m.theta[j] * m.theta[j] * v[j] + m.sigma[nx] * m.sigma[nx];
            CHECK(v[nx] == Catch::Approx(want).epsilon(1e-12));
        }
    }
    SECTION("rejects zero coefficients and non-causal products") {
        CHECK_THROWS_WITH(dsiar1_r0(std::vector<double>{0.5, 0.0}, std::vector<double>{1.0, 1.0},
                                    0.8, 1.05, 2),
                          Catch::Matchers::ContainsSubstring("theta[1]"));
        CHECK_THROWS_WITH(dsiar1_r0(std::vector<double>{3.0, 2.0}, std::vector<double>{1.0, 1.0},
                                    0.2, 1.05, 2),
                          Catch::Matchers::ContainsSubstring("causal"));
    }
}

TEST_CASE("AR(1)-type covariance product form") {
    const DsiarModel m(0.6, 1.3, 2, 1, {{0.5, 0.4}}, {1.0, 1.0});
    const auto table = dsiar1_seasonal(m);
    const auto r0 = dsiar1_r0(m.theta[0], m.sigma, m.H, m.alpha, m.T);

    SECTION("empty products return the variance") {
        for (int n = 0; n < m.T; ++n) CHECK(dsiar1_covariance(m, n, 0, 0) == r0[n]);
    }
    SECTION("constant coefficients give powers of the constant") {
        const std::vector<double> theta{0.7, 0.7};
        const std::vector<double> var{1.0, 2.0};
        for (long long k = 0; k <= 3; ++k)
            for (long long v = 0; v < 2; ++v)
                CHECK(dsiar1_covariance(theta, var, 1, k, v) ==
                      Catch::Approx(std::pow(0.7, static_cast<double>(2 * k + v)) * var[1])
                          .epsilon(1e-13));
    }
    SECTION("agrees with the table-driven lattice covariance") {
        for (long long n = 0; n < m.T; ++n)
            for (long long k = 0; k <= 5; ++k)
                for (long long v = 0; v < m.T; ++v) {
                    const double want = covariance_dsim(table, n, k * m.T + v);
                    CHECK(dsiar1_covariance(m, n, k, v) == Catch::Approx(want).epsilon(1e-12));
                }
    }
    SECTION("lag-one column equals theta scaled variances") {
        for (int j = 0; j < m.T; ++j)
            CHECK(table.r1[j] == Catch::Approx(m.theta[0][j] * table.r0[j]).epsilon(1e-14));
    }
    SECTION("random causal models produce admissible tables") {
        for (std::uint64_t s = 1; s <= 20; ++s) {
            const auto spec = oracle::random_causal_dsiar1(5000 + s);
            const DsiarModel rm(spec.H, spec.alpha, spec.T, 1, {spec.theta}, spec.sigma);
            CHECK(admissible(dsiar1_seasonal(rm)));
        }
    }
    SECTION("p != 1 is rejected") {
        const DsiarModel m2(0.6, 1.3, 2, 2, {{0.3, 0.2}, {0.1, 0.1}}, {1.0, 1.0});
        CHECK_THROWS_AS(dsiar1_seasonal(m2), std::domain_error);
        CHECK_THROWS_AS(dsiar1_covariance(m2, 0, 0, 0), std::domain_error);
    }
}
