#pragma once

// Closed-form covariance of wide-sense Markov sequences with discrete scale
// invariance, sampled at t_n = alpha^n with T samples per scale interval.
//
// The whole second-order structure is generated by one period of variances
// r0[n] = R_n(0) and one-step covariances r1[n] = R_n(1), n = 0..T-1, through
//   h(alpha^j)      = r1[j mod T] / r0[j mod T],
//   htilde(alpha^r) = prod_{j=0..r} h(alpha^j),          htilde(alpha^-1) = 1,
//   R_n(kT + v)     = htilde(alpha^(T-1))^k * prod_{j=n..n+v-1} h(alpha^j) * R_n(0),
// extended across intervals by R_{n+T}(tau) = lambda^(2H) R_n(tau) and to
// negative lags by symmetry R_n(tau) = R_{n+tau}(-tau).

#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsim/models.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/util.hpp"

namespace dsim {

struct SeasonalCovariance {
    double H = 0.0;
    double alpha = 0.0;
    int T = 0;
    std::vector<double> r0; // R_n(0), n = 0..T-1
    std::vector<double> r1; // R_n(1), n = 0..T-1

    SeasonalCovariance(double H_, double alpha_, int T_,
                       std::vector<double> r0_, std::vector<double> r1_)
        : H(H_), alpha(alpha_), T(T_), r0(std::move(r0_)), r1(std::move(r1_)) {
        if (!(H > 0.0)) throw std::invalid_argument("SeasonalCovariance: H must be positive");
        if (!(alpha > 1.0)) throw std::invalid_argument("SeasonalCovariance: alpha must exceed 1");
        if (T < 1) throw std::invalid_argument("SeasonalCovariance: T must be >= 1");
        if (r0.size() != static_cast<std::size_t>(T) || r1.size() != static_cast<std::size_t>(T))
            throw std::invalid_argument("SeasonalCovariance: r0 and r1 must each have T entries");
        for (int j = 0; j < T; ++j) {
            if (!(r0[j] > 0.0) || !std::isfinite(r0[j]))
                throw std::invalid_argument("SeasonalCovariance: r0[" + std::to_string(j) +
                                            "] must be positive and finite");
            if (r1[j] == 0.0 || !std::isfinite(r1[j]))
                throw std::invalid_argument("SeasonalCovariance: r1[" + std::to_string(j) +
                                            "] must be nonzero and finite");
        }
    }

    double lambda() const { return pow_scale(alpha, T); }
};

// h(alpha^j) = R_{j mod T}(1) / R_{j mod T}(0), read T-periodically.
inline double h_ratio(const SeasonalCovariance& c, long long j) {
    if (j < 0) throw std::domain_error("h_ratio: j must be >= 0");
    const int jj = static_cast<int>(j % c.T);
    return c.r1[jj] / c.r0[jj];
}

// htilde over one full period: prod_{j=0..T-1} h(alpha^j).
inline double h_tilde_period(const SeasonalCovariance& c) {
    double p = 1.0;
    for (int j = 0; j < c.T; ++j) p *= c.r1[j] / c.r0[j];
    return p;
}

// htilde(alpha^r) = prod_{j=0..r} h(alpha^j); r = -1 gives the empty product.
// Computed as htilde_period^k * prefix(i) for r = kT + i, so the periodic
// decomposition holds exactly.
inline double h_tilde(const SeasonalCovariance& c, long long r) {
    if (r < -1) throw std::domain_error("h_tilde: r must be >= -1");
    if (r == -1) return 1.0;
    const long long k = r / c.T;
    const int i = static_cast<int>(r % c.T);
    double prefix = 1.0;
    for (int j = 0; j <= i; ++j) prefix *= c.r1[j] / c.r0[j];
    return pow_int(h_tilde_period(c), k) * prefix;
}

// R_n(tau) on the nonnegative sample lattice (n >= 0, n + tau >= 0).
inline double covariance_dsim(const SeasonalCovariance& c, long long n, long long tau) {
    if (n < 0) throw std::domain_error("covariance_dsim: n must be >= 0");
    if (n + tau < 0) throw std::domain_error("covariance_dsim: n + tau must be >= 0");
    const long long a = std::min(n, n + tau); // symmetry: R_n(tau) = R_{n+tau}(-tau)
    const long long d = std::llabs(tau);
    const long long r = a / c.T;
    const int i = static_cast<int>(a % c.T);
    const long long k = d / c.T;
    const int v = static_cast<int>(d % c.T);
    double prod = 1.0;
    for (int j = 0; j < v; ++j) {
        const int jj = (i + j) % c.T;
        prod *= c.r1[jj] / c.r0[jj];
    }
    const double base = pow_int(h_tilde_period(c), k) * prod * c.r0[i];
    if (r == 0) return base;
    return pow_scale(c.lambda(), 2.0 * static_cast<double>(r) * c.H) * base;
}

// Covariance of the stationary-type counterpart Y(n) = alpha^(-nH) X(alpha^n):
// kappa(n, tau) = alpha^(-(2n+tau)H) R_n(tau), T-periodic in n and defined for
// every integer lag via a period shift (R_{n+T} = lambda^(2H) R_n).
inline double covariance_pc(const SeasonalCovariance& c, long long n, long long tau) {
    if (n < 0) throw std::domain_error("covariance_pc: n must be >= 0");
    long long shift = 0;
    if (n + tau < 0) shift = (-(n + tau) + c.T - 1) / c.T;
    const long long ns = n + shift * c.T;
    return pow_scale(c.alpha, -static_cast<double>(2 * ns + tau) * c.H) *
           covariance_dsim(c, ns, tau);
}

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<double> margins; // r0[j] r0[j+1] - r1[j]^2, with r0[T] = alpha^(2TH) r0[0]
    std::optional<int> first_violation;
};

// A seasonal table generates a positive-semidefinite Markov covariance iff
// r1[j]^2 <= r0[j] r0[j+1] for every j, closing the period with
// r0[T] = alpha^(2TH) r0[0].
inline AdmissibilityReport check_admissible(const SeasonalCovariance& c) {
    AdmissibilityReport rep;
    rep.margins.resize(c.T);
    rep.admissible = true;
    for (int j = 0; j < c.T; ++j) {
        const double next =
            (j + 1 < c.T) ? c.r0[j + 1]
                          : pow_scale(c.alpha, 2.0 * c.T * c.H) * c.r0[0];
        rep.margins[j] = c.r0[j] * next - c.r1[j] * c.r1[j];
        if (rep.margins[j] < 0.0 && !rep.first_violation) {
            rep.admissible = false;
            rep.first_violation = j;
        }
    }
    return rep;
}

inline bool admissible(const SeasonalCovariance& c) { return check_admissible(c).admissible; }

// Factorization R(t_a, t_b) = G(min) K(max) of the Markov covariance:
// K(alpha^n) = htilde(alpha^(n-1)) with K(1) = 1, G(alpha^n) = R_n(0) / K(alpha^n).
// G/K nondecreasing along the lattice is equivalent to admissibility.
inline double borisov_k(const SeasonalCovariance& c, long long n) {
    if (n < 0) throw std::domain_error("borisov_k: n must be >= 0");
    return h_tilde(c, n - 1);
}

inline double borisov_g(const SeasonalCovariance& c, long long n) {
    if (n < 0) throw std::domain_error("borisov_g: n must be >= 0");
    const long long r = n / c.T;
    const int i = static_cast<int>(n % c.T);
    const double var = pow_scale(c.lambda(), 2.0 * static_cast<double>(r) * c.H) * c.r0[i];
    return var / borisov_k(c, n);
}

// Largest normalized defect of the Markov product identity
// R(a,b) R(b,c) = R(b,b) R(a,c) over ordered triples from `idx`;
// R is any symmetric covariance callable on index pairs.
template <class Cov>
double markov_product_check(Cov&& R, std::span<const long long> idx) {
    if (idx.size() < 3) throw std::domain_error("markov_product_check: need at least 3 indices");
    double worst = 0.0;
    for (std::size_t ia = 0; ia + 2 < idx.size(); ++ia)
        for (std::size_t ib = ia + 1; ib + 1 < idx.size(); ++ib)
            for (std::size_t ic = ib + 1; ic < idx.size(); ++ic) {
                const double lhs = R(idx[ia], idx[ib]) * R(idx[ib], idx[ic]);
                const double rhs = R(idx[ib], idx[ib]) * R(idx[ia], idx[ic]);
                const double scale = std::max(std::abs(lhs), std::abs(rhs));
                if (scale == 0.0) continue;
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
    return worst;
}

inline double markov_product_check_dsim(const SeasonalCovariance& c, std::span<const long long> idx) {
    return markov_product_check(
        [&c](long long a, long long b) { return covariance_dsim(c, a, b - a); }, idx);
}

// Piecewise-rescaled Brownian covariance in closed form: for t in A_n, s in A_m
// (intervals of lambda), Cov = lambda^((n+m)(H-1/2)) min(t, s); a random
// per-interval drift adds lambda^(2n(H-1/2)) lambda^n when n == m.
inline double sbm_cov(double H, double lambda, double t, double s, bool random_drift = false) {
    const long long n = interval_index(t, lambda);
    const long long m = interval_index(s, lambda);
    if (n < 1 || m < 1) throw std::domain_error("sbm_cov: times must lie at or above 1");
    const double Hp = H - 0.5;
    double cov = pow_scale(lambda, static_cast<double>(n + m) * Hp) * std::min(t, s);
    if (random_drift && n == m)
        cov += pow_scale(lambda, 2.0 * static_cast<double>(n) * Hp) *
               pow_scale(lambda, static_cast<double>(n));
    return cov;
}

// Seasonal table of the drift-free piecewise-rescaled Brownian motion:
// r0[n] = alpha^(2T(H-1/2) + n); h = 1 inside the period and alpha^(T(H-1/2))
// across the interval boundary.
inline SeasonalCovariance sbm_seasonal(double H, double alpha, int T) {
    if (T < 1) throw std::invalid_argument("sbm_seasonal: T must be >= 1");
    const double Hp = H - 0.5;
    std::vector<double> r0(T), r1(T);
    for (int n = 0; n < T; ++n)
        r0[n] = pow_scale(alpha, 2.0 * T * Hp + static_cast<double>(n));
    for (int j = 0; j + 1 < T; ++j) r1[j] = r0[j];
    r1[T - 1] = pow_scale(alpha, static_cast<double>(T) * Hp) * r0[T - 1];
    return SeasonalCovariance(H, alpha, T, std::move(r0), std::move(r1));
}

// One-period variances of an AR(1)-type scale-invariant model, from the
// stationary fixed point of Var Y(n) = alpha^(-2H) theta((n-1) mod T)^2 Var Y(n-1) + sigma_n^2,
// then r0[j] = alpha^(2jH) Var Y(j).
inline std::vector<double> dsiar1_r0(std::span<const double> theta, std::span<const double> sigma,
                                     double H, double alpha, int T) {
    if (T < 1 || theta.size() != static_cast<std::size_t>(T) ||
        sigma.size() != static_cast<std::size_t>(T))
        throw std::invalid_argument("dsiar1_r0: theta and sigma must each have T entries");
    for (int j = 0; j < T; ++j) {
        if (theta[j] == 0.0)
            throw std::domain_error("dsiar1_r0: theta[" + std::to_string(j) +
                                    "] = 0 degenerates the one-step covariance");
        if (!(sigma[j] > 0.0))
            throw std::domain_error("dsiar1_r0: sigma entries must be positive");
    }
    double prod = pow_scale(alpha, -static_cast<double>(T) * H);
    for (int j = 0; j < T; ++j) prod *= theta[j];
    if (!(std::abs(prod) < 1.0))
        throw std::domain_error("dsiar1_r0: model is not causal (|coefficient product| = " +
                                std::to_string(std::abs(prod)) + " >= 1)");

    const double damp = pow_scale(alpha, -2.0 * H);
    // One period of the affine variance map: v(T) = A v(0) + B.
    double A = 1.0, B = 0.0;
    for (int n = 1; n <= T; ++n) {
        const double cn = damp * theta[n - 1] * theta[n - 1];
        A *= cn;
        B = cn * B + sigma[n % T] * sigma[n % T];
    }
    std::vector<double> v(T);
    v[0] = B / (1.0 - A);
    for (int n = 1; n < T; ++n) {
        const double cn = damp * theta[n - 1] * theta[n - 1];
        v[n] = cn * v[n - 1] + sigma[n] * sigma[n];
    }
    std::vector<double> r0(T);
    for (int j = 0; j < T; ++j) r0[j] = pow_scale(alpha, 2.0 * j * H) * v[j];
    return r0;
}

// AR(1)-type covariance in product form:
// R_n(kT + v) = (prod_{j=1..T} theta(alpha^j))^k * prod_{j=n..n+v-1} theta(alpha^j) * R_n(0),
// theta read T-periodically.
inline double dsiar1_covariance(std::span<const double> theta, std::span<const double> r0,
                                long long n, long long k, long long v) {
    const int T = static_cast<int>(theta.size());
    if (T < 1 || r0.size() != theta.size())
        throw std::invalid_argument("dsiar1_covariance: theta and r0 must have equal size T >= 1");
    if (n < 0 || n >= T) throw std::domain_error("dsiar1_covariance: need 0 <= n <= T-1");
    if (v < 0 || v >= T) throw std::domain_error("dsiar1_covariance: need 0 <= v <= T-1");
    if (k < 0) throw std::domain_error("dsiar1_covariance: need k >= 0");
    double period = 1.0;
    for (int j = 0; j < T; ++j) period *= theta[j];
    double prod = 1.0;
    for (long long j = n; j < n + v; ++j) prod *= theta[static_cast<int>(j % T)];
    return pow_int(period, k) * prod * r0[static_cast<int>(n)];
}

inline double dsiar1_covariance(const DsiarModel& m, long long n, long long k, long long v) {
    if (m.p != 1) throw std::domain_error("dsiar1_covariance: closed form requires p = 1");
    const auto r0 = dsiar1_r0(m.theta[0], m.sigma, m.H, m.alpha, m.T);
    return dsiar1_covariance(m.theta[0], r0, n, k, v);
}

// Seasonal table of an AR(1)-type model: r0 from the variance recursion,
// r1[j] = theta(alpha^j) r0[j].
inline SeasonalCovariance dsiar1_seasonal(const DsiarModel& m) {
    if (m.p != 1) throw std::domain_error("dsiar1_seasonal: closed form requires p = 1");
    auto r0 = dsiar1_r0(m.theta[0], m.sigma, m.H, m.alpha, m.T);
    std::vector<double> r1(m.T);
    for (int j = 0; j < m.T; ++j) r1[j] = m.theta[0][j] * r0[j];
    return SeasonalCovariance(m.H, m.alpha, m.T, std::move(r0), std::move(r1));
}

} // namespace dsim
