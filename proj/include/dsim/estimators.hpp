#pragma once

// Moment estimators for the seasonal covariance table, the variation-ratio
// Hurst estimator, and a Gaussian maximum-likelihood Hurst baseline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dsim/covariance.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/util.hpp"

namespace dsim {

namespace detail {
inline const ScaleGrid& estimator_grid(const SampledPath& path, const char* who) {
    const ScaleGrid& g = path.scale_grid();
    if (g.base != 1.0) throw std::domain_error(std::string(who) + ": path must start at time 1");
    if (g.M < 2) throw std::domain_error(std::string(who) + ": need at least two scale intervals");
    return g;
}
inline void check_h(double H, const char* who) {
    if (!(H > 0.0) || !std::isfinite(H))
        throw std::domain_error(std::string(who) + ": H must be positive and finite");
}
} // namespace detail

// m_j = (1/M) sum_k lambda^(-kH) X(alpha^(kT+j)): the per-season mean of the
// de-scaled samples.
inline double normalized_mean(const SampledPath& path, double H, int j) {
    const ScaleGrid& g = detail::estimator_grid(path, "normalized_mean");
    detail::check_h(H, "normalized_mean");
    if (j < 0 || j >= g.T) throw std::domain_error("normalized_mean: j must lie in 0..T-1");
    const double lam = g.lambda();
    double sum = 0.0;
    for (long long k = 0; k < g.M; ++k)
        sum += pow_scale(lam, -static_cast<double>(k) * H) * path.values[k * g.T + j];
    return sum / static_cast<double>(g.M);
}

// R_j(0) estimate: de-scaled sample variance at season j, divisor M-1.
inline double estimate_r0(const SampledPath& path, double H, int j) {
    const ScaleGrid& g = detail::estimator_grid(path, "estimate_r0");
    detail::check_h(H, "estimate_r0");
    if (j < 0 || j >= g.T) throw std::domain_error("estimate_r0: j must lie in 0..T-1");
    const double lam = g.lambda();
    const double m = normalized_mean(path, H, j);
    double sum = 0.0;
    for (long long k = 0; k < g.M; ++k) {
        const double d = pow_scale(lam, -static_cast<double>(k) * H) * path.values[k * g.T + j] - m;
        sum += d * d;
    }
    return sum / static_cast<double>(g.M - 1);
}

// R_j(1) estimate. For j <= T-2 the partner season is j+1; for j = T-1 the
// partner is X(alpha^(kT+T)), whose de-scaled mean is lambda^H m_0, which is
// why the grid carries M*T + 1 points.
inline double estimate_r1(const SampledPath& path, double H, int j) {
    const ScaleGrid& g = detail::estimator_grid(path, "estimate_r1");
    detail::check_h(H, "estimate_r1");
    if (j < 0 || j >= g.T) throw std::domain_error("estimate_r1: j must lie in 0..T-1");
    const double lam = g.lambda();
    const double mj = normalized_mean(path, H, j);
    const double mpartner =
        (j + 1 < g.T) ? normalized_mean(path, H, j + 1) : pow_scale(lam, H) * normalized_mean(path, H, 0);
    double sum = 0.0;
    for (long long k = 0; k < g.M; ++k) {
        const double w = pow_scale(lam, -static_cast<double>(k) * H);
        const double a = w * path.values[k * g.T + j] - mj;
        const double b = w * path.values[k * g.T + j + 1] - mpartner;
        sum += a * b;
    }
    return sum / static_cast<double>(g.M - 1);
}

// R_n(tau) estimate for general lags. With n = rT+i and n+tau = sT+j the
// window has M - max(r, s) usable scale shifts; the divisor is one less,
// matching the seasonal estimators above.
inline double estimate_r_n_tau(const SampledPath& path, double H, long long n, long long tau) {
    const ScaleGrid& g = detail::estimator_grid(path, "estimate_r_n_tau");
    detail::check_h(H, "estimate_r_n_tau");
    if (n < 0 || n + tau < 0) throw std::domain_error("estimate_r_n_tau: n and n + tau must be >= 0");
    const long long r = n / g.T;
    const int i = static_cast<int>(n % g.T);
    const long long s = (n + tau) / g.T;
    const int j = static_cast<int>((n + tau) % g.T);
    const long long K = g.M - std::max(r, s);
    if (K < 2)
        throw std::domain_error("estimate_r_n_tau: lag reaches beyond the sampled scales (need max(r, s) <= M-2)");
    const double lam = g.lambda();
    const double ci = pow_scale(lam, static_cast<double>(r) * H) * normalized_mean(path, H, i);
    const double cj = pow_scale(lam, static_cast<double>(s) * H) * normalized_mean(path, H, j);
    double sum = 0.0;
    for (long long k = 0; k < K; ++k) {
        const double w = pow_scale(lam, -static_cast<double>(k) * H);
        const double a = w * path.values[(k + r) * g.T + i] - ci;
        const double b = w * path.values[(k + s) * g.T + j] - cj;
        sum += a * b;
    }
    return sum / static_cast<double>(K - 1);
}

// Assembles the full seasonal table {r0[j], r1[j]} from one path. The result
// may fail check_admissible at the wrap-around season; that is a property of
// the sample, not an error here.
inline SeasonalCovariance estimate_seasonal(const SampledPath& path, double H) {
    const ScaleGrid& g = detail::estimator_grid(path, "estimate_seasonal");
    detail::check_h(H, "estimate_seasonal");
    std::vector<double> r0(g.T), r1(g.T);
    for (int j = 0; j < g.T; ++j) {
        r0[j] = estimate_r0(path, H, j);
        r1[j] = estimate_r1(path, H, j);
        if (!(r0[j] > 0.0) || !std::isfinite(r0[j]))
            throw std::domain_error("estimate_seasonal: degenerate variance at season " + std::to_string(j) +
                                    " (constant or non-random input?)");
        if (r1[j] == 0.0 || !std::isfinite(r1[j]))
            throw std::domain_error("estimate_seasonal: degenerate lag-one moment at season " + std::to_string(j));
    }
    return SeasonalCovariance(H, g.alpha, g.T, std::move(r0), std::move(r1));
}

struct VariationSums {
    std::vector<double> ss1; // per-interval mean squared first differences
    std::vector<double> ss2; // per-interval mean squared second differences
};

// Within-interval variation sums on an equally spaced scale grid. Both sums
// use the divisor T-1; it cancels in the ratios consumed downstream.
inline VariationSums variation_sums(const SampledPath& path) {
    const EquispacedScaleGrid& g = path.equispaced_grid();
    if (g.T < 3) throw std::domain_error("variation_sums: need T >= 3 samples per interval for second differences");
    VariationSums v;
    v.ss1.resize(g.M);
    v.ss2.resize(g.M);
    for (long long i = 0; i < g.M; ++i) {
        const double* x = path.values.data() + i * g.T;
        double s1 = 0.0, s2 = 0.0;
        for (int q = 1; q < g.T; ++q) {
            const double d = x[q] - x[q - 1];
            s1 += d * d;
        }
        for (int q = 2; q < g.T; ++q) {
            const double d = x[q] - 2.0 * x[q - 1] + x[q - 2];
            s2 += d * d;
        }
        v.ss1[i] = s1 / static_cast<double>(g.T - 1);
        v.ss2[i] = s2 / static_cast<double>(g.T - 1);
    }
    return v;
}

struct HurstEstimate {
    double h1 = 0.0; // from first differences
    double h2 = 0.0; // from second differences
    std::vector<double> mu1, mu2; // per-step log ratios, M-1 each
    std::vector<double> ss1, ss2; // the underlying variation sums, M each
};

// mu_{j,i} = log(SS_{j,i+1} / SS_{j,i}) / (2 log lambda); H_j is their mean.
// Scale-free: multiplying the path by c > 0 changes no mu.
inline HurstEstimate hurst_variation(const SampledPath& path, double lambda) {
    const EquispacedScaleGrid& g = path.equispaced_grid();
    if (!(lambda > 1.0)) throw std::domain_error("hurst_variation: lambda must exceed 1");
    if (g.M < 2) throw std::domain_error("hurst_variation: need at least two scale intervals");
    HurstEstimate est;
    VariationSums v = variation_sums(path);
    for (long long i = 0; i < g.M; ++i) {
        if (!(v.ss1[i] > 0.0))
            throw std::domain_error("hurst_variation: zero first-order variation in interval " + std::to_string(i));
        if (!(v.ss2[i] > 0.0))
            throw std::domain_error("hurst_variation: zero second-order variation in interval " + std::to_string(i));
    }
    const double denom = 2.0 * std::log(lambda);
    est.mu1.resize(g.M - 1);
    est.mu2.resize(g.M - 1);
    for (long long i = 0; i + 1 < g.M; ++i) {
        est.mu1[i] = std::log(v.ss1[i + 1] / v.ss1[i]) / denom;
        est.mu2[i] = std::log(v.ss2[i + 1] / v.ss2[i]) / denom;
    }
    est.h1 = mean(est.mu1);
    est.h2 = mean(est.mu2);
    est.ss1 = std::move(v.ss1);
    est.ss2 = std::move(v.ss2);
    return est;
}

inline HurstEstimate hurst_variation(const SampledPath& path) {
    return hurst_variation(path, path.equispaced_grid().lambda);
}

struct MleConfig {
    double h_min = 0.05;
    double h_max = 1.2;
    double tol = 1e-4;          // golden-section bracket width on H
    bool random_drift = false;  // model family: plain vs per-interval random drift
    int per_scale = 6;          // geometric subsample targets per scale interval
    int max_points = 300;       // dense Gaussian likelihood is cubic in this
    int profile_points = 25;    // reported likelihood profile resolution
};

struct MleResult {
    double h = 0.0;
    std::vector<std::pair<double, double>> profile; // (H, log-likelihood)
    bool flat_warning = false;
};

// Indices of path samples nearest the targets lambda^(i + k/per_scale),
// thinned deterministically to at most max_points.
inline std::vector<std::size_t> geometric_subsample(const SampledPath& path, int per_scale,
                                                    int max_points) {
    const EquispacedScaleGrid& g = path.equispaced_grid();
    if (per_scale < 1) throw std::invalid_argument("geometric_subsample: per_scale must be >= 1");
    if (max_points < 10) throw std::invalid_argument("geometric_subsample: max_points must be >= 10");
    std::vector<std::size_t> idx;
    idx.reserve(static_cast<std::size_t>(g.M) * per_scale);
    for (long long i = 0; i < g.M; ++i) {
        for (int k = 0; k < per_scale; ++k) {
            // q solving lambda^(k/per_scale) = 1 + q (lambda-1)/T, clamped to the interval
            const double frac = pow_scale(g.lambda, static_cast<double>(k) / per_scale) - 1.0;
            long long q = std::llround(frac * g.T / (g.lambda - 1.0));
            q = std::clamp<long long>(q, 0, g.T - 1);
            const std::size_t cand = static_cast<std::size_t>(i * g.T + q);
            if (idx.empty() || cand > idx.back()) idx.push_back(cand);
        }
    }
    if (idx.size() > static_cast<std::size_t>(max_points)) {
        std::vector<std::size_t> thin(max_points);
        for (int j = 0; j < max_points; ++j)
            thin[j] = idx[static_cast<std::size_t>(j) * idx.size() / max_points];
        idx = std::move(thin);
    }
    return idx;
}

// Zero-mean Gaussian log-likelihood of the subsampled path under the
// closed-form model covariance at candidate H. Escalating diagonal jitter
// covers near-singular matrices; persistent failure is a numerical error.
inline double mle_loglik(const SampledPath& path, std::span<const std::size_t> idx, double H,
                         bool random_drift) {
    detail::check_h(H, "mle_loglik");
    const EquispacedScaleGrid& g = path.equispaced_grid();
    const auto N = static_cast<Eigen::Index>(idx.size());
    if (N < 2) throw std::invalid_argument("mle_loglik: need at least two sample points");
    Eigen::VectorXd x(N);
    std::vector<double> t(idx.size());
    for (Eigen::Index a = 0; a < N; ++a) {
        x[a] = path.values[idx[a]];
        t[a] = g.time(idx[a]);
    }
    Eigen::MatrixXd sigma(N, N);
    for (Eigen::Index a = 0; a < N; ++a)
        for (Eigen::Index b = 0; b <= a; ++b) {
            const double v = sbm_cov(H, g.lambda, t[a], t[b], random_drift);
            sigma(a, b) = v;
            sigma(b, a) = v;
        }
    const double mean_diag = sigma.diagonal().mean();
    double jitter = 0.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        Eigen::MatrixXd s = sigma;
        if (jitter > 0.0) s.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(s);
        if (llt.info() == Eigen::Success) {
            const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
            const double quad = x.dot(llt.solve(x));
            return -0.5 * (logdet + quad + static_cast<double>(N) * std::log(2.0 * std::numbers::pi));
        }
        jitter = (jitter == 0.0) ? 1e-10 * mean_diag : 10.0 * jitter;
    }
    throw std::runtime_error("mle_loglik: covariance factorization failed even with jitter");
}

// Golden-section maximizer of the likelihood over [h_min, h_max], plus a
// uniform profile for reporting.
inline MleResult hurst_mle(const SampledPath& path, const MleConfig& cfg = {}) {
    if (!(cfg.h_min > 0.0) || !(cfg.h_max >= cfg.h_min) || !std::isfinite(cfg.h_max))
        throw std::invalid_argument("hurst_mle: search interval must be nonempty within (0, inf)");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("hurst_mle: tolerance must be positive");
    if (cfg.max_points < 10) throw std::invalid_argument("hurst_mle: subsample cap must be >= 10");
    const auto idx = geometric_subsample(path, cfg.per_scale, cfg.max_points);
    auto ll = [&](double H) { return mle_loglik(path, idx, H, cfg.random_drift); };

    MleResult res;
    if (cfg.h_min == cfg.h_max) {
        res.h = cfg.h_min;
        res.profile = {{cfg.h_min, ll(cfg.h_min)}};
        return res;
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = cfg.h_min, b = cfg.h_max;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ll(c), fd = ll(d);
    while (b - a > cfg.tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ll(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ll(d);
        }
    }
    res.h = 0.5 * (a + b);

    const int P = std::max(cfg.profile_points, 2);
    res.profile.reserve(P);
    double lo = 1e300, hi = -1e300;
    for (int p = 0; p < P; ++p) {
        const double H = cfg.h_min + (cfg.h_max - cfg.h_min) * p / (P - 1);
        const double v = ll(H);
        res.profile.emplace_back(H, v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    res.flat_warning = (hi - lo) < 1e-6 * (std::abs(hi) + 1.0);
    return res;
}

} // namespace dsim
