#pragma once

// T-dimensional embedding of a scale-sampled path, its block covariance
// matrices, the closed-form spectral density matrix of the stationary-type
// counterpart, and the DFT representation of the covariance over seasons.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsim/covariance.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/util.hpp"

namespace dsim {

// Component k over scale index n: V[k][n] = x[nT + k], k = 0..T-1, n = 0..M-1.
inline std::vector<std::vector<double>> embed_multidim(std::span<const double> values, int T) {
    if (T < 1) throw std::invalid_argument("embed_multidim: T must be >= 1");
    const std::size_t M = values.size() / static_cast<std::size_t>(T);
    if (M == 0) throw std::invalid_argument("embed_multidim: need at least T values");
    std::vector<std::vector<double>> comp(T, std::vector<double>(M));
    for (std::size_t n = 0; n < M; ++n)
        for (int k = 0; k < T; ++k) comp[k][n] = values[n * T + k];
    return comp;
}

inline std::vector<std::vector<double>> embed_multidim(const SampledPath& path) {
    return embed_multidim(path.values, path.scale_grid().T);
}

// Cross-covariance block of the embedding: values[j*T + k] = Cov(V^j(n+tau), V^k(n)).
struct QMatrix {
    long long n = 0;
    long long tau = 0;
    int T = 1;
    double H = 0.5;
    double alpha = 2.0;
    std::vector<double> values; // row-major T x T

    double at(int j, int k) const { return values[static_cast<std::size_t>(j) * T + k]; }
};

namespace detail {
inline void require_admissible(const SeasonalCovariance& c, const char* who) {
    const auto rep = check_admissible(c);
    if (!rep.admissible)
        throw std::domain_error(std::string(who) + ": table is not admissible, r1[j]^2 > r0[j] r0[j+1] at j = " +
                                std::to_string(*rep.first_violation));
}
} // namespace detail

// Q(n, tau) for blocks n and n + tau of the embedded process. Positive lags
// come straight from the covariance chain; tau = 0 is the symmetric block
// variance; negative lags use Q(n, tau) = lambda^(2 tau H) Q(n, -tau)^T.
inline QMatrix q_matrix(const SeasonalCovariance& c, long long n, long long tau) {
    detail::require_admissible(c, "q_matrix");
    if (n < 0 || n + tau < 0) throw std::domain_error("q_matrix: blocks n and n + tau must be >= 0");
    QMatrix q{n, tau, c.T, c.H, c.alpha, std::vector<double>(static_cast<std::size_t>(c.T) * c.T)};
    if (tau == 0) {
        for (int j = 0; j < c.T; ++j)
            for (int k = 0; k < c.T; ++k)
                q.values[static_cast<std::size_t>(j) * c.T + k] =
                    covariance_dsim(c, n * c.T + std::min(j, k), std::abs(j - k));
    } else if (tau >= 1) {
        for (int j = 0; j < c.T; ++j)
            for (int k = 0; k < c.T; ++k)
                q.values[static_cast<std::size_t>(j) * c.T + k] =
                    covariance_dsim(c, n * c.T + k, tau * c.T + j - k);
    } else {
        const QMatrix fwd = q_matrix(c, n, -tau);
        const double scale = pow_scale(c.lambda(), 2.0 * static_cast<double>(tau) * c.H);
        for (int j = 0; j < c.T; ++j)
            for (int k = 0; k < c.T; ++k)
                q.values[static_cast<std::size_t>(j) * c.T + k] = scale * fwd.at(k, j);
    }
    return q;
}

// Pole of the spectral density: rho = alpha^(-HT) htilde(alpha^(T-1)).
inline double spectral_rho(const SeasonalCovariance& c) {
    return pow_scale(c.alpha, -c.H * static_cast<double>(c.T)) * h_tilde_period(c);
}

namespace detail {
inline double require_rho_in_unit_disc(const SeasonalCovariance& c, const char* who) {
    const double rho = spectral_rho(c);
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error(std::string(who) + ": need |rho| < 1, got rho = " + std::to_string(rho));
    return rho;
}
} // namespace detail

// Entry d_jr(omega) of the density matrix of the stationary-type embedding.
inline std::complex<double> spectral_density_entry(const SeasonalCovariance& c, int j, int r,
                                                   double omega) {
    if (j < 0 || j >= c.T || r < 0 || r >= c.T)
        throw std::domain_error("spectral_density_entry: j, r must lie in 0..T-1");
    if (!std::isfinite(omega)) throw std::domain_error("spectral_density_entry: omega must be finite");
    const double rho = detail::require_rho_in_unit_disc(c, "spectral_density_entry");
    const double cjr = h_tilde(c, j - 1) / h_tilde(c, r - 1);
    const std::complex<double> z = std::polar(1.0, -omega * static_cast<double>(c.T));
    const std::complex<double> term1 = cjr * c.r0[r] / (1.0 - rho * z);
    const std::complex<double> term2 = (c.r0[j] / cjr) / (1.0 - z / rho);
    return (term1 - term2) / (2.0 * std::numbers::pi);
}

// Full T x T density matrix at omega, row-major.
inline std::vector<std::complex<double>> spectral_density(const SeasonalCovariance& c, double omega) {
    std::vector<std::complex<double>> d(static_cast<std::size_t>(c.T) * c.T);
    for (int j = 0; j < c.T; ++j)
        for (int r = 0; r < c.T; ++r)
            d[static_cast<std::size_t>(j) * c.T + r] = spectral_density_entry(c, j, r, omega);
    return d;
}

// m-th Fourier coefficient of d_jr: integrating e^(imT omega) d_jr(omega) over
// [0, 2pi) picks C_jr r0[r] rho^m for m >= 0 (geometric expansion of the rho
// pole) and the (r, j) coefficient for m < 0 (expansion of the 1/rho pole).
// For m >= 1 this equals lambda^(-mH) times the Q(0, m) closed form; at m = 0
// it is that formula's continuation, which is asymmetric in (j, r) off the
// diagonal and differs there from the symmetric block covariance.
inline double density_fourier_coefficient(const SeasonalCovariance& c, int j, int r, long long m) {
    if (j < 0 || j >= c.T || r < 0 || r >= c.T)
        throw std::domain_error("density_fourier_coefficient: j, r must lie in 0..T-1");
    if (m < 0) return density_fourier_coefficient(c, r, j, -m);
    const double rho = detail::require_rho_in_unit_disc(c, "density_fourier_coefficient");
    return h_tilde(c, j - 1) / h_tilde(c, r - 1) * c.r0[r] * pow_int(rho, m);
}

struct QuadratureResult {
    std::complex<double> lhs; // trapezoid value of the inversion integral
    double rhs = 0.0;         // closed-form Fourier coefficient
    double defect = 0.0;      // |lhs - rhs|
};

// Inverts the density numerically: integral over [0, 2pi) of
// e^(imT omega) d_jr(omega) d omega by the composite trapezoid rule, which is
// spectrally accurate here because the integrand is smooth and periodic.
inline QuadratureResult quadrature_check(const SeasonalCovariance& c, int j, int r, long long m,
                                         int n_points = 4096) {
    if (n_points < 2) throw std::invalid_argument("quadrature_check: need at least 2 points");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_points);
    std::complex<double> sum = 0.0;
    for (int u = 0; u < n_points; ++u) {
        const double omega = step * static_cast<double>(u);
        sum += std::polar(1.0, static_cast<double>(m) * static_cast<double>(c.T) * omega) *
               spectral_density_entry(c, j, r, omega);
    }
    QuadratureResult res;
    res.lhs = step * sum;
    res.rhs = density_fourier_coefficient(c, j, r, m);
    res.defect = std::abs(res.lhs - res.rhs);
    return res;
}

// DFT of the season axis: B_k(tau) with
// R_n(tau) = alpha^((2n+tau)H) sum_k B_k(tau) e^(2 pi i k n / T).
inline std::vector<std::complex<double>> spectral_coefficients(const SeasonalCovariance& c,
                                                               long long tau) {
    std::vector<std::complex<double>> b(c.T);
    for (int k = 0; k < c.T; ++k) {
        std::complex<double> sum = 0.0;
        for (int n = 0; n < c.T; ++n)
            sum += covariance_pc(c, n, tau) *
                   std::polar(1.0, -2.0 * std::numbers::pi * k * n / static_cast<double>(c.T));
        b[k] = sum / static_cast<double>(c.T);
    }
    return b;
}

// Evaluates the representation above at season n, returning R_n(tau).
inline double spectral_reconstruct(const SeasonalCovariance& c,
                                   std::span<const std::complex<double>> b, long long n,
                                   long long tau) {
    if (b.size() != static_cast<std::size_t>(c.T))
        throw std::invalid_argument("spectral_reconstruct: need T coefficients");
    if (n < 0) throw std::domain_error("spectral_reconstruct: n must be >= 0");
    std::complex<double> sum = 0.0;
    for (int k = 0; k < c.T; ++k)
        sum += b[k] * std::polar(1.0, 2.0 * std::numbers::pi * k * static_cast<double>(n % c.T) /
                                          static_cast<double>(c.T));
    return pow_scale(c.alpha, static_cast<double>(2 * n + tau) * c.H) * sum.real();
}

} // namespace dsim
