#pragma once

// Model parameter sets for the simulators and the covariance constructors.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsim/util.hpp"

namespace dsim {

enum class DriftKind { none, constant, sinusoidal, random };

inline std::string drift_name(DriftKind d) {
    switch (d) {
        case DriftKind::none: return "none";
        case DriftKind::constant: return "const";
        case DriftKind::sinusoidal: return "sin";
        case DriftKind::random: return "random";
    }
    throw std::invalid_argument("drift_name: unknown drift kind");
}

inline DriftKind drift_from_name(const std::string& s) {
    if (s == "none") return DriftKind::none;
    if (s == "const") return DriftKind::constant;
    if (s == "sin") return DriftKind::sinusoidal;
    if (s == "random") return DriftKind::random;
    throw std::invalid_argument("unknown drift kind: " + s);
}

// Piecewise-rescaled Brownian motion: on A_n = [lambda^(n-1), lambda^n),
// X(t) = lambda^(n(H-1/2)) * (B(t) + D_n(t)) with drift D_n selected by `drift`:
//   none: 0, constant: lambda^(n/2) * a, sinusoidal: lambda^(n/2) * sin(lambda^(-n) t),
//   random: lambda^(n/2) * W_n with W_n i.i.d. standard normal per interval.
struct SbmModel {
    double H = 0.5;
    double lambda = 0.0;
    DriftKind drift = DriftKind::none;
    double a = 1.0; // constant drift amplitude

    SbmModel(double H_, double lambda_, DriftKind drift_ = DriftKind::none, double a_ = 1.0)
        : H(H_), lambda(lambda_), drift(drift_), a(a_) {
        if (!(H > 0.0)) throw std::invalid_argument("SbmModel: H must be positive");
        if (!(lambda > 1.0)) throw std::invalid_argument("SbmModel: lambda must exceed 1");
        if (!std::isfinite(a)) throw std::invalid_argument("SbmModel: drift amplitude must be finite");
    }
};

// Periodically correlated AR(p): Y(n) = sum_i phi[i][n mod T] Y(n-i) + Z(n),
// Z(n) ~ N(0, sigma[n mod T]^2).
struct PcarModel {
    int p = 0;
    int T = 0;
    std::vector<std::vector<double>> phi; // p rows of T coefficients
    std::vector<double> sigma;            // T noise standard deviations

    PcarModel(int p_, int T_, std::vector<std::vector<double>> phi_, std::vector<double> sigma_)
        : p(p_), T(T_), phi(std::move(phi_)), sigma(std::move(sigma_)) {
        if (p < 1) throw std::invalid_argument("PcarModel: p must be >= 1");
        if (T < 1) throw std::invalid_argument("PcarModel: T must be >= 1");
        if (phi.size() != static_cast<std::size_t>(p))
            throw std::invalid_argument("PcarModel: phi must have p rows");
        for (const auto& row : phi) {
            if (row.size() != static_cast<std::size_t>(T))
                throw std::invalid_argument("PcarModel: each phi row must have T entries");
            for (double c : row)
                if (!std::isfinite(c)) throw std::invalid_argument("PcarModel: non-finite coefficient");
        }
        if (sigma.size() != static_cast<std::size_t>(T))
            throw std::invalid_argument("PcarModel: sigma must have T entries");
        for (double s : sigma)
            if (!(s > 0.0) || !std::isfinite(s))
                throw std::invalid_argument("PcarModel: sigma entries must be positive and finite");
    }
};

// Scale-invariant AR(p) on the lattice alpha^n:
// X(alpha^n) = sum_i theta[i][(n-i) mod T] X(alpha^(n-i)) + alpha^(nH) Z(n),
// with theta T-periodic and Z periodic white noise of std sigma[n mod T].
struct DsiarModel {
    double H = 0.5;
    double alpha = 0.0;
    int T = 0;
    int p = 0;
    std::vector<std::vector<double>> theta; // p rows of T coefficients
    std::vector<double> sigma;              // T noise standard deviations (of Z)

    DsiarModel(double H_, double alpha_, int T_, int p_,
               std::vector<std::vector<double>> theta_, std::vector<double> sigma_)
        : H(H_), alpha(alpha_), T(T_), p(p_), theta(std::move(theta_)), sigma(std::move(sigma_)) {
        if (!(H > 0.0)) throw std::invalid_argument("DsiarModel: H must be positive");
        if (!(alpha > 1.0)) throw std::invalid_argument("DsiarModel: alpha must exceed 1");
        if (T < 1) throw std::invalid_argument("DsiarModel: T must be >= 1");
        if (p < 1) throw std::invalid_argument("DsiarModel: p must be >= 1");
        if (theta.size() != static_cast<std::size_t>(p))
            throw std::invalid_argument("DsiarModel: theta must have p rows");
        for (const auto& row : theta) {
            if (row.size() != static_cast<std::size_t>(T))
                throw std::invalid_argument("DsiarModel: each theta row must have T entries");
            for (double c : row)
                if (!std::isfinite(c)) throw std::invalid_argument("DsiarModel: non-finite coefficient");
        }
        if (sigma.size() != static_cast<std::size_t>(T))
            throw std::invalid_argument("DsiarModel: sigma must have T entries");
        for (double s : sigma)
            if (!(s > 0.0) || !std::isfinite(s))
                throw std::invalid_argument("DsiarModel: sigma entries must be positive and finite");
    }

    double lambda() const { return pow_scale(alpha, T); }
};

// Stationary-type counterpart of a DSIAR model: the AR coefficient of Y(n-i) is
// alpha^(-iH) theta_i evaluated at phase (n-i) mod T; the noise is Z itself.
inline PcarModel pcar_counterpart(const DsiarModel& m) {
    std::vector<std::vector<double>> phi(m.p, std::vector<double>(m.T));
    for (int i = 1; i <= m.p; ++i) {
        const double scale = pow_scale(m.alpha, -static_cast<double>(i) * m.H);
        for (int n = 0; n < m.T; ++n) {
            const int lag_phase = ((n - i) % m.T + m.T) % m.T;
            phi[i - 1][n] = scale * m.theta[i - 1][lag_phase];
        }
    }
    return PcarModel(m.p, m.T, std::move(phi), m.sigma);
}

// Product of the AR(1) coefficients over one period; the recursion is causal
// iff its absolute value is below 1. Undefined (nullopt) for p >= 2.
inline std::optional<double> pcar_causal_product(const PcarModel& m) {
    if (m.p != 1) return std::nullopt;
    double prod = 1.0;
    for (double c : m.phi[0]) prod *= c;
    return prod;
}

inline std::optional<double> dsiar_causal_product(const DsiarModel& m) {
    if (m.p != 1) return std::nullopt;
    double prod = pow_scale(m.alpha, -static_cast<double>(m.T) * m.H);
    for (double c : m.theta[0]) prod *= c;
    return prod;
}

} // namespace dsim
