#pragma once

// Geometric sampling grids for scale-invariant sequences.
//
// A ScaleGrid samples t_k = base * alpha^k for k = 0..M*T, i.e. M whole scale
// intervals of T samples each plus the closing endpoint base * lambda^M, where
// lambda = alpha^T. Scale intervals are left-closed: A_n = [lambda^(n-1), lambda^n).
//
// An EquispacedScaleGrid places T arithmetically equispaced samples inside each
// of M scale intervals: t(i, q) = lambda^i * (1 + q * (lambda - 1) / T).

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dsim/util.hpp"

namespace dsim {

// Index n of the scale interval A_n = [lambda^(n-1), lambda^n) containing t.
// log_lambda(t) is snapped to the nearest integer when within 1e-9 so that
// times computed as powers of alpha classify exactly onto interval boundaries.
inline long long interval_index(double t, double lambda) {
    if (!(t > 0.0)) throw std::domain_error("interval_index: t must be positive");
    if (!(lambda > 1.0)) throw std::domain_error("interval_index: lambda must exceed 1");
    const double x = std::log(t) / std::log(lambda);
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9) return static_cast<long long>(r) + 1;
    return static_cast<long long>(std::floor(x)) + 1;
}

struct ScaleGrid {
    double alpha = 0.0; // per-sample ratio, > 1
    int T = 0;          // samples per scale interval
    int M = 0;          // number of scale intervals
    double base = 1.0;  // time of index 0

    ScaleGrid(double alpha_, int T_, int M_, double base_ = 1.0)
        : alpha(alpha_), T(T_), M(M_), base(base_) {
        if (!(alpha > 1.0)) throw std::invalid_argument("ScaleGrid: alpha must exceed 1");
        if (T < 1) throw std::invalid_argument("ScaleGrid: T must be >= 1");
        if (M < 1) throw std::invalid_argument("ScaleGrid: M must be >= 1");
        if (!(base > 0.0)) throw std::invalid_argument("ScaleGrid: base must be positive");
    }

    double lambda() const { return pow_scale(alpha, T); }
    // M whole intervals plus the closing endpoint base * lambda^M.
    std::size_t size() const { return static_cast<std::size_t>(M) * T + 1; }
    double time(std::size_t k) const { return base * pow_scale(alpha, static_cast<double>(k)); }

    // Scale interval of sample k; exact integer arithmetic when base == 1.
    long long interval_of(std::size_t k) const {
        if (base == 1.0) return static_cast<long long>(k) / T + 1;
        return interval_index(time(k), lambda());
    }
};

struct EquispacedScaleGrid {
    double lambda = 0.0; // scale ratio per interval, > 1
    int T = 0;           // equispaced samples per interval
    int M = 0;           // number of scale intervals

    EquispacedScaleGrid(double lambda_, int T_, int M_)
        : lambda(lambda_), T(T_), M(M_) {
        if (!(lambda > 1.0)) throw std::invalid_argument("EquispacedScaleGrid: lambda must exceed 1");
        if (T < 1) throw std::invalid_argument("EquispacedScaleGrid: T must be >= 1");
        if (M < 1) throw std::invalid_argument("EquispacedScaleGrid: M must be >= 1");
    }

    std::size_t size() const { return static_cast<std::size_t>(M) * T; }
    double time(std::size_t g) const {
        const std::size_t i = g / T, q = g % T;
        return pow_scale(lambda, static_cast<double>(i)) *
               (1.0 + static_cast<double>(q) * (lambda - 1.0) / T);
    }
    // t(i, q) lies in [lambda^i, lambda^(i+1)) by construction.
    long long interval_of(std::size_t g) const { return static_cast<long long>(g / T) + 1; }
};

using GridVariant = std::variant<ScaleGrid, EquispacedScaleGrid>;

inline std::size_t grid_size(const GridVariant& g) {
    return std::visit([](const auto& gr) { return gr.size(); }, g);
}

inline double grid_time(const GridVariant& g, std::size_t k) {
    return std::visit([k](const auto& gr) { return gr.time(k); }, g);
}

inline double grid_lambda(const GridVariant& g) {
    return std::visit([](const auto& gr) {
        if constexpr (std::is_same_v<std::decay_t<decltype(gr)>, ScaleGrid>) return gr.lambda();
        else return gr.lambda;
    }, g);
}

template <class Grid>
std::vector<double> grid_times(const Grid& g) {
    std::vector<double> t(g.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = g.time(k);
    return t;
}

inline std::vector<double> grid_times(const GridVariant& g) {
    return std::visit([](const auto& gr) { return grid_times(gr); }, g);
}

struct PathMeta {
    std::string model;
    std::uint64_t seed = 0;
    std::optional<double> H;
    std::optional<std::string> drift;
};

struct SampledPath {
    GridVariant grid;
    std::vector<double> values;
    PathMeta meta;

    std::size_t size() const { return values.size(); }

    const ScaleGrid& scale_grid() const {
        if (const auto* g = std::get_if<ScaleGrid>(&grid)) return *g;
        throw std::domain_error("SampledPath: operation requires a geometric ScaleGrid");
    }
    const EquispacedScaleGrid& equispaced_grid() const {
        if (const auto* g = std::get_if<EquispacedScaleGrid>(&grid)) return *g;
        throw std::domain_error("SampledPath: operation requires an EquispacedScaleGrid");
    }

    void validate() const {
        if (values.size() != grid_size(grid))
            throw std::invalid_argument("SampledPath: values.size() does not match grid point count");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("SampledPath: non-finite value");
    }
};

// x[n] = alpha^(nH) y[n]: maps a stationary-type sequence to its scale-invariant image.
inline std::vector<double> lamperti_forward(std::span<const double> y, double H, double alpha) {
    if (!(alpha > 1.0)) throw std::domain_error("lamperti_forward: alpha must exceed 1");
    std::vector<double> x(y.size());
    for (std::size_t n = 0; n < y.size(); ++n)
        x[n] = pow_scale(alpha, static_cast<double>(n) * H) * y[n];
    return x;
}

// y[n] = alpha^(-nH) x[n]: inverse of lamperti_forward.
inline std::vector<double> lamperti_inverse(std::span<const double> x, double H, double alpha) {
    if (!(alpha > 1.0)) throw std::domain_error("lamperti_inverse: alpha must exceed 1");
    std::vector<double> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        y[n] = pow_scale(alpha, -static_cast<double>(n) * H) * x[n];
    return y;
}

} // namespace dsim
