#pragma once

// Path simulators. All draws come from counter-based streams keyed by the
// caller seed, so a (seed, grid) pair determines the path exactly.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsim/models.hpp"
#include "dsim/rng.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/util.hpp"

namespace dsim {

namespace stream {
inline constexpr std::uint64_t brownian = 0;
inline constexpr std::uint64_t noise = 0;
inline constexpr std::uint64_t drift_base = 0x44524946'54000000ULL; // per-interval drift draws
} // namespace stream

// Standard Brownian motion sampled at strictly increasing times >= 0:
// B(t_0) ~ N(0, t_0), then independent increments N(0, t_k - t_{k-1}).
inline std::vector<double> simulate_brownian(std::span<const double> times, std::uint64_t seed) {
    if (times.empty()) return {};
    if (!(times[0] >= 0.0)) throw std::domain_error("simulate_brownian: times must be >= 0");
    Rng rng(seed, stream::brownian);
    std::vector<double> b(times.size());
    b[0] = (times[0] > 0.0) ? std::sqrt(times[0]) * rng.next_normal() : 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (!(dt > 0.0)) throw std::domain_error("simulate_brownian: times must be strictly increasing");
        b[k] = b[k - 1] + std::sqrt(dt) * rng.next_normal();
    }
    return b;
}

// Piecewise-rescaled Brownian path on a grid whose times lie in [1, inf):
// X(t) = lambda^(n(H-1/2)) (B(t) + D_n(t)) for t in A_n. One Brownian path is
// shared across intervals; the random drift draws W_n from a stream keyed by
// the interval index so they do not depend on the grid layout.
inline SampledPath simulate_sbm(const SbmModel& model, const GridVariant& grid, std::uint64_t seed) {
    if (const auto* g = std::get_if<ScaleGrid>(&grid)) {
        if (std::abs(g->lambda() - model.lambda) > 1e-9 * model.lambda)
            throw std::invalid_argument("simulate_sbm: grid lambda does not match model lambda");
    } else if (const auto* e = std::get_if<EquispacedScaleGrid>(&grid)) {
        if (std::abs(e->lambda - model.lambda) > 1e-9 * model.lambda)
            throw std::invalid_argument("simulate_sbm: grid lambda does not match model lambda");
    }
    const auto times = grid_times(grid);
    const std::vector<double> b = simulate_brownian(times, seed);
    const double Hp = model.H - 0.5;
    const double lam = model.lambda;

    // W_n is a pure function of (seed, n), so repeated evaluation is exact.
    auto random_drift = [seed](long long n) {
        return Rng(seed, stream::drift_base + static_cast<std::uint64_t>(n)).next_normal();
    };

    std::vector<double> x(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const long long n =
            std::visit([k](const auto& gr) { return gr.interval_of(k); }, grid);
        if (n < 1) throw std::domain_error("simulate_sbm: grid times must be >= 1");
        const double nd = static_cast<double>(n);
        double drift = 0.0;
        switch (model.drift) {
            case DriftKind::none: break;
            case DriftKind::constant:
                drift = pow_scale(lam, nd / 2.0) * model.a;
                break;
            case DriftKind::sinusoidal:
                drift = pow_scale(lam, nd / 2.0) * std::sin(pow_scale(lam, -nd) * times[k]);
                break;
            case DriftKind::random:
                drift = pow_scale(lam, nd / 2.0) * random_drift(n);
                break;
        }
        x[k] = pow_scale(lam, nd * Hp) * (b[k] + drift);
    }

    SampledPath path{grid, std::move(x),
                     PathMeta{model.drift == DriftKind::random ? "sbm-random-drift" : "sbm",
                              seed, model.H, drift_name(model.drift)}};
    path.validate();
    return path;
}

// Periodically correlated AR(p) sequence, phase 0 at output index 0.
// burn_in < 0 selects the default of 50 periods.
inline std::vector<double> simulate_pcar(const PcarModel& model, std::size_t n_steps,
                                         std::uint64_t seed, long long burn_in = -1) {
    if (burn_in < 0) burn_in = 50LL * model.T;
    if (auto prod = pcar_causal_product(model)) {
        if (!(std::abs(*prod) < 1.0))
            throw std::domain_error(
                "simulate_pcar: not causal, |product of AR coefficients over one period| = " +
                std::to_string(std::abs(*prod)) + " >= 1");
    } else {
        std::cerr << "simulate_pcar: warning: no causality criterion for p >= 2; "
                     "running the recursion as given\n";
    }
    Rng rng(seed, stream::noise);
    std::vector<double> hist(model.p, 0.0); // hist[i-1] = Y(m - i)
    std::vector<double> out;
    out.reserve(n_steps);
    const long long total = burn_in + static_cast<long long>(n_steps);
    for (long long m = 0; m < total; ++m) {
        const int phase = static_cast<int>(((m - burn_in) % model.T + model.T) % model.T);
        double y = model.sigma[phase] * rng.next_normal();
        for (int i = 1; i <= model.p; ++i) y += model.phi[i - 1][phase] * hist[i - 1];
        for (int i = model.p - 1; i >= 1; --i) hist[i] = hist[i - 1];
        hist[0] = y;
        if (m >= burn_in) out.push_back(y);
    }
    return out;
}

// Scale-invariant AR(p) path on the lattice alpha^n: simulate the
// stationary-type counterpart and map it through x[n] = alpha^(nH) y[n].
inline SampledPath simulate_dsiar(const DsiarModel& model, const ScaleGrid& grid,
                                  std::uint64_t seed, long long burn_in = -1) {
    if (grid.T != model.T || std::abs(grid.alpha - model.alpha) > 1e-12 * model.alpha)
        throw std::invalid_argument("simulate_dsiar: grid (alpha, T) must match the model");
    if (grid.base != 1.0)
        throw std::invalid_argument("simulate_dsiar: the model lives on the lattice alpha^n (base 1)");
    const std::vector<double> y =
        simulate_pcar(pcar_counterpart(model), grid.size(), seed, burn_in);
    SampledPath path{GridVariant{grid}, lamperti_forward(y, model.H, model.alpha),
                     PathMeta{"dsiar", seed, model.H, std::nullopt}};
    path.validate();
    return path;
}

} // namespace dsim
