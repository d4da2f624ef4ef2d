#pragma once

// File formats: path CSV with a JSON sidecar describing the grid, seasonal
// table JSON, and the CSV exports for spectral and covariance data. All
// numbers are written with an explicit significant-digit count so identical
// runs produce identical bytes.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsim/covariance.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/spectral.hpp"

namespace dsim {

using ordered_json = nlohmann::ordered_json;

// Shortest-round-trip formatting is not portable across libcs; fixed
// significant digits are.
inline std::string format_sig(double v, int sig = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

// Round to the output precision before handing a number to the JSON writer,
// so JSON and CSV carry the same digits.
inline double json_sig(double v, int sig = 12) { return std::stod(format_sig(v, sig)); }

namespace detail {
inline std::ofstream open_out(const std::string& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open for writing: " + file);
    return out;
}
inline std::ifstream open_in(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open for reading: " + file);
    return in;
}
} // namespace detail

inline std::string sidecar_name(const std::string& csv_file) { return csv_file + ".json"; }

// Path CSV: header "k,t,x", one row per sample. The sidecar records the model
// name, seed, grid family and parameters so the path can be reloaded.
inline void write_path_csv(const SampledPath& path, const std::string& file, int sig = 12) {
    auto out = detail::open_out(file);
    out << "k,t,x\n";
    for (std::size_t k = 0; k < path.size(); ++k)
        out << k << ',' << format_sig(grid_time(path.grid, k), sig) << ','
            << format_sig(path.values[k], sig) << '\n';

    ordered_json meta;
    meta["model"] = path.meta.model;
    meta["seed"] = path.meta.seed;
    if (path.meta.H) meta["H"] = json_sig(*path.meta.H, sig);
    if (path.meta.drift) meta["drift"] = *path.meta.drift;
    if (const auto* g = std::get_if<ScaleGrid>(&path.grid)) {
        meta["grid"] = "geometric";
        meta["alpha"] = json_sig(g->alpha, sig);
        meta["lambda"] = json_sig(g->lambda(), sig);
        meta["T"] = g->T;
        meta["M"] = g->M;
        meta["base"] = json_sig(g->base, sig);
    } else {
        const auto& g2 = std::get<EquispacedScaleGrid>(path.grid);
        meta["grid"] = "equispaced";
        meta["lambda"] = json_sig(g2.lambda, sig);
        meta["T"] = g2.T;
        meta["M"] = g2.M;
    }
    auto side = detail::open_out(sidecar_name(file));
    side << meta.dump(2) << '\n';
}

// Rebuilds a SampledPath from the CSV plus its sidecar.
inline SampledPath read_path(const std::string& file) {
    ordered_json meta = ordered_json::parse(detail::open_in(sidecar_name(file)));

    const std::string kind = meta.at("grid").get<std::string>();
    GridVariant grid = [&]() -> GridVariant {
        if (kind == "geometric")
            return ScaleGrid{meta.at("alpha").get<double>(), meta.at("T").get<int>(),
                             meta.at("M").get<int>(),
                             meta.contains("base") ? meta.at("base").get<double>() : 1.0};
        if (kind == "equispaced")
            return EquispacedScaleGrid{meta.at("lambda").get<double>(), meta.at("T").get<int>(),
                                       meta.at("M").get<int>()};
        throw std::runtime_error("read_path: unknown grid kind '" + kind + "' in " + sidecar_name(file));
    }();

    PathMeta pm;
    pm.model = meta.value("model", std::string("unknown"));
    pm.seed = meta.value("seed", std::uint64_t{0});
    if (meta.contains("H")) pm.H = meta.at("H").get<double>();
    if (meta.contains("drift")) pm.drift = meta.at("drift").get<std::string>();

    auto in = detail::open_in(file);
    std::string line;
    if (!std::getline(in, line) || line.rfind("k,t,x", 0) != 0)
        throw std::runtime_error("read_path: " + file + " does not start with the expected header");
    std::vector<double> values;
    values.reserve(grid_size(grid));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("read_path: malformed row in " + file + ": " + line);
        values.push_back(std::stod(line.substr(c2 + 1)));
    }
    SampledPath path{grid, std::move(values), std::move(pm)};
    path.validate();
    return path;
}

// Seasonal table JSON: {H, alpha, T, r0, r1}.
inline void write_seasonal_json(const SeasonalCovariance& c, const std::string& file, int sig = 12) {
    ordered_json j;
    j["H"] = json_sig(c.H, sig);
    j["alpha"] = json_sig(c.alpha, sig);
    j["T"] = c.T;
    j["r0"] = ordered_json::array();
    j["r1"] = ordered_json::array();
    for (double v : c.r0) j["r0"].push_back(json_sig(v, sig));
    for (double v : c.r1) j["r1"].push_back(json_sig(v, sig));
    auto out = detail::open_out(file);
    out << j.dump(2) << '\n';
}

inline SeasonalCovariance read_seasonal_json(const std::string& file) {
    ordered_json j = ordered_json::parse(detail::open_in(file));
    return SeasonalCovariance(j.at("H").get<double>(), j.at("alpha").get<double>(),
                              j.at("T").get<int>(), j.at("r0").get<std::vector<double>>(),
                              j.at("r1").get<std::vector<double>>());
}

// Spectral CSV: omega,j,r,re,im over a uniform omega grid on [0, 2pi).
inline void write_spectral_csv(const SeasonalCovariance& c, int omega_points,
                               const std::string& file, int sig = 12) {
    if (omega_points < 1) throw std::invalid_argument("write_spectral_csv: need at least one omega");
    auto out = detail::open_out(file);
    out << "omega,j,r,re,im\n";
    for (int u = 0; u < omega_points; ++u) {
        const double omega = 2.0 * std::numbers::pi * u / omega_points;
        const auto d = spectral_density(c, omega);
        for (int j = 0; j < c.T; ++j)
            for (int r = 0; r < c.T; ++r) {
                const auto v = d[static_cast<std::size_t>(j) * c.T + r];
                out << format_sig(omega, sig) << ',' << j << ',' << r << ','
                    << format_sig(v.real(), sig) << ',' << format_sig(v.imag(), sig) << '\n';
            }
    }
}

// Q-matrix CSV: n,tau,j,k,value.
inline void write_q_csv(const QMatrix& q, const std::string& file, int sig = 12) {
    auto out = detail::open_out(file);
    out << "n,tau,j,k,value\n";
    for (int j = 0; j < q.T; ++j)
        for (int k = 0; k < q.T; ++k)
            out << q.n << ',' << q.tau << ',' << j << ',' << k << ',' << format_sig(q.at(j, k), sig)
                << '\n';
}

} // namespace dsim
