// Command-line front end: seeded simulation, the lag-covariance verification
// experiment, Hurst estimation, spectral export, and the estimator MAE
// benchmark. Every command is a pure function of (flags, seed); re-runs write
// byte-identical output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dsim/covariance.hpp"
#include "dsim/estimators.hpp"
#include "dsim/io.hpp"
#include "dsim/models.hpp"
#include "dsim/process_sim.hpp"
#include "dsim/rng.hpp"
#include "dsim/scale_grid.hpp"
#include "dsim/spectral.hpp"
#include "dsim/util.hpp"

namespace {

using dsim::ordered_json;

std::vector<std::vector<double>> coef_rows(const std::vector<double>& flat, int p, int T,
                                           const std::string& what) {
    if (flat.size() != static_cast<std::size_t>(p) * T)
        throw std::domain_error(what + ": need p*T = " + std::to_string(p * T) + " values, got " +
                                std::to_string(flat.size()));
    std::vector<std::vector<double>> rows(p, std::vector<double>(T));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < T; ++j) rows[i][j] = flat[static_cast<std::size_t>(i) * T + j];
    return rows;
}

// alpha and lambda are redundant given T; accept either and check agreement.
std::pair<double, double> resolve_scales(double alpha, double lambda, int T, const std::string& who) {
    if (alpha <= 0.0 && lambda <= 0.0)
        throw std::domain_error(who + ": pass --alpha or --lambda");
    if (alpha <= 0.0) alpha = dsim::pow_scale(lambda, 1.0 / static_cast<double>(T));
    const double lam_from_alpha = dsim::pow_scale(alpha, static_cast<double>(T));
    if (lambda <= 0.0) lambda = lam_from_alpha;
    if (std::abs(lam_from_alpha - lambda) > 1e-9 * lambda)
        throw std::domain_error(who + ": --alpha and --lambda disagree (need lambda = alpha^T)");
    return {alpha, lambda};
}

void emit_report(const ordered_json& report, const std::string& out_file) {
    std::cout << report.dump(2) << '\n';
    if (!out_file.empty()) {
        auto out = dsim::detail::open_out(out_file);
        out << report.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------- simulate
struct SimulateCmd {
    std::string model = "sbm";
    std::string drift = "none";
    double a = 1.0;
    double H = 0.5;
    double alpha = 0.0;
    double lambda = 0.0;
    int T = 6;
    int M = 100;
    std::string grid = "geometric";
    std::uint64_t seed = 0;
    long long burn_in = -1;
    int p = 1;
    std::vector<double> theta;
    std::vector<double> phi;
    std::vector<double> sigma;
    std::string config;
    std::string out = "path.csv";
    int precision = 12;

    CLI::Option *o_model = nullptr, *o_drift = nullptr, *o_a = nullptr, *o_h = nullptr,
                *o_alpha = nullptr, *o_lambda = nullptr, *o_t = nullptr, *o_m = nullptr,
                *o_grid = nullptr, *o_p = nullptr, *o_theta = nullptr, *o_phi = nullptr,
                *o_sigma = nullptr;

    void register_on(CLI::App& app) {
        auto* sub = app.add_subcommand("simulate", "simulate a model and write a path CSV + sidecar");
        o_model = sub->add_option("--model", model, "sbm | dsiar | pcar")
                      ->check(CLI::IsMember({"sbm", "dsiar", "pcar"}));
        o_drift = sub->add_option("--drift", drift, "none | const | sin | random (sbm only)")
                      ->check(CLI::IsMember({"none", "const", "sin", "random"}));
        o_a = sub->add_option("--a", a, "constant drift amplitude");
        o_h = sub->add_option("--H", H, "self-similarity index");
        o_alpha = sub->add_option("--alpha", alpha, "per-sample scale ratio (> 1)");
        o_lambda = sub->add_option("--lambda", lambda, "per-interval scale (= alpha^T)");
        o_t = sub->add_option("--T", T, "samples per scale interval");
        o_m = sub->add_option("--M", M, "number of scale intervals");
        o_grid = sub->add_option("--grid", grid, "geometric | equispaced")
                     ->check(CLI::IsMember({"geometric", "equispaced"}));
        sub->add_option("--seed", seed, "RNG seed")->required();
        sub->add_option("--burn-in", burn_in, "AR warm-up steps (default 50 periods)");
        o_p = sub->add_option("--p", p, "AR order");
        o_theta = sub->add_option("--theta", theta, "dsiar coefficients, p*T values row-major")
                      ->delimiter(',');
        o_phi = sub->add_option("--phi", phi, "pcar coefficients, p*T values row-major")
                    ->delimiter(',');
        o_sigma = sub->add_option("--sigma", sigma, "noise standard deviations, T values")
                      ->delimiter(',');
        sub->add_option("--config", config, "model spec JSON; inline flags take precedence")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output CSV path");
        sub->add_option("--precision", precision, "significant digits in output")
            ->check(CLI::Range(3, 17));
        sub->callback([this] { run(); });
    }

    void apply_config() {
        if (config.empty()) return;
        ordered_json j = ordered_json::parse(dsim::detail::open_in(config));
        auto take = [&](CLI::Option* opt, const char* key, auto& dst) {
            if (opt->count() == 0 && j.contains(key))
                dst = j.at(key).get<std::decay_t<decltype(dst)>>();
        };
        take(o_model, "type", model);
        take(o_drift, "drift", drift);
        take(o_a, "a", a);
        take(o_h, "H", H);
        take(o_alpha, "alpha", alpha);
        take(o_lambda, "lambda", lambda);
        take(o_t, "T", T);
        take(o_m, "M", M);
        take(o_grid, "grid", grid);
        take(o_p, "p", p);
        take(o_sigma, "sigma", sigma);
        if (o_theta->count() == 0 && j.contains("theta")) {
            theta.clear();
            for (const auto& row : j.at("theta"))
                for (const auto& v : row) theta.push_back(v.get<double>());
        }
        if (o_phi->count() == 0 && j.contains("phi")) {
            phi.clear();
            for (const auto& row : j.at("phi"))
                for (const auto& v : row) phi.push_back(v.get<double>());
        }
    }

    void run() {
        apply_config();
        if (model == "pcar") {
            run_pcar();
            return;
        }
        const auto [a_eff, l_eff] = resolve_scales(alpha, lambda, T, "simulate");
        dsim::SampledPath path = [&] {
            if (model == "sbm") {
                const dsim::SbmModel m(H, l_eff, dsim::drift_from_name(drift), a);
                if (grid == "geometric")
                    return dsim::simulate_sbm(m, dsim::GridVariant{dsim::ScaleGrid{a_eff, T, M}}, seed);
                return dsim::simulate_sbm(
                    m, dsim::GridVariant{dsim::EquispacedScaleGrid{l_eff, T, M}}, seed);
            }
            if (grid != "geometric")
                throw std::domain_error("simulate: dsiar lives on the geometric lattice (--grid geometric)");
            if (theta.empty()) throw std::domain_error("simulate: dsiar needs --theta (or a config file)");
            if (sigma.empty()) sigma.assign(T, 1.0);
            const dsim::DsiarModel m(H, a_eff, T, p, coef_rows(theta, p, T, "simulate --theta"), sigma);
            return dsim::simulate_dsiar(m, dsim::ScaleGrid{a_eff, T, M}, seed, burn_in);
        }();
        dsim::write_path_csv(path, out, precision);
        std::cout << "wrote " << out << " (" << path.size() << " samples)\n";
    }

    void run_pcar() {
        if (phi.empty()) throw std::domain_error("simulate: pcar needs --phi (or a config file)");
        if (sigma.empty()) sigma.assign(T, 1.0);
        const dsim::PcarModel m(p, T, coef_rows(phi, p, T, "simulate --phi"), sigma);
        const auto y = dsim::simulate_pcar(m, static_cast<std::size_t>(M) * T, seed, burn_in);
        auto f = dsim::detail::open_out(out);
        f << "n,y\n";
        for (std::size_t n = 0; n < y.size(); ++n)
            f << n << ',' << dsim::format_sig(y[n], precision) << '\n';
        ordered_json meta;
        meta["model"] = "pcar";
        meta["seed"] = seed;
        meta["grid"] = "none";
        meta["T"] = T;
        meta["M"] = M;
        meta["p"] = p;
        auto side = dsim::detail::open_out(dsim::sidecar_name(out));
        side << meta.dump(2) << '\n';
        std::cout << "wrote " << out << " (" << y.size() << " samples)\n";
    }
};

// -------------------------------------------------------------- verify-cov
struct VerifyCmd {
    std::string from_path;
    double H = 0.8;
    double alpha = 1.05;
    int T = 6;
    int M = 500;
    std::string drift = "none";
    std::uint64_t seed = 0;
    long long n = 9, k = 3, v = 2;
    std::string out;
    int precision = 12;
    CLI::Option *o_h = nullptr, *o_seed = nullptr;

    void register_on(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "verify-cov", "compare the lag estimator, the seasonal-table closed form, and the analytic value");
        sub->add_option("--from-path", from_path, "existing path CSV (with sidecar)")
            ->check(CLI::ExistingFile);
        o_h = sub->add_option("--H", H, "index used for estimation (default: sidecar/model H)");
        sub->add_option("--alpha", alpha, "per-sample ratio for the in-run simulation");
        sub->add_option("--T", T, "samples per interval");
        sub->add_option("--M", M, "scale intervals");
        sub->add_option("--drift", drift, "none | const | sin | random")
            ->check(CLI::IsMember({"none", "const", "sin", "random"}));
        o_seed = sub->add_option("--seed", seed, "RNG seed (required unless --from-path)");
        sub->add_option("--n", n, "lattice index n of the tested covariance R_n(tau)");
        sub->add_option("--k", k, "whole periods in the lag, tau = k T + v");
        sub->add_option("--v", v, "within-period part of the lag");
        sub->add_option("--out", out, "also write the JSON report here");
        sub->add_option("--precision", precision, "significant digits")->check(CLI::Range(3, 17));
        sub->callback([this] { run(); });
    }

    void run() {
        dsim::SampledPath path = [&] {
            if (!from_path.empty()) return dsim::read_path(from_path);
            if (o_seed->count() == 0)
                throw std::domain_error("verify-cov: --seed is required when simulating in-run");
            const dsim::ScaleGrid g{alpha, T, M};
            const dsim::SbmModel m(H, g.lambda(), dsim::drift_from_name(drift));
            return dsim::simulate_sbm(m, dsim::GridVariant{g}, seed);
        }();
        const dsim::ScaleGrid& g = path.scale_grid();
        const double h_used =
            (o_h->count() == 0 && !from_path.empty() && path.meta.H) ? *path.meta.H : H;
        const long long tau = k * g.T + v;

        const double lhs = dsim::estimate_r_n_tau(path, h_used, n, tau);
        const auto table = dsim::estimate_seasonal(path, h_used);
        const double rhs = dsim::covariance_dsim(table, n, tau);
        const auto rep = dsim::check_admissible(table);

        std::optional<double> analytic;
        if (path.meta.model.rfind("sbm", 0) == 0)
            analytic = dsim::sbm_cov(h_used, g.lambda(), dsim::pow_scale(g.alpha, static_cast<double>(n + tau)),
                                     dsim::pow_scale(g.alpha, static_cast<double>(n)),
                                     path.meta.drift == "random");

        ordered_json rj;
        rj["model"] = path.meta.model;
        rj["seed"] = path.meta.seed;
        rj["alpha"] = dsim::json_sig(g.alpha, precision);
        rj["T"] = g.T;
        rj["M"] = g.M;
        rj["H_used"] = dsim::json_sig(h_used, precision);
        rj["n"] = n;
        rj["k"] = k;
        rj["v"] = v;
        rj["tau"] = tau;
        rj["lhs"] = dsim::json_sig(lhs, precision);
        rj["rhs"] = dsim::json_sig(rhs, precision);
        const double denom = analytic ? std::abs(*analytic) : std::max(std::abs(lhs), std::abs(rhs));
        if (analytic) rj["analytic"] = dsim::json_sig(*analytic, precision);
        else rj["analytic"] = nullptr;
        rj["rel_gaps"]["lhs_rhs"] = dsim::json_sig(std::abs(lhs - rhs) / denom, precision);
        if (analytic) {
            rj["rel_gaps"]["lhs_analytic"] = dsim::json_sig(std::abs(lhs - *analytic) / denom, precision);
            rj["rel_gaps"]["rhs_analytic"] = dsim::json_sig(std::abs(rhs - *analytic) / denom, precision);
        }
        rj["admissible"] = rep.admissible;
        rj["margins"] = ordered_json::array();
        for (double m : rep.margins) rj["margins"].push_back(dsim::json_sig(m, precision));
        if (rep.first_violation) rj["first_violation"] = *rep.first_violation;
        emit_report(rj, out);
    }
};

// ----------------------------------------------------------- estimate-hurst
struct HurstCmd {
    std::string from_path;
    double H = 0.5;
    double lambda = 1.2;
    int T = 200;
    int M = 30;
    std::string drift = "random";
    std::uint64_t seed = 0;
    bool mle = false;
    std::string out;
    int precision = 12;
    CLI::Option* o_seed = nullptr;

    void register_on(CLI::App& app) {
        auto* sub = app.add_subcommand("estimate-hurst",
                                       "variation-ratio Hurst estimate on an equispaced-scale path");
        sub->add_option("--from-path", from_path, "existing path CSV (equispaced grid)")
            ->check(CLI::ExistingFile);
        sub->add_option("--H", H, "true index for the in-run simulation");
        sub->add_option("--lambda", lambda, "scale ratio");
        sub->add_option("--T", T, "samples per interval");
        sub->add_option("--M", M, "scale intervals");
        sub->add_option("--drift", drift, "none | const | sin | random")
            ->check(CLI::IsMember({"none", "const", "sin", "random"}));
        o_seed = sub->add_option("--seed", seed, "RNG seed (required unless --from-path)");
        sub->add_flag("--mle", mle, "also run the maximum-likelihood baseline");
        sub->add_option("--out", out, "also write the JSON report here");
        sub->add_option("--precision", precision, "significant digits")->check(CLI::Range(3, 17));
        sub->callback([this] { run(); });
    }

    void run() {
        dsim::SampledPath path = [&] {
            if (!from_path.empty()) return dsim::read_path(from_path);
            if (o_seed->count() == 0)
                throw std::domain_error("estimate-hurst: --seed is required when simulating in-run");
            const dsim::SbmModel m(H, lambda, dsim::drift_from_name(drift));
            return dsim::simulate_sbm(m, dsim::GridVariant{dsim::EquispacedScaleGrid{lambda, T, M}},
                                      seed);
        }();
        const auto est = dsim::hurst_variation(path);

        ordered_json rj;
        rj["model"] = path.meta.model;
        rj["seed"] = path.meta.seed;
        rj["h1"] = dsim::json_sig(est.h1, precision);
        rj["h2"] = dsim::json_sig(est.h2, precision);
        rj["mu1"] = ordered_json::array();
        rj["mu2"] = ordered_json::array();
        for (double m : est.mu1) rj["mu1"].push_back(dsim::json_sig(m, precision));
        for (double m : est.mu2) rj["mu2"].push_back(dsim::json_sig(m, precision));
        if (mle) {
            dsim::MleConfig cfg;
            cfg.random_drift = (path.meta.drift == "random");
            const auto res = dsim::hurst_mle(path, cfg);
            rj["h_mle"] = dsim::json_sig(res.h, precision);
            rj["mle_flat_warning"] = res.flat_warning;
            rj["mle_profile"] = ordered_json::array();
            for (const auto& [hh, ll] : res.profile)
                rj["mle_profile"].push_back({dsim::json_sig(hh, precision), dsim::json_sig(ll, precision)});
        }
        emit_report(rj, out);
    }
};

// ---------------------------------------------------------------- spectral
struct SpectralCmd {
    std::string table_file;
    std::string from_path;
    double H = 0.0;
    int omega_points = 256;
    long long qn = 0, qtau = 1;
    std::string out = "spectral.csv";
    std::string table_out;
    std::string q_out;
    int precision = 12;
    CLI::Option* o_h = nullptr;

    void register_on(CLI::App& app) {
        auto* sub = app.add_subcommand("spectral",
                                       "evaluate the density matrix of a seasonal table on an omega grid");
        sub->add_option("--table", table_file, "seasonal table JSON {H, alpha, T, r0, r1}")
            ->check(CLI::ExistingFile);
        sub->add_option("--from-path", from_path, "estimate the table from this path CSV first")
            ->check(CLI::ExistingFile);
        o_h = sub->add_option("--H", H, "index for estimation (default: sidecar H)");
        sub->add_option("--omega-points", omega_points, "uniform grid size on [0, 2pi)")
            ->check(CLI::Range(1, 1 << 20));
        sub->add_option("--n", qn, "block index for the --q-out export");
        sub->add_option("--tau", qtau, "block lag for the --q-out export");
        sub->add_option("--out", out, "density CSV path");
        sub->add_option("--table-out", table_out, "write the table that was used");
        sub->add_option("--q-out", q_out, "write the block covariance Q(n, tau) CSV");
        sub->add_option("--precision", precision, "significant digits")->check(CLI::Range(3, 17));
        sub->callback([this] { run(); });
    }

    void run() {
        if (table_file.empty() == from_path.empty())
            throw std::domain_error("spectral: pass exactly one of --table and --from-path");
        const dsim::SeasonalCovariance c = [&] {
            if (!table_file.empty()) return dsim::read_seasonal_json(table_file);
            const auto path = dsim::read_path(from_path);
            const double h_used = o_h->count() ? H : (path.meta.H ? *path.meta.H : 0.0);
            if (!(h_used > 0.0))
                throw std::domain_error("spectral: pass --H (the sidecar carries no H)");
            return dsim::estimate_seasonal(path, h_used);
        }();

        const auto rep = dsim::check_admissible(c);
        if (!rep.admissible)
            throw std::domain_error("spectral: table not admissible, r1[j]^2 > r0[j] r0[j+1] at j = " +
                                    std::to_string(*rep.first_violation));
        const double rho = dsim::spectral_rho(c);
        if (!(std::abs(rho) < 1.0))
            throw std::domain_error("spectral: need |rho| < 1, got rho = " + std::to_string(rho));

        dsim::write_spectral_csv(c, omega_points, out, precision);
        if (!table_out.empty()) dsim::write_seasonal_json(c, table_out, precision);
        if (!q_out.empty()) dsim::write_q_csv(dsim::q_matrix(c, qn, qtau), q_out, precision);

        ordered_json rj;
        rj["out"] = out;
        rj["T"] = c.T;
        rj["omega_points"] = omega_points;
        rj["rho"] = dsim::json_sig(rho, precision);
        std::cout << rj.dump(2) << '\n';
    }
};

// --------------------------------------------------------------- mae-bench
struct BenchCmd {
    std::vector<double> h_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double lambda = 1.2;
    int T = 200;
    int M = 30;
    int reps = 30;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    bool skip_mle = false;
    std::string out = "mae.csv";
    int precision = 12;

    void register_on(CLI::App& app) {
        auto* sub = app.add_subcommand(
            "mae-bench", "MAE of the Hurst estimators over seeded replicates of the random-drift model");
        sub->add_option("--H-list", h_list, "true H values to sweep")->delimiter(',');
        sub->add_option("--lambda", lambda, "scale ratio");
        sub->add_option("--T", T, "samples per interval");
        sub->add_option("--M", M, "scale intervals");
        sub->add_option("--reps", reps, "replicates per H")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "base RNG seed")->required();
        sub->add_option("--jobs", jobs, "worker threads (default: hardware)");
        sub->add_flag("--skip-mle", skip_mle, "benchmark only the variation estimators");
        sub->add_option("--out", out, "summary CSV path; per-replicate data goes to <out stem>_long.csv");
        sub->add_option("--precision", precision, "significant digits")->check(CLI::Range(3, 17));
        sub->callback([this] { run(); });
    }

    std::string long_name() const {
        const auto dot = out.rfind('.');
        if (dot == std::string::npos || out.find('/', dot) != std::string::npos) return out + "_long";
        return out.substr(0, dot) + "_long" + out.substr(dot);
    }

    void run() {
        if (h_list.empty()) throw std::domain_error("mae-bench: --H-list must not be empty");
        for (double h : h_list)
            if (!(h > 0.0) || !std::isfinite(h))
                throw std::domain_error("mae-bench: H values must be positive and finite");

        const std::size_t n_tasks = h_list.size() * static_cast<std::size_t>(reps);
        std::vector<double> e1(n_tasks), e2(n_tasks), em(n_tasks, 0.0);

        std::atomic<std::size_t> next{0};
        std::mutex err_mutex;
        std::exception_ptr first_error;

        auto worker = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= n_tasks) return;
                {
                    std::lock_guard lock(err_mutex);
                    if (first_error) return;
                }
                try {
                    const std::size_t ih = t / static_cast<std::size_t>(reps);
                    const int rep = static_cast<int>(t % static_cast<std::size_t>(reps));
                    // chain rather than xor so nearby (seed, ih) cells cannot
                    // land on the same replicate stream
                    const std::uint64_t hseed =
                        dsim::replicate_seed(seed ^ 0x6D61652D62656E63ULL, ih);
                    const std::uint64_t rseed = dsim::replicate_seed(hseed, rep);
                    const dsim::SbmModel m(h_list[ih], lambda, dsim::DriftKind::random);
                    const auto path = dsim::simulate_sbm(
                        m, dsim::GridVariant{dsim::EquispacedScaleGrid{lambda, T, M}}, rseed);
                    const auto est = dsim::hurst_variation(path);
                    e1[t] = est.h1;
                    e2[t] = est.h2;
                    if (!skip_mle) {
                        dsim::MleConfig cfg;
                        cfg.random_drift = true;
                        em[t] = dsim::hurst_mle(path, cfg).h;
                    }
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };

        unsigned n_jobs = jobs ? jobs : std::thread::hardware_concurrency();
        n_jobs = std::clamp<unsigned>(n_jobs, 1, static_cast<unsigned>(n_tasks));
        std::vector<std::thread> pool;
        pool.reserve(n_jobs);
        for (unsigned i = 0; i < n_jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);

        std::vector<std::size_t> order(h_list.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return h_list[a] < h_list[b]; });

        auto mae = [&](const std::vector<double>& est, std::size_t ih) {
            double s = 0.0;
            for (int r = 0; r < reps; ++r)
                s += std::abs(est[ih * static_cast<std::size_t>(reps) + r] - h_list[ih]);
            return s / static_cast<double>(reps);
        };

        auto f = dsim::detail::open_out(out);
        f << "H_true,estimator,mae,n_reps\n";
        for (std::size_t ih : order) {
            f << dsim::format_sig(h_list[ih], precision) << ",h1," << dsim::format_sig(mae(e1, ih), precision)
              << ',' << reps << '\n';
            f << dsim::format_sig(h_list[ih], precision) << ",h2," << dsim::format_sig(mae(e2, ih), precision)
              << ',' << reps << '\n';
            if (!skip_mle)
                f << dsim::format_sig(h_list[ih], precision) << ",mle,"
                  << dsim::format_sig(mae(em, ih), precision) << ',' << reps << '\n';
        }

        auto fl = dsim::detail::open_out(long_name());
        fl << "H_true,estimator,rep,estimate\n";
        for (std::size_t ih : order)
            for (int r = 0; r < reps; ++r) {
                const std::size_t t = ih * static_cast<std::size_t>(reps) + r;
                fl << dsim::format_sig(h_list[ih], precision) << ",h1," << r << ','
                   << dsim::format_sig(e1[t], precision) << '\n';
                fl << dsim::format_sig(h_list[ih], precision) << ",h2," << r << ','
                   << dsim::format_sig(e2[t], precision) << '\n';
                if (!skip_mle)
                    fl << dsim::format_sig(h_list[ih], precision) << ",mle," << r << ','
                       << dsim::format_sig(em[t], precision) << '\n';
            }
        std::cout << "wrote " << out << " and " << long_name() << '\n';
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scale-invariant process toolkit"};
    app.require_subcommand(1);

    SimulateCmd simulate;
    VerifyCmd verify;
    HurstCmd hurst;
    SpectralCmd spectral;
    BenchCmd bench;
    simulate.register_on(app);
    verify.register_on(app);
    hurst.register_on(app);
    spectral.register_on(app);
    bench.register_on(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
