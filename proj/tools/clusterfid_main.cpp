// Command-line front end. All numerics live in the core library; this file
// only maps flags and the optional JSON config file onto option structs.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterfid/report.hpp"
#include "clusterfid/runner.hpp"

namespace {

using nlohmann::json;

// Precedence: flags > config file > CLUSTERFID_SEED (seed only) > defaults.
// The config file is flat JSON keyed by long option names per subcommand:
//   {"teleport": {"kind": "zz", "n": 5, ...}, "seed": 42}
json load_config(int argc, char** argv) {
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    json j;
    in >> j;
    return j;
}

uint64_t default_seed(const json& config) {
    if (config.contains("seed")) return config["seed"].get<uint64_t>();
    if (const char* env = std::getenv("CLUSTERFID_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

template <typename T>
void from_config(const json& section, const char* key, T& value) {
    if (section.contains(key)) value = section[key].get<T>();
}

json section(const json& config, const char* name) {
    return config.contains(name) ? config[name] : json::object();
}

void emit(const cfid::runner::CommandOutput& out, bool to_stdout) {
    if (to_stdout) std::cout << out.text;
    for (const auto& f : out.manifest.outputs) std::cerr << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster-chain teleportation fidelity toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");

    json config;
    try {
        config = load_config(argc, argv);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    const uint64_t seed0 = default_seed(config);

    // teleport ---------------------------------------------------------------
    cfid::runner::TeleportOpts tp;
    tp.error.seed = seed0;
    {
        const json s = section(config, "teleport");
        from_config(s, "kind", tp.kind);
        from_config(s, "n", tp.n);
        from_config(s, "theta0", tp.theta0);
        from_config(s, "phi0", tp.phi0);
        from_config(s, "eps", tp.error.eps);
        if (s.contains("sigma")) {
            tp.error.gaussian = true;
            tp.error.sigma = s["sigma"].get<double>();
        }
        from_config(s, "seed", tp.error.seed);
        from_config(s, "refresh-window", tp.refresh_window);
    }
    auto* c_tp = app.add_subcommand("teleport", "weighted teleportation fidelity of one chain");
    c_tp->add_option("--kind", tp.kind, "cp | zz | xy");
    c_tp->add_option("--n", tp.n, "chain length (odd, >= 3)");
    c_tp->add_option("--theta0", tp.theta0, "input polar angle (radians)");
    c_tp->add_option("--phi0", tp.phi0, "input azimuth (radians)");
    double tp_sigma_val = 0.0;
    auto* tp_eps = c_tp->add_option("--eps", tp.error.eps, "uniform fractional gate error");
    auto* tp_sigma =
        c_tp->add_option("--sigma", tp_sigma_val, "per-bond Gaussian error width");
    tp_sigma->excludes(tp_eps);
    c_tp->add_option("--seed", tp.error.seed, "seed for the Gaussian error draw");
    c_tp->add_option("--refresh-window", tp.refresh_window,
                     "simulate with at most this many live qubits (0 = full chain)");
    c_tp->add_flag("--verbose", tp.verbose, "include the per-branch list");

    // bloch-map ----------------------------------------------------------------
    cfid::runner::BlochMapOpts bm;
    bm.seed = seed0;
    {
        const json s = section(config, "bloch-map");
        from_config(s, "kind", bm.kind);
        from_config(s, "n", bm.n);
        from_config(s, "eps", bm.eps);
        from_config(s, "samples", bm.samples);
        from_config(s, "seed", bm.seed);
        from_config(s, "out", bm.out);
    }
    auto* c_bm = app.add_subcommand("bloch-map", "fidelity-scaled Bloch point cloud (CSV)");
    c_bm->add_option("--kind", bm.kind, "cp | zz | xy");
    c_bm->add_option("--n", bm.n, "chain length");
    c_bm->add_option("--eps", bm.eps, "uniform fractional gate error");
    c_bm->add_option("--samples", bm.samples, "number of sampled input orientations");
    c_bm->add_option("--seed", bm.seed, "master seed");
    c_bm->add_option("--out", bm.out, "CSV output path");
    c_bm->add_option("--jobs", bm.jobs, "worker threads");

    // min-curve ------------------------------------------------------------------
    cfid::runner::MinCurveOpts mc;
    mc.seed = seed0;
    {
        const json s = section(config, "min-curve");
        from_config(s, "kind", mc.kind);
        from_config(s, "n", mc.n);
        from_config(s, "eps", mc.eps);
        from_config(s, "samples", mc.samples);
        from_config(s, "seed", mc.seed);
        from_config(s, "out", mc.out);
    }
    auto* c_mc = app.add_subcommand("min-curve", "minimum fidelity vs error strength (CSV)");
    c_mc->add_option("--kind", mc.kind, "cp | zz | xy");
    c_mc->add_option("--n", mc.n, "chain lengths (repeatable)");
    c_mc->add_option("--eps", mc.eps, "error grid (repeatable)");
    c_mc->add_option("--samples", mc.samples, "orientations per (n, eps) point");
    c_mc->add_option("--seed", mc.seed, "master seed");
    c_mc->add_option("--out", mc.out, "CSV output path");
    c_mc->add_option("--jobs", mc.jobs, "worker threads");

    // histogram ---------------------------------------------------------------
    cfid::runner::HistogramOpts hg;
    hg.seed = seed0;
    {
        const json s = section(config, "histogram");
        from_config(s, "kind", hg.kind);
        from_config(s, "n", hg.n);
        from_config(s, "sigma", hg.sigma);
        from_config(s, "samples", hg.samples);
        from_config(s, "seed", hg.seed);
        from_config(s, "bin-width", hg.bin_width);
        from_config(s, "out", hg.out);
    }
    auto* c_hg = app.add_subcommand("histogram", "disorder-averaged fidelity histogram (CSV)");
    c_hg->add_option("--kind", hg.kind, "cp | zz | xy");
    c_hg->add_option("--n", hg.n, "chain length");
    c_hg->add_option("--sigma", hg.sigma, "disorder widths (repeatable)");
    c_hg->add_option("--samples", hg.samples, "samples per sigma");
    c_hg->add_option("--seed", hg.seed, "master seed");
    c_hg->add_option("--bin-width", hg.bin_width, "histogram bin width");
    c_hg->add_option("--out", hg.out, "CSV output path");
    c_hg->add_option("--jobs", hg.jobs, "worker threads");

    // threshold ------------------------------------------------------------------
    cfid::runner::ThresholdOpts th;
    {
        const json s = section(config, "threshold");
        from_config(s, "kind", th.kind);
        from_config(s, "n", th.n);
        from_config(s, "grid", th.grid);
        from_config(s, "out", th.out);
    }
    auto* c_th = app.add_subcommand("threshold", "error at which Min(F) crosses 2/3 (CSV)");
    c_th->add_option("--kind", th.kind, "cp | zz | xy");
    c_th->add_option("--n", th.n, "chain lengths (repeatable)");
    c_th->add_option("--grid", th.grid, "direction-grid size for the CP minimum");
    c_th->add_option("--out", th.out, "CSV output path");

    // refocus ---------------------------------------------------------------------
    cfid::runner::RefocusOpts rf;
    double rf_theta = 0.0, rf_pulse = 0.0;
    {
        const json s = section(config, "refocus");
        from_config(s, "family", rf.family);
        if (s.contains("theta")) rf.theta = s["theta"].get<double>();
        if (s.contains("delta")) rf.pulse_angle = s["delta"].get<double>();
        if (s.contains("alpha")) rf.pulse_angle = s["alpha"].get<double>();
        if (s.contains("gamma")) rf.pulse_angle = s["gamma"].get<double>();
        from_config(s, "eps-grid", rf.eps_grid);
        from_config(s, "dump-sequence", rf.dump_sequence);
    }
    auto* c_rf = app.add_subcommand("refocus", "raw vs refocused composite-gate infidelity (JSON)");
    c_rf->add_option("--family", rf.family, "zz | xy | cp");
    auto* o_theta = c_rf->add_option("--theta", rf_theta,
                                     "interaction angle (cp: total conditional phase)");
    auto* o_delta = c_rf->add_option("--delta", rf_pulse, "Ising sandwich pulse angle");
    auto* o_alpha = c_rf->add_option("--alpha", rf_pulse, "XY sandwich pulse angle");
    auto* o_gamma = c_rf->add_option("--gamma", rf_pulse, "CP sandwich pulse angle");
    c_rf->add_option("--eps-grid", rf.eps_grid, "error grid (repeatable)");
    c_rf->add_flag("--dump-sequence", rf.dump_sequence, "emit the pulse list in action order");

    // verify --------------------------------------------------------------------
    cfid::runner::VerifyOpts vf;
    {
        const json s = section(config, "verify");
        from_config(s, "only", vf.only);
    }
    auto* c_vf = app.add_subcommand("verify", "run the acceptance checks");
    c_vf->add_option("--only", vf.only, "filter by check id or group (e.g. analytics)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_tp) {
            if (tp_sigma->count()) {
                tp.error.gaussian = true;
                tp.error.sigma = tp_sigma_val;
            }
            emit(cfid::runner::run_teleport(tp), true);
        } else if (*c_bm) {
            emit(cfid::runner::run_bloch_map(bm), bm.out.empty());
        } else if (*c_mc) {
            emit(cfid::runner::run_min_curve(mc), mc.out.empty());
        } else if (*c_hg) {
            emit(cfid::runner::run_histogram(hg), hg.out.empty());
        } else if (*c_th) {
            emit(cfid::runner::run_threshold(th), th.out.empty());
        } else if (*c_rf) {
            if (o_theta->count()) rf.theta = rf_theta;
            if (o_delta->count() || o_alpha->count() || o_gamma->count()) rf.pulse_angle = rf_pulse;
            emit(cfid::runner::run_refocus(rf), true);
        } else if (*c_vf) {
            return cfid::runner::run_verify(vf, std::cout);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
