#include "clusterfid/runner.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "clusterfid/analytics.hpp"
#include "clusterfid/bench.hpp"
#include "clusterfid/refocus.hpp"
#include "clusterfid/teleport.hpp"
#include "clusterfid/verify.hpp"

namespace cfid::runner {

using nlohmann::json;

namespace {

ErrorModel to_model(const ErrorOpts& e) {
    return e.gaussian ? ErrorModel::gaussian(e.sigma, e.seed) : ErrorModel::uniform(e.eps);
}

json error_json(const ErrorOpts& e) {
    json j;
    if (e.gaussian) {
        j["model"] = "gaussian";
        j["sigma"] = e.sigma;
        j["seed"] = e.seed;
    } else {
        j["model"] = "uniform";
        j["eps"] = e.eps;
    }
    return j;
}

RunManifest make_manifest(const std::string& command, const json& config, uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.resolved_config = config.dump();
    m.master_seed = seed;
    m.started_at = utc_timestamp_now();
    return m;
}

json manifest_json(const RunManifest& m) {
    json j;
    j["tool"] = kToolName;
    j["version"] = m.version;
    j["command"] = m.command;
    j["seed"] = m.master_seed;
    j["config"] = json::parse(m.resolved_config);
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    j["outputs"] = m.outputs;
    return j;
}

std::string record_string(const MeasurementRecord& rec) {
    std::string s;
    s.reserve(rec.s.size());
    for (uint8_t b : rec.s) s += static_cast<char>('0' + b);
    return s;
}

void finish(CommandOutput& out, const std::string& path) {
    out.manifest.finished_at = utc_timestamp_now();
    if (!path.empty()) {
        out.manifest.outputs.push_back(path);
        write_file(path, out.text);
    }
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double d = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / d;
}

json mat4_json(const Mat4& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

CommandOutput run_teleport(const TeleportOpts& opts) {
    ChainSpec spec{interaction_from_string(opts.kind), opts.n, to_model(opts.error)};
    spec.validate();
    const BlochOrientation input{opts.theta0, opts.phi0};

    json config{{"kind", opts.kind},
                {"n", opts.n},
                {"theta0", opts.theta0},
                {"phi0", opts.phi0},
                {"error", error_json(opts.error)},
                {"refresh_window", opts.refresh_window},
                {"verbose", opts.verbose}};
    CommandOutput out;
    out.manifest = make_manifest("teleport", config, opts.error.seed);

    const FidelityReport rep = opts.refresh_window > 0
                                   ? refresh_teleport(spec, input, opts.refresh_window)
                                   : teleport_fidelity(spec, input);

    json j;
    j["kind"] = to_string(spec.kind);
    j["n"] = spec.n_total;
    j["theta0"] = input.theta0;
    j["phi0"] = input.phi0;
    j["bond_errors"] = rep.bond_errors;
    j["weighted_fidelity"] = rep.weighted_fidelity;
    j["min_branch"] = rep.min_branch;
    j["max_branch"] = rep.max_branch;
    j["branch_spread"] = rep.branch_spread;
    j["excluded_mass"] = rep.excluded_mass;
    j["channel"] = to_string(rep.channel);
    if (opts.verbose) {
        json branches = json::array();
        for (size_t i = 0; i < rep.branches.size(); ++i) {
            const Branch& b = rep.branches[i];
            branches.push_back({{"record", record_string(b.record)},
                                {"probability", b.probability},
                                {"fidelity", rep.branch_fidelities[i]},
                                {"valid", b.valid}});
        }
        j["branches"] = std::move(branches);
    }
    out.manifest.finished_at = utc_timestamp_now();
    j["manifest"] = manifest_json(out.manifest);
    out.text = j.dump(2) + "\n";
    return out;
}

CommandOutput run_bloch_map(const BlochMapOpts& opts) {
    const InteractionKind kind = interaction_from_string(opts.kind);
    ChainSpec probe{kind, opts.n, ErrorModel::uniform(opts.eps)};
    probe.validate();

    json config{{"kind", opts.kind}, {"n", opts.n},       {"eps", opts.eps},
                {"samples", opts.samples}, {"seed", opts.seed}, {"out", opts.out}};
    CommandOutput out;
    out.manifest = make_manifest("bloch-map", config, opts.seed);

    const BondErrors errors(static_cast<size_t>(opts.n - 1), opts.eps);
    const auto transfers = branch_transfers(kind, opts.n, errors);
    const ByproductVariant variant = byproduct_for(kind);

    std::string csv = csv_manifest_block(out.manifest);
    csv += "theta0,phi0,x,y,z,fidelity\n";
    for (int i = 0; i < opts.samples; ++i) {
        Rng rng(derive_seed(opts.seed, static_cast<uint64_t>(i)));
        const BlochOrientation r = sample_bloch_uniform(rng);
        const double f = weighted_fidelity(transfers, state_from_orientation(r), variant);
        const auto v = orientation_vector(r);
        csv += csv_row({format_double(r.theta0), format_double(r.phi0), format_double(f * v[0]),
                        format_double(f * v[1]), format_double(f * v[2]), format_double(f)});
    }
    out.text = std::move(csv);
    finish(out, opts.out);
    return out;
}

CommandOutput run_min_curve(const MinCurveOpts& opts) {
    SweepConfig cfg;
    cfg.kind = interaction_from_string(opts.kind);
    cfg.n_list = opts.n;
    cfg.eps_grid = opts.eps;
    cfg.mode = SweepConfig::Mode::Uniform;
    cfg.samples = opts.samples;
    cfg.master_seed = opts.seed;
    cfg.jobs = opts.jobs;

    json config{{"kind", opts.kind}, {"n", opts.n},       {"eps", opts.eps},
                {"samples", opts.samples}, {"seed", opts.seed}, {"out", opts.out}};
    CommandOutput out;
    out.manifest = make_manifest("min-curve", config, opts.seed);

    const auto points = min_fidelity_curve(cfg);
    std::string csv = csv_manifest_block(out.manifest);
    csv += "kind,n,eps,statistic,value,samples,seed\n";
    const std::string seed_s = std::to_string(opts.seed);
    for (const auto& p : points) {
        const std::string n_s = std::to_string(p.n);
        const std::string eps_s = format_double(p.eps);
        auto row = [&](const std::string& stat, double value) {
            csv += csv_row({opts.kind, n_s, eps_s, stat, format_double(value),
                            std::to_string(p.samples), seed_s});
        };
        row("sampled_min", p.sampled_min);
        row("anchor_xz", p.anchor_xz);
        row("anchor_y", p.anchor_y);
        if (cfg.kind != InteractionKind::CP) row("closed_form_min", min_f_zz(p.n, p.eps));
    }
    out.text = std::move(csv);
    finish(out, opts.out);
    return out;
}

CommandOutput run_histogram(const HistogramOpts& opts) {
    SweepConfig cfg;
    cfg.kind = interaction_from_string(opts.kind);
    cfg.n_list = {opts.n};
    cfg.sigma_grid = opts.sigma;
    cfg.mode = SweepConfig::Mode::Gaussian;
    cfg.samples = opts.samples;
    cfg.master_seed = opts.seed;
    cfg.bin_width = opts.bin_width;
    cfg.jobs = opts.jobs;

    json config{{"kind", opts.kind},       {"n", opts.n},
                {"sigma", opts.sigma},     {"samples", opts.samples},
                {"seed", opts.seed},       {"bin_width", opts.bin_width},
                {"out", opts.out}};
    CommandOutput out;
    out.manifest = make_manifest("histogram", config, opts.seed);

    std::string csv = csv_manifest_block(out.manifest);
    csv += "kind,n,sigma,statistic,value,samples,seed\n";
    const std::string seed_s = std::to_string(opts.seed);
    for (double sigma : opts.sigma) {
        const HistogramStats st = disorder_histogram(cfg, opts.n, sigma);
        const std::string sigma_s = format_double(sigma);
        auto row = [&](const std::string& stat, const std::string& value) {
            csv += csv_row({opts.kind, std::to_string(opts.n), sigma_s, stat, value,
                            std::to_string(st.samples), seed_s});
        };
        row("unity_mass", format_double(st.unity_mass));
        row("exact_unity_count", std::to_string(st.exact_unity_count));
        row("lower_half_max_fidelity", format_double(st.lower_half_max_fidelity));
        row("mode_bin_center", format_double(st.bin_centers.empty()
                                                 ? 0.0
                                                 : st.bin_centers[static_cast<size_t>(st.mode_bin)]));
        row("min_fidelity", format_double(st.min_fidelity));
        row("mean_fidelity", format_double(st.mean_fidelity));
        for (size_t b = 0; b < st.bin_centers.size(); ++b) {
            char name[48];
            std::snprintf(name, sizeof(name), "bin_count_%.6f", st.bin_centers[b]);
            row(name, std::to_string(st.counts[b]));
        }
    }
    out.text = std::move(csv);
    finish(out, opts.out);
    return out;
}

CommandOutput run_threshold(const ThresholdOpts& opts) {
    const InteractionKind kind = interaction_from_string(opts.kind);

    json config{{"kind", opts.kind}, {"n", opts.n}, {"grid", opts.grid}, {"out", opts.out}};
    CommandOutput out;
    out.manifest = make_manifest("threshold", config, 0);

    std::string csv = csv_manifest_block(out.manifest);
    csv += "kind,n,eps,statistic,value,samples,seed\n";
    for (int n : opts.n) {
        const ThresholdResult res = threshold_crossing(kind, n, opts.grid);
        const std::string n_s = std::to_string(n);
        auto row = [&](const std::string& stat, const std::string& value) {
            csv += csv_row({opts.kind, n_s, "", stat, value, "0", "0"});
        };
        row("crossing_eps", res.found ? format_double(res.eps) : "none");
        if (res.found) row("crossing_fidelity", format_double(res.fidelity));
        if (kind != InteractionKind::CP) row("closed_form_eps_max", format_double(eps_max(n)));
    }
    out.text = std::move(csv);
    finish(out, opts.out);
    return out;
}

CommandOutput run_refocus(const RefocusOpts& opts) {
    const InteractionKind family = interaction_from_string(opts.family);

    double pulse, theta;
    if (family == InteractionKind::CP) {
        theta = opts.theta.value_or(kPi / 4.0);
        pulse = opts.pulse_angle.value_or(std::acos(theta / (16.0 * kPi)));
    } else {
        pulse = opts.pulse_angle.value_or(kPi / 3.0);
        theta = opts.theta.value_or(matched_theta(pulse));
    }

    json config{{"family", opts.family},   {"theta", theta},
                {"pulse_angle", pulse},    {"eps_grid", opts.eps_grid},
                {"dump_sequence", opts.dump_sequence}};
    CommandOutput out;
    out.manifest = make_manifest("refocus", config, 0);

    auto ideal = [&]() -> Mat4 {
        switch (family) {
            case InteractionKind::ZZ: return u_zz(theta, 0.0);
            case InteractionKind::XY: return u_xy(theta, 0.0);
            case InteractionKind::CP: return v_cp_target(theta);
        }
        throw std::logic_error("unreachable");
    }();
    auto raw_gate = [&](double e) -> Mat4 {
        switch (family) {
            case InteractionKind::ZZ: return u_zz(theta, e);
            case InteractionKind::XY: return u_xy(theta, e);
            case InteractionKind::CP: return u_cp(theta / 4.0, e);
        }
        throw std::logic_error("unreachable");
    };
    auto refocused = [&](double e) -> CompositeGate {
        switch (family) {
            case InteractionKind::ZZ: return v_zz(theta, e, pulse);
            case InteractionKind::XY: return v_xy(theta, e, pulse);
            case InteractionKind::CP: return v_cp(theta, e, pulse);
        }
        throw std::logic_error("unreachable");
    };

    std::vector<double> raw_inf, ref_inf;
    for (double e : opts.eps_grid) {
        raw_inf.push_back(1.0 - gate_fidelity_2q(raw_gate(e), ideal));
        ref_inf.push_back(1.0 - gate_fidelity_2q(refocused(e).matrix, ideal));
    }

    json j;
    j["family"] = opts.family;
    j["theta"] = theta;
    j["pulse_angle"] = pulse;
    j["eps_grid"] = opts.eps_grid;
    j["raw_infidelity"] = raw_inf;
    j["refocused_infidelity"] = ref_inf;

    const bool coeff_vanishes = std::abs(std::sin(2.0 * pulse)) < 1e-6 &&
                                family != InteractionKind::CP;
    if (coeff_vanishes) {
        j["warning"] =
            "sin(2*pulse_angle) ~ 0: the eps^4 coefficient vanishes; slope fit skipped";
    } else if (opts.eps_grid.size() >= 2) {
        j["slopes"] = {{"raw", loglog_slope(opts.eps_grid, raw_inf)},
                       {"refocused", loglog_slope(opts.eps_grid, ref_inf)}};
    }

    {
        const double e0 = opts.eps_grid.front();
        const double raw_coeff = raw_infidelity_coeff(
            family, family == InteractionKind::CP ? theta : pulse);
        const double ref_coeff = refocused_infidelity_coeff(
            family, family == InteractionKind::CP ? theta : pulse);
        j["coefficients"] = {
            {"raw_measured", raw_inf.front() / (e0 * e0)},
            {"raw_analytic", raw_coeff},
            {"refocused_measured", ref_inf.front() / std::pow(e0, 4)},
            {"refocused_analytic", ref_coeff},
        };
    }

    if (family != InteractionKind::CP) {
        const auto est = second_order_error(
            [&](double e) { return refocused(e).matrix; }, ideal, 1e-3);
        const Mat4 analytic =
            family == InteractionKind::ZZ ? delta_u_zz(pulse) : delta_u_xy(pulse);
        j["leading_error"] = {{"measured", mat4_json(est)},
                              {"analytic", mat4_json(analytic)},
                              {"max_abs_dev", max_abs_diff(est, analytic)}};
    }

    if (opts.dump_sequence) {
        const CompositeGate g = refocused(opts.eps_grid.front());
        json pulses = json::array();
        // listed operator-style; action order is last-to-first
        for (auto it = g.sequence.pulses.rbegin(); it != g.sequence.pulses.rend(); ++it)
            pulses.push_back(to_string(*it));
        j["sequence_in_action_order"] = std::move(pulses);
        j["two_qubit_pulse_count"] = g.sequence.two_qubit_count();
    }

    out.manifest.finished_at = utc_timestamp_now();
    j["manifest"] = manifest_json(out.manifest);
    out.text = j.dump(2) + "\n";
    return out;
}

int run_verify(const VerifyOpts& opts, std::ostream& os) {
    const auto results = verify::run_acceptance(opts.only);
    if (results.empty()) {
        os << "no acceptance checks match filter '" << opts.only << "'\n";
        return 2;
    }
    bool all_pass = true;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  [" << r.group << "] "
           << r.description << "\n      " << r.details << "\n";
        all_pass &= r.pass;
    }
    os << (all_pass ? "all checks passed" : "SOME CHECKS FAILED") << " (" << results.size()
       << " run)\n";
    return all_pass ? 0 : 1;
}

}  // namespace cfid::runner
