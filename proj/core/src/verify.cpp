#include "clusterfid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "clusterfid/analytics.hpp"
#include "clusterfid/bench.hpp"
#include "clusterfid/refocus.hpp"
#include "clusterfid/runner.hpp"

namespace cfid::verify {

namespace {

constexpr int kNList[] = {3, 5, 7, 9};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult make(const std::string& id, const std::string& group, const std::string& desc,
                 bool pass, const std::string& details) {
    return CheckResult{id, group, desc, pass, details};
}

// Least-squares slope of log y vs log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- criterion 1: identity gate at eps = 0 -------------------------------

CheckResult check_identity() {
    double worst = 0.0;
    for (auto kind : {InteractionKind::CP, InteractionKind::ZZ, InteractionKind::XY})
        worst = std::max(worst, identity_worst_deviation(kind, {3, 5, 7, 9}, 100));
    return make("A01", "teleport",
                "identity gate: eps=0 gives unit weighted and per-branch fidelity "
                "(3 kinds x N in {3,5,7,9} x 100 directions, tol 1e-10)",
                worst <= 1e-10, "max |F-1| = " + fmt(worst));
}

// --- criterion 2: perfect transmission along +-y --------------------------

CheckResult check_perfect_transmission() {
    double worst = 0.0;
    for (auto kind : {InteractionKind::ZZ, InteractionKind::XY})
        for (int n : kNList)
            for (double e : {0.1, 0.5, 1.0 / kPi, 2.0 / kPi})
                for (double phi : {kPi / 2.0, 3.0 * kPi / 2.0}) {
                    const auto rep = teleport_fidelity({kind, n, ErrorModel::uniform(e)},
                                                       {kPi / 2.0, phi});
                    worst = std::max(worst, std::abs(rep.weighted_fidelity - 1.0));
                }
    return make("A02", "teleport",
                "perfect transmission: ZZ/XY with r = +-y keep F = 1 for eps in "
                "{0.1, 0.5, 1/pi, 2/pi}, N in {3,5,7,9} (tol 1e-10)",
                worst <= 1e-10, "max |F-1| = " + fmt(worst));
}

// --- criterion 3: N=3 closed forms ----------------------------------------

CheckResult check_closed_forms() {
    double worst = 0.0;
    for (double e : {0.05, 0.2, 0.5, 1.0})
        for (int it = 0; it < 20; ++it)
            for (int ip = 0; ip < 20; ++ip) {
                const BlochOrientation r{kPi * it / 19.0, 2.0 * kPi * ip / 20.0};
                const auto cp =
                    teleport_fidelity({InteractionKind::CP, 3, ErrorModel::uniform(e)}, r);
                const auto zz =
                    teleport_fidelity({InteractionKind::ZZ, 3, ErrorModel::uniform(e)}, r);
                worst = std::max(
                    worst, std::abs(cp.weighted_fidelity - f_cp_n3(r.theta0, r.phi0, e)));
                worst = std::max(
                    worst, std::abs(zz.weighted_fidelity - f_zz_n3(r.theta0, r.phi0, e)));
            }
    return make("A03", "analytics",
                "N=3 closed forms: simulated F matches the CP and ZZ formulas on a "
                "20x20 angle grid x eps in {0.05,0.2,0.5,1.0} (tol 1e-10)",
                worst <= 1e-10, "max |F_sim - F_formula| = " + fmt(worst));
}

// --- criterion 4: Min(F) law ----------------------------------------------

CheckResult check_min_law() {
    double worst_anchor = 0.0;
    double worst_excess = 0.0;
    double worst_under = 0.0;
    for (auto kind : {InteractionKind::ZZ, InteractionKind::XY})
        for (int n : kNList)
            for (double e : {0.1, 0.2, 0.3, 0.5}) {
                const double closed = min_f_zz(n, e);
                const auto anchor = teleport_fidelity({kind, n, ErrorModel::uniform(e)},
                                                      {kPi / 2.0, 0.0});
                worst_anchor =
                    std::max(worst_anchor, std::abs(anchor.weighted_fidelity - closed));

                const BondErrors errors(static_cast<size_t>(n - 1), e);
                const auto transfers = branch_transfers(kind, n, errors);
                const ByproductVariant variant = byproduct_for(kind);
                double sampled = 1.0;
                for (int i = 0; i < 5000; ++i) {
                    Rng rng(derive_seed(41, static_cast<uint64_t>(i)));
                    const BlochOrientation r = sample_bloch_uniform(rng);
                    sampled = std::min(
                        sampled, weighted_fidelity(transfers, state_from_orientation(r), variant));
                }
                worst_excess = std::max(worst_excess, sampled - closed);
                worst_under = std::max(worst_under, closed - sampled);
            }
    const bool pass = worst_anchor <= 1e-10 && worst_excess <= 1e-3 && worst_under <= 1e-12;
    return make("A04", "analytics",
                "Min(F) law: x-z anchor equals (1+cos^{N-1}(pi eps/2))/2 (tol 1e-10) and "
                "the 5000-sample min sits within 1e-3 above it (ZZ and XY)",
                pass,
                "anchor dev = " + fmt(worst_anchor) + ", sample excess = " + fmt(worst_excess) +
                    ", sample undershoot = " + fmt(worst_under));
}

// --- criterion 5: threshold -----------------------------------------------

CheckResult check_threshold() {
    double worst = 0.0;
    for (auto kind : {InteractionKind::ZZ, InteractionKind::XY})
        for (int n : kNList) {
            const auto res = threshold_crossing(kind, n);
            worst = std::max(worst, std::abs(res.eps - eps_max(n)));
        }
    double cp_min_crossing = 1.0;
    for (int n : kNList) {
        const auto res = threshold_crossing(InteractionKind::CP, n);
        cp_min_crossing = std::min(cp_min_crossing, res.found ? res.eps : 1.0);
    }
    const bool pass = worst <= 1e-6 && cp_min_crossing > 0.15;
    return make("A05", "bench",
                "threshold: ZZ/XY bisection crossing of Min(F)=2/3 matches "
                "(2/pi) arccos(3^{1/(1-N)}) within 1e-6; CP crossing exceeds 0.15 for N <= 9",
                pass,
                "max |crossing - formula| = " + fmt(worst) +
                    ", smallest CP crossing = " + fmt(cp_min_crossing));
}

// --- criterion 6: overlap law ----------------------------------------------

CheckResult check_overlap() {
    double worst = 0.0;
    const double inv = 1.0 / std::sqrt(2.0);
    const SingleQubitState plus_x{inv, inv};
    for (int n : {3, 5, 7})
        for (double e : {0.1, 0.4}) {
            const BondErrors zero(static_cast<size_t>(n - 1), 0.0);
            const BondErrors errs(static_cast<size_t>(n - 1), e);
            const auto s0 = build_with_errors(InteractionKind::ZZ, n, plus_x, zero);
            const auto s1 = build_with_errors(InteractionKind::ZZ, n, plus_x, errs);
            worst = std::max(worst,
                             std::abs(std::abs(overlap(s0, s1)) - cluster_overlap(n, e)));
        }
    return make("A06", "analytics",
                "overlap law: |<chain(0)|chain(eps)>| = cos^{N-1}(pi eps/4) for ZZ builds, "
                "N in {3,5,7}, eps in {0.1,0.4} (tol 1e-10)",
                worst <= 1e-10, "max deviation = " + fmt(worst));
}

// --- criterion 7: second-order coefficients --------------------------------

CheckResult check_perturbative() {
    constexpr double e = 1e-3;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        Rng rng(derive_seed(77, static_cast<uint64_t>(i)));
        const BlochOrientation r = sample_bloch_uniform(rng);
        for (auto kind : {InteractionKind::ZZ, InteractionKind::CP}) {
            const auto rep = teleport_fidelity({kind, 3, ErrorModel::uniform(e)}, r);
            const double measured = (rep.weighted_fidelity - 1.0) / (e * e);
            worst = std::max(worst,
                             std::abs(measured - perturbative_f2(kind, r.theta0, r.phi0)));
        }
    }
    return make("A07", "analytics",
                "second-order coefficients: (F(eps)-1)/eps^2 at eps=1e-3, N=3, 50 random "
                "directions matches the ZZ and CP formulas (tol 1e-3)",
                worst <= 1e-3, "max deviation = " + fmt(worst));
}

// --- criterion 8: refocusing ------------------------------------------------

CheckResult check_refocus() {
    const std::vector<double> grid = {1e-3, 2e-3, 5e-3, 1e-2};
    std::ostringstream details;
    bool pass = true;

    struct Family {
        InteractionKind family;
        double theta;
        double pulse;
    };
    const double cp_theta = kPi / 4.0;
    const Family families[] = {
        {InteractionKind::ZZ, matched_theta(kPi / 3.0), kPi / 3.0},
        {InteractionKind::XY, matched_theta(kPi / 3.0), kPi / 3.0},
        {InteractionKind::CP, cp_theta, std::acos(cp_theta / (16.0 * kPi))},
    };

    for (const Family& f : families) {
        auto ideal = [&]() -> Mat4 {
            switch (f.family) {
                case InteractionKind::ZZ: return u_zz(f.theta, 0.0);
                case InteractionKind::XY: return u_xy(f.theta, 0.0);
                case InteractionKind::CP: return v_cp_target(f.theta);
            }
            throw std::logic_error("unreachable");
        }();
        auto raw = [&](double e) -> Mat4 {
            switch (f.family) {
                case InteractionKind::ZZ: return u_zz(f.theta, e);
                case InteractionKind::XY: return u_xy(f.theta, e);
                case InteractionKind::CP: return u_cp(f.theta / 4.0, e);
            }
            throw std::logic_error("unreachable");
        };
        auto refocused = [&](double e) -> Mat4 {
            switch (f.family) {
                case InteractionKind::ZZ: return v_zz(f.theta, e, f.pulse).matrix;
                case InteractionKind::XY: return v_xy(f.theta, e, f.pulse).matrix;
                case InteractionKind::CP: return v_cp(f.theta, e, f.pulse).matrix;
            }
            throw std::logic_error("unreachable");
        };

        std::vector<double> raw_inf, ref_inf;
        for (double e : grid) {
            raw_inf.push_back(1.0 - gate_fidelity_2q(raw(e), ideal));
            ref_inf.push_back(1.0 - gate_fidelity_2q(refocused(e), ideal));
        }
        const double raw_slope = loglog_slope(grid, raw_inf);
        const double ref_slope = loglog_slope(grid, ref_inf);

        const double angle = f.family == InteractionKind::CP ? f.theta : f.pulse;
        const double raw_coeff = raw_inf.front() / (grid.front() * grid.front());
        const double ref_coeff = ref_inf.front() / std::pow(grid.front(), 4);
        const double raw_ref = raw_infidelity_coeff(f.family, angle);
        const double ref_ref = refocused_infidelity_coeff(f.family, angle);

        const bool slopes_ok =
            std::abs(raw_slope - 2.0) <= 0.05 && std::abs(ref_slope - 4.0) <= 0.05;
        const bool coeffs_ok = std::abs(raw_coeff / raw_ref - 1.0) <= 0.05 &&
                               std::abs(ref_coeff / ref_ref - 1.0) <= 0.05;

        bool delta_ok = true;
        double delta_dev = 0.0;
        if (f.family != InteractionKind::CP) {
            const Mat4 est = second_order_error(refocused, ideal, 1e-3);
            const Mat4 analytic = f.family == InteractionKind::ZZ ? delta_u_zz(f.pulse)
                                                                  : delta_u_xy(f.pulse);
            delta_dev = max_abs_diff(est, analytic);
            delta_ok = delta_dev <= 1e-3;
        }

        pass = pass && slopes_ok && coeffs_ok && delta_ok;
        details << to_string(f.family) << ": slopes (" << fmt(raw_slope) << ", "
                << fmt(ref_slope) << "), coeff ratios (" << fmt(raw_coeff / raw_ref) << ", "
                << fmt(ref_coeff / ref_ref) << ")";
        if (f.family != InteractionKind::CP) details << ", dU dev " << fmt(delta_dev);
        details << "; ";
    }
    return make("A08", "refocus",
                "refocusing: raw/refocused log-log slopes 2.00/4.00 (+-0.05), leading "
                "coefficients within 5% at eps=1e-3, leading-error matrices within 1e-3",
                pass, details.str());
}

// --- criterion 9: refreshing equivalence ------------------------------------

CheckResult check_refresh() {
    struct Case {
        InteractionKind kind;
        int n;
        int window;
        bool gaussian;
        double value;  // eps or sigma
        uint64_t seed;
    };
    const Case cases[] = {
        {InteractionKind::CP, 5, 3, false, 0.2, 0},
        {InteractionKind::CP, 7, 3, true, 0.1, 11},
        {InteractionKind::CP, 9, 3, false, 0.35, 0},
        {InteractionKind::CP, 7, 5, true, 0.1, 12},
        {InteractionKind::CP, 9, 5, true, 0.2, 13},
        {InteractionKind::ZZ, 5, 3, false, 0.3, 0},
        {InteractionKind::ZZ, 9, 3, false, 0.3, 0},
        {InteractionKind::ZZ, 7, 3, true, 0.15, 21},
        {InteractionKind::ZZ, 9, 5, true, 0.1, 22},
        {InteractionKind::ZZ, 7, 5, false, 0.5, 0},
        {InteractionKind::ZZ, 5, 5, true, 0.25, 23},
        {InteractionKind::XY, 5, 3, false, 0.2, 0},
        {InteractionKind::XY, 7, 3, true, 0.1, 31},
        {InteractionKind::XY, 9, 3, false, 0.3, 0},
        {InteractionKind::XY, 9, 3, true, 0.15, 32},
        {InteractionKind::XY, 7, 5, false, 0.4, 0},
        {InteractionKind::XY, 9, 5, true, 0.2, 33},
        {InteractionKind::XY, 5, 5, true, 0.3, 34},
        {InteractionKind::CP, 9, 4, true, 0.15, 14},
        {InteractionKind::XY, 9, 4, true, 0.15, 35},
    };
    double worst = 0.0;
    int idx = 0;
    for (const Case& c : cases) {
        const ErrorModel model = c.gaussian ? ErrorModel::gaussian(c.value, c.seed)
                                            : ErrorModel::uniform(c.value);
        const ChainSpec spec{c.kind, c.n, model};
        Rng rng(derive_seed(900, static_cast<uint64_t>(idx++)));
        const BlochOrientation r = sample_bloch_uniform(rng);
        const auto full = teleport_fidelity(spec, r);
        const auto windowed = refresh_teleport(spec, r, c.window);
        worst = std::max(worst,
                         std::abs(full.weighted_fidelity - windowed.weighted_fidelity));
    }
    return make("A09", "teleport",
                "refreshing: windowed teleportation (windows 3-5) equals the full chain "
                "for 20 seeded (kind, N<=9, error) cases (tol 1e-10)",
                worst <= 1e-10, "max |F_window - F_full| = " + fmt(worst));
}

// --- criterion 10: disorder histograms --------------------------------------

CheckResult check_histograms() {
    bool pass = true;
    std::ostringstream details;
    for (auto kind : {InteractionKind::ZZ, InteractionKind::XY, InteractionKind::CP}) {
        double prev_lhm = 2.0;
        for (double sigma : {0.1, 0.2}) {
            SweepConfig cfg;
            cfg.kind = kind;
            cfg.n_list = {7};
            cfg.sigma_grid = {sigma};
            cfg.mode = SweepConfig::Mode::Gaussian;
            cfg.samples = 20000;
            cfg.master_seed = 1000 + static_cast<uint64_t>(sigma * 100);
            const auto st = disorder_histogram(cfg, 7, sigma);
            if (kind == InteractionKind::CP) {
                if (st.exact_unity_count != 0) pass = false;
            } else {
                if (!(st.unity_mass > 0.0)) pass = false;
            }
            if (!(st.lower_half_max_fidelity < prev_lhm)) pass = false;
            prev_lhm = st.lower_half_max_fidelity;
            details << to_string(kind) << "/s=" << sigma << ": unity_mass=" << st.unity_mass
                    << " exact1=" << st.exact_unity_count << " lhm=" << st.lower_half_max_fidelity
                    << "; ";
        }
    }
    return make("A10", "bench",
                "disorder histograms (N=7, 20000 samples): ZZ/XY carry mass at F=1, CP has "
                "no exact-unity samples, and the lower half-max falls with sigma",
                pass, details.str());
}

// --- criterion 11: determinism ----------------------------------------------

CheckResult check_determinism() {
    runner::MinCurveOpts mc;
    mc.kind = "zz";
    mc.n = {3, 5};
    mc.eps = {0.1, 0.3};
    mc.samples = 200;
    mc.seed = 12345;
    const std::string a = runner::run_min_curve(mc).text;
    const std::string b = runner::run_min_curve(mc).text;

    runner::HistogramOpts hg;
    hg.kind = "cp";
    hg.n = 5;
    hg.sigma = {0.1};
    hg.samples = 500;
    hg.seed = 99;
    const std::string c = runner::run_histogram(hg).text;
    const std::string d = runner::run_histogram(hg).text;

    runner::BlochMapOpts bm;
    bm.kind = "xy";
    bm.n = 5;
    bm.eps = 1.0 / kPi;
    bm.samples = 300;
    bm.seed = 7;
    const std::string e = runner::run_bloch_map(bm).text;
    const std::string f = runner::run_bloch_map(bm).text;

    const bool pass = a == b && c == d && e == f;
    return make("A11", "cli",
                "determinism: repeating min-curve, histogram, and bloch-map commands with "
                "the same manifest yields byte-identical CSV",
                pass, pass ? "3 command pairs byte-identical" : "CSV outputs differ");
}

}  // namespace

double identity_worst_deviation(InteractionKind kind, const std::vector<int>& n_list,
                                int directions_per_n,
                                std::optional<ByproductVariant> variant_override) {
    double worst = 0.0;
    TeleportOptions opts;
    opts.byproduct_override = variant_override;
    for (int n : n_list) {
        for (int i = 0; i < directions_per_n; ++i) {
            Rng rng(derive_seed(17 + static_cast<uint64_t>(n), static_cast<uint64_t>(i)));
            const BlochOrientation r = sample_bloch_uniform(rng);
            const auto rep = teleport_fidelity({kind, n, ErrorModel::uniform(0.0)}, r, opts);
            worst = std::max(worst, std::abs(rep.weighted_fidelity - 1.0));
            for (double f : rep.branch_fidelities)
                if (f >= 0.0) worst = std::max(worst, std::abs(f - 1.0));
        }
    }
    return worst;
}

std::vector<CheckResult> run_acceptance(const std::string& only) {
    struct Entry {
        const char* id;
        const char* group;
        CheckResult (*fn)();
    };
    const Entry checks[] = {
        {"A01", "teleport", check_identity},
        {"A02", "teleport", check_perfect_transmission},
        {"A03", "analytics", check_closed_forms},
        {"A04", "analytics", check_min_law},
        {"A05", "bench", check_threshold},
        {"A06", "analytics", check_overlap},
        {"A07", "analytics", check_perturbative},
        {"A08", "refocus", check_refocus},
        {"A09", "teleport", check_refresh},
        {"A10", "bench", check_histograms},
        {"A11", "cli", check_determinism},
    };
    std::vector<CheckResult> results;
    for (const Entry& e : checks) {
        if (!only.empty() && std::string(e.id).find(only) == std::string::npos &&
            std::string(e.group).find(only) == std::string::npos)
            continue;
        results.push_back(e.fn());
    }
    return results;
}

}  // namespace cfid::verify
