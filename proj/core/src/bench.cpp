#include "clusterfid/bench.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace cfid {

BlochOrientation bloch_from_uniforms(double u, double v) {
    return BlochOrientation{std::acos(1.0 - 2.0 * u), 2.0 * kPi * v};
}

BlochOrientation sample_bloch_uniform(Rng& rng) {
    const double u = rng.uniform01();
    const double v = rng.uniform01();
    return bloch_from_uniforms(u, v);
}

std::vector<BlochOrientation> direction_grid(int count) {
    if (count < 1) throw std::invalid_argument("direction_grid: count must be positive");
    std::vector<BlochOrientation> dirs;
    dirs.reserve(static_cast<size_t>(count) + 6);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count; ++i) {
        const double u = (i + 0.5) / count;
        double v = std::fmod(static_cast<double>(i) / golden, 1.0);
        dirs.push_back(bloch_from_uniforms(u, v));
    }
    dirs.push_back({kPi / 2, 0.0});           // +x
    dirs.push_back({kPi / 2, kPi});           // -x
    dirs.push_back({kPi / 2, kPi / 2});       // +y
    dirs.push_back({kPi / 2, 3 * kPi / 2});   // -y
    dirs.push_back({0.0, 0.0});               // +z
    dirs.push_back({kPi, 0.0});               // -z
    return dirs;
}

void SweepConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("SweepConfig: samples must be >= 1");
    if (mode == Mode::Uniform && eps_grid.empty())
        throw std::invalid_argument("SweepConfig: eps grid must be nonempty");
    if (mode == Mode::Gaussian && sigma_grid.empty())
        throw std::invalid_argument("SweepConfig: sigma grid must be nonempty");
    if (n_list.empty()) throw std::invalid_argument("SweepConfig: n list must be nonempty");
    if (bin_width <= 0.0 || bin_width > 1.0)
        throw std::invalid_argument("SweepConfig: bin width must be in (0, 1]");
    if (jobs < 1) throw std::invalid_argument("SweepConfig: jobs must be >= 1");
}

namespace {

// Runs fn(i) for i in [0, count) over `jobs` threads; results are keyed by
// index so the aggregation below is order-independent.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += jobs) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<MinCurvePoint> min_fidelity_curve(const SweepConfig& config) {
    config.validate();
    if (config.mode != SweepConfig::Mode::Uniform)
        throw std::invalid_argument("min_fidelity_curve: uniform-eps mode only");

    std::vector<MinCurvePoint> out;
    for (int n : config.n_list) {
        ChainSpec probe{config.kind, n, ErrorModel::uniform(0.0)};
        probe.validate();
        const ByproductVariant variant = byproduct_for(config.kind);
        for (double eps : config.eps_grid) {
            const BondErrors errors(static_cast<size_t>(n - 1), eps);
            const auto transfers = branch_transfers(config.kind, n, errors);

            std::vector<double> fids(static_cast<size_t>(config.samples));
            parallel_for(config.samples, config.jobs, [&](int i) {
                Rng rng(derive_seed(config.master_seed, static_cast<uint64_t>(i)));
                const BlochOrientation r = sample_bloch_uniform(rng);
                fids[static_cast<size_t>(i)] =
                    weighted_fidelity(transfers, state_from_orientation(r), variant);
            });

            MinCurvePoint pt;
            pt.n = n;
            pt.eps = eps;
            pt.samples = config.samples;
            pt.sampled_min = *std::min_element(fids.begin(), fids.end());
            pt.anchor_xz = weighted_fidelity(
                transfers, state_from_orientation({kPi / 2, 0.0}), variant);
            pt.anchor_y = weighted_fidelity(
                transfers, state_from_orientation({kPi / 2, kPi / 2}), variant);
            out.push_back(pt);
        }
    }
    return out;
}

HistogramStats disorder_histogram(const SweepConfig& config, int n, double sigma) {
    config.validate();
    ChainSpec probe{config.kind, n, ErrorModel::uniform(0.0)};
    probe.validate();
    if (sigma < 0.0) throw std::invalid_argument("disorder_histogram: sigma must be >= 0");

    const ByproductVariant variant = byproduct_for(config.kind);
    const uint64_t samples = static_cast<uint64_t>(config.samples);

    std::vector<double> fids(static_cast<size_t>(samples));
    parallel_for(config.samples, config.jobs, [&](int i) {
        Rng rng(derive_seed(config.master_seed, static_cast<uint64_t>(i)));
        BondErrors errors(static_cast<size_t>(n - 1));
        for (auto& e : errors) e = rng.normal(sigma);
        // Samples 0 and 1 probe the +-y protected orientations; the rest of
        // the sphere is sampled uniformly.
        BlochOrientation r;
        if (i == 0)
            r = BlochOrientation{kPi / 2, kPi / 2};
        else if (i == 1)
            r = BlochOrientation{kPi / 2, 3 * kPi / 2};
        else
            r = sample_bloch_uniform(rng);
        const StateVector st = build_with_errors(config.kind, n, state_from_orientation(r), errors);
        fids[static_cast<size_t>(i)] = weighted_fidelity_direct(st, state_from_orientation(r), variant);
    });

    const double w = config.bin_width;
    const int nbins = static_cast<int>(std::ceil(1.0 / w));
    std::vector<uint64_t> full(static_cast<size_t>(nbins), 0);
    HistogramStats st;
    st.n = n;
    st.sigma = sigma;
    st.samples = samples;
    st.bin_width = w;
    double sum = 0.0;
    for (double f : fids) {
        sum += f;
        st.min_fidelity = std::min(st.min_fidelity, f);
        if (f > 1.0 - 1e-9) st.unity_mass += 1.0;
        if (std::abs(f - 1.0) <= 1e-12) ++st.exact_unity_count;
        int b = static_cast<int>(std::floor(f / w));
        b = std::clamp(b, 0, nbins - 1);
        ++full[static_cast<size_t>(b)];
    }
    st.unity_mass /= static_cast<double>(samples);
    st.mean_fidelity = sum / static_cast<double>(samples);

    const uint64_t mode_count = *std::max_element(full.begin(), full.end());
    int lower_half_bin = -1;
    for (int b = 0; b < nbins; ++b) {
        if (2 * full[static_cast<size_t>(b)] >= mode_count) {
            lower_half_bin = b;
            break;
        }
    }
    st.lower_half_max_fidelity = (lower_half_bin + 0.5) * w;

    for (int b = 0; b < nbins; ++b) {
        if (full[static_cast<size_t>(b)] == 0) continue;
        st.bin_centers.push_back((b + 0.5) * w);
        st.counts.push_back(full[static_cast<size_t>(b)]);
        if (full[static_cast<size_t>(b)] == mode_count && st.mode_bin == 0)
            st.mode_bin = static_cast<int>(st.bin_centers.size()) - 1;
    }
    return st;
}

ThresholdResult threshold_crossing(InteractionKind kind, int n, int grid_count) {
    ChainSpec probe{kind, n, ErrorModel::uniform(0.0)};
    probe.validate();
    const ByproductVariant variant = byproduct_for(kind);
    const std::vector<BlochOrientation> grid =
        kind == InteractionKind::CP ? direction_grid(grid_count)
                                    : std::vector<BlochOrientation>{{kPi / 2, 0.0}};

    auto min_f = [&](double eps) {
        const BondErrors errors(static_cast<size_t>(n - 1), eps);
        const auto transfers = branch_transfers(kind, n, errors);
        double best = 1.0;
        for (const auto& r : grid)
            best = std::min(best, weighted_fidelity(transfers, state_from_orientation(r), variant));
        return best;
    };

    constexpr double target = 2.0 / 3.0;
    ThresholdResult res;
    if (min_f(1.0) > target) return res;  // no crossing in (0, 1]

    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 64 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (min_f(mid) > target ? lo : hi) = mid;
    }
    res.found = true;
    res.eps = 0.5 * (lo + hi);
    res.fidelity = min_f(res.eps);
    return res;
}

}  // namespace cfid
