#pragma once

#include <cstdint>
#include <vector>

#include "clusterfid/teleport.hpp"

namespace cfid {

// theta0 = arccos(1-2u), phi0 = 2*pi*v: uniform on the sphere.
BlochOrientation bloch_from_uniforms(double u, double v);
BlochOrientation sample_bloch_uniform(Rng& rng);

// Deterministic direction set used where a minimum over orientations is
// wanted without sampling noise: golden-spiral points plus the six axes.
std::vector<BlochOrientation> direction_grid(int count);

struct SweepConfig {
    InteractionKind kind = InteractionKind::ZZ;
    std::vector<int> n_list;
    std::vector<double> eps_grid;    // Uniform mode
    std::vector<double> sigma_grid;  // Gaussian mode
    enum class Mode { Uniform, Gaussian } mode = Mode::Uniform;
    int samples = 5000;
    uint64_t master_seed = 0;
    double bin_width = 0.005;  // histograms
    int jobs = 1;

    void validate() const;
};

struct MinCurvePoint {
    int n = 0;
    double eps = 0.0;
    double sampled_min = 1.0;  // min over sampled orientations
    double anchor_xz = 1.0;    // exact evaluation at r = +x (in the x-z plane)
    double anchor_y = 1.0;     // exact evaluation at r = +y
    int samples = 0;
};

// Minimum weighted fidelity over `samples` uniformly sampled input
// orientations for each (n, eps), with the two exact anchor evaluations.
// Per-sample directions depend only on (master_seed, sample index).
std::vector<MinCurvePoint> min_fidelity_curve(const SweepConfig& config);

struct HistogramStats {
    int n = 0;
    double sigma = 0.0;
    uint64_t samples = 0;
    double bin_width = 0.005;
    std::vector<double> bin_centers;  // nonzero bins only
    std::vector<uint64_t> counts;
    int mode_bin = 0;                       // index into bin_centers
    double lower_half_max_fidelity = 1.0;   // smallest bin center with count >= mode/2
    double unity_mass = 0.0;                // fraction with F > 1 - 1e-9
    uint64_t exact_unity_count = 0;         // samples with |F - 1| <= 1e-12
    double min_fidelity = 1.0;
    double mean_fidelity = 1.0;
};

// Fidelity histogram under per-bond Gaussian disorder with a fresh error
// draw and a fresh input orientation per sample. The first two samples are
// pinned to the +y and -y protected orientations so the protected-channel
// mass shows up at finite sample counts; the rest are uniform.
HistogramStats disorder_histogram(const SweepConfig& config, int n, double sigma);

struct ThresholdResult {
    bool found = false;
    double eps = 0.0;       // crossing of the minimum fidelity through 2/3
    double fidelity = 0.0;  // minimum fidelity at the reported eps
};

// Bisection of Min(F) = 2/3 over eps in (0, 1]. ZZ/XY use the exact x-z
// anchor direction; CP minimizes over a deterministic direction grid.
ThresholdResult threshold_crossing(InteractionKind kind, int n, int grid_count = 600);

}  // namespace cfid
