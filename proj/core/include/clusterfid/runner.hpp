#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clusterfid/report.hpp"

namespace cfid::runner {

// Error-model flags shared by the chain commands: uniform --eps or
// per-bond Gaussian --sigma with --seed.
struct ErrorOpts {
    bool gaussian = false;
    double eps = 0.0;
    double sigma = 0.0;
    uint64_t seed = 0;
};

struct TeleportOpts {
    std::string kind = "zz";
    int n = 5;
    double theta0 = 0.0;
    double phi0 = 0.0;
    ErrorOpts error;
    int refresh_window = 0;  // 0 = full chain
    bool verbose = false;    // include the per-branch list
};

struct CommandOutput {
    std::string text;  // JSON or CSV payload
    RunManifest manifest;
};

CommandOutput run_teleport(const TeleportOpts& opts);

struct BlochMapOpts {
    std::string kind = "zz";
    int n = 5;
    double eps = 0.1;
    int samples = 2000;
    uint64_t seed = 0;
    std::string out;  // CSV path; empty returns text only
    int jobs = 1;
};

CommandOutput run_bloch_map(const BlochMapOpts& opts);

struct MinCurveOpts {
    std::string kind = "zz";
    std::vector<int> n = {3, 5, 7, 9};
    std::vector<double> eps = {0.1, 0.2, 0.3, 0.5};
    int samples = 5000;
    uint64_t seed = 0;
    std::string out;
    int jobs = 1;
};

CommandOutput run_min_curve(const MinCurveOpts& opts);

struct HistogramOpts {
    std::string kind = "zz";
    int n = 7;
    std::vector<double> sigma = {0.1};
    int samples = 20000;
    uint64_t seed = 0;
    double bin_width = 0.005;
    std::string out;
    int jobs = 1;
};

CommandOutput run_histogram(const HistogramOpts& opts);

struct ThresholdOpts {
    std::string kind = "zz";
    std::vector<int> n = {3, 5, 7, 9};
    int grid = 600;  // CP direction-grid size
    std::string out;
};

CommandOutput run_threshold(const ThresholdOpts& opts);

struct RefocusOpts {
    std::string family = "zz";
    // For zz/xy the pulse angle (delta resp. alpha); theta defaults to the
    // matched 4*pi*cos(pulse_angle). For cp, theta is the total conditional
    // phase and the pulse angle defaults to arccos(theta/16pi).
    std::optional<double> theta;
    std::optional<double> pulse_angle;
    std::vector<double> eps_grid = {1e-3, 2e-3, 5e-3, 1e-2};
    bool dump_sequence = false;
};

CommandOutput run_refocus(const RefocusOpts& opts);

struct VerifyOpts {
    std::string only;  // substring filter on check id or group
};

// Prints one line per acceptance check; returns 0 iff all selected pass.
int run_verify(const VerifyOpts& opts, std::ostream& out);

}  // namespace cfid::runner
