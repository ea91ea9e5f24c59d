#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "clusterfid/runner.hpp"
#include "clusterfid/verify.hpp"

using namespace cfid;
using nlohmann::json;

TEST_CASE("run_teleport emits the report as JSON") {
    runner::TeleportOpts opts;
    opts.kind = "zz";
    opts.n = 5;
    opts.theta0 = 1.5708;
    opts.phi0 = 1.5708;
    opts.error.eps = 0.5;
    const auto out = runner::run_teleport(opts);
    const json j = json::parse(out.text);
    CHECK(j["kind"] == "zz");
    CHECK(j["n"] == 5);
    CHECK(std::abs(j["weighted_fidelity"].get<double>() - 1.0) < 1e-6);
    CHECK(j["channel"] == "quantum");
    CHECK(j["manifest"]["tool"] == "clusterfid");
    CHECK(!j.contains("branches"));

    opts.verbose = true;
    const json jv = json::parse(runner::run_teleport(opts).text);
    CHECK(jv["branches"].size() == 16);
}

TEST_CASE("run_teleport closed-form spot value and refresh window") {
    runner::TeleportOpts opts;
    opts.kind = "cp";
    opts.n = 3;
    opts.theta0 = 0.0;
    opts.phi0 = 0.0;
    opts.error.eps = 1.0;
    const json j = json::parse(runner::run_teleport(opts).text);
    CHECK(std::abs(j["weighted_fidelity"].get<double>() - 0.5) < 1e-9);

    opts.refresh_window = 3;
    const json jr = json::parse(runner::run_teleport(opts).text);
    CHECK(std::abs(jr["weighted_fidelity"].get<double>() -
                   j["weighted_fidelity"].get<double>()) < 1e-10);
}

TEST_CASE("run_teleport rejects an even chain with a clear message") {
    runner::TeleportOpts opts;
    opts.n = 4;
    try {
        runner::run_teleport(opts);
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& ex) {
        CHECK(std::string(ex.what()).find("odd") != std::string::npos);
    }
}

TEST_CASE("bloch-map rows scale the direction by the fidelity") {
    runner::BlochMapOpts opts;
    opts.kind = "zz";
    opts.n = 3;
    opts.eps = 0.0;
    opts.samples = 10;
    opts.seed = 3;
    const auto out = runner::run_bloch_map(opts);
    std::istringstream lines(out.text);
    std::string line;
    int rows = 0;
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            CHECK(line == "theta0,phi0,x,y,z,fidelity");
            header_seen = true;
            continue;
        }
        ++rows;
        // eps=0: |(x,y,z)| == fidelity == 1
        double t, p, x, y, z, f;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &p, &x, &y, &z, &f) == 6);
        CHECK(std::abs(f - 1.0) < 1e-9);
        CHECK(std::abs(std::sqrt(x * x + y * y + z * z) - f) < 1e-9);
    }
    CHECK(rows == 10);
}

TEST_CASE("bloch-map mean fidelity shrinks with the error strength") {
    auto mean_f = [](double eps) {
        runner::BlochMapOpts opts;
        opts.kind = "cp";
        opts.n = 5;
        opts.eps = eps;
        opts.samples = 400;
        opts.seed = 31;
        const auto out = runner::run_bloch_map(opts);
        std::istringstream lines(out.text);
        std::string line;
        double sum = 0.0;
        int rows = 0;
        while (std::getline(lines, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 't') continue;
            const auto pos = line.rfind(',');
            sum += std::stod(line.substr(pos + 1));
            ++rows;
        }
        REQUIRE(rows == 400);
        return sum / rows;
    };
    CHECK(mean_f(1.0 / kPi) < mean_f(1.0 / (2.0 * kPi)));
}

TEST_CASE("min-curve CSV embeds the manifest and has stable columns") {
    runner::MinCurveOpts opts;
    opts.kind = "zz";
    opts.n = {3};
    opts.eps = {0.1};
    opts.samples = 50;
    opts.seed = 77;
    const auto out = runner::run_min_curve(opts);
    CHECK(out.text.find("# tool: clusterfid") != std::string::npos);
    CHECK(out.text.find("# seed: 77") != std::string::npos);
    CHECK(out.text.find("kind,n,eps,statistic,value,samples,seed") != std::string::npos);
    CHECK(out.text.find("closed_form_min") != std::string::npos);
}

TEST_CASE("CSV output is byte-stable across reruns") {
    runner::HistogramOpts opts;
    opts.kind = "xy";
    opts.n = 5;
    opts.sigma = {0.1};
    opts.samples = 300;
    opts.seed = 2024;
    CHECK(runner::run_histogram(opts).text == runner::run_histogram(opts).text);
}

TEST_CASE("threshold CSV reports the ZZ closed form next to the crossing") {
    runner::ThresholdOpts opts;
    opts.kind = "zz";
    opts.n = {3};
    const auto out = runner::run_threshold(opts);
    CHECK(out.text.find("crossing_eps") != std::string::npos);
    CHECK(out.text.find("closed_form_eps_max") != std::string::npos);
}

TEST_CASE("refocus JSON: slopes, coefficients, and the sequence dump") {
    runner::RefocusOpts opts;
    opts.family = "zz";
    opts.dump_sequence = true;
    const json j = json::parse(runner::run_refocus(opts).text);
    CHECK(std::abs(j["slopes"]["raw"].get<double>() - 2.0) < 0.05);
    CHECK(std::abs(j["slopes"]["refocused"].get<double>() - 4.0) < 0.05);
    const double ratio = j["coefficients"]["refocused_measured"].get<double>() /
                         j["coefficients"]["refocused_analytic"].get<double>();
    CHECK(std::abs(ratio - 1.0) < 0.05);
    CHECK(j["leading_error"]["max_abs_dev"].get<double>() < 1e-3);
    CHECK(j["two_qubit_pulse_count"] == 3);
    CHECK(j["sequence_in_action_order"].size() == 7);

    runner::RefocusOpts cp;
    cp.family = "cp";
    cp.dump_sequence = true;
    const json jc = json::parse(runner::run_refocus(cp).text);
    CHECK(jc["two_qubit_pulse_count"] == 12);
    CHECK(std::abs(jc["slopes"]["refocused"].get<double>() - 4.0) < 0.05);

    // vanishing-coefficient warning path: sin(2*pulse) = 0 at pulse = pi/2
    runner::RefocusOpts flat;
    flat.family = "zz";
    flat.pulse_angle = kPi / 2.0;
    const json jf = json::parse(runner::run_refocus(flat).text);
    CHECK(jf.contains("warning"));
    CHECK(!jf.contains("slopes"));
}

TEST_CASE("verify --only filters the acceptance checks") {
    const auto all = verify::run_acceptance("A06");
    REQUIRE(all.size() == 1);
    CHECK(all[0].id == "A06");
    CHECK(all[0].pass);

    const auto analytics = verify::run_acceptance("analytics");
    CHECK(analytics.size() == 4);

    std::ostringstream os;
    runner::VerifyOpts opts;
    opts.only = "A06";
    CHECK(runner::run_verify(opts, os) == 0);
    CHECK(os.str().find("PASS") != std::string::npos);

    opts.only = "no-such-check";
    CHECK(runner::run_verify(opts, os) == 2);
}

TEST_CASE("mutation sanity: a flipped byproduct trips the identity check") {
    const double ok = verify::identity_worst_deviation(InteractionKind::ZZ, {3}, 10);
    CHECK(ok <= 1e-10);
    const double flipped = verify::identity_worst_deviation(InteractionKind::ZZ, {3}, 10,
                                                            ByproductVariant::XZSwapped);
    CHECK(flipped > 1e-3);
}
