#include <doctest.h>

#include <cmath>

#include "clusterfid/refocus.hpp"
#include "clusterfid/rng.hpp"

using namespace cfid;

TEST_CASE("solve_timescale: constructed inverse and the zero ratio") {
    const double j = 8.0 * kPi * std::cos(1.0) / 1.0;
    CHECK(std::abs(solve_timescale(j, InteractionKind::ZZ) - 1.0) < 1e-10);
    CHECK(std::abs(solve_timescale(0.0, InteractionKind::XY) - kPi / 2.0) < 1e-10);
}

TEST_CASE("solve_timescale residual property over a wide ratio range") {
    Rng rng(501);
    for (int i = 0; i < 60; ++i) {
        const double j = -10.0 + 60.0 * rng.uniform01();
        const double x = solve_timescale(j, InteractionKind::ZZ);
        CHECK(std::abs(8.0 * kPi * std::cos(x) / x - j) < 1e-10);
    }
}

TEST_CASE("matched theta follows the time parameterization") {
    CHECK(std::abs(matched_theta(kPi / 3.0) - 2.0 * kPi) < 1e-12);
    // theta = (J/2B) * x with J/B = 8 pi cos(x)/x
    const double x = 0.85;
    CHECK(std::abs(matched_theta(x) - (8.0 * kPi * std::cos(x) / x) * x / 2.0) < 1e-12);
}

TEST_CASE("v_zz collapses to the bare gate at eps=0") {
    for (double theta : {0.3, 2.0 * kPi, -1.2})
        for (double delta : {0.4, kPi / 3.0})
            CHECK(max_abs_diff(v_zz(theta, 0.0, delta).matrix, u_zz(theta, 0.0)) < 1e-12);
}

TEST_CASE("v_zz leading error matches delta_u_zz entrywise (tol 1e-3)") {
    const double delta = kPi / 3.0;
    const double theta = matched_theta(delta);
    const Mat4 ideal = u_zz(theta, 0.0);
    const Mat4 est = second_order_error(
        [&](double e) { return v_zz(theta, e, delta).matrix; }, ideal, 1e-3);
    CHECK(max_abs_diff(est, delta_u_zz(delta)) < 1e-3);
}

TEST_CASE("v_zz infidelity coefficient at delta=pi/3 (5%)") {
    const double delta = kPi / 3.0;
    const double theta = matched_theta(delta);
    const double e = 0.01;
    const double infid = 1.0 - gate_fidelity_2q(v_zz(theta, e, delta).matrix, u_zz(theta, 0.0));
    const double want = refocused_infidelity_coeff(InteractionKind::ZZ, delta) * std::pow(e, 4);
    CHECK(std::abs(infid / want - 1.0) < 0.05);
    CHECK(std::abs(want - 5.8445e-6) < 2e-9);  // 8 (pi 0.01)^4 sin^2(2 pi/3)
}

TEST_CASE("v_xy collapses to the bare gate and reproduces delta_u_xy") {
    CHECK(max_abs_diff(v_xy(kPi / 4, 0.0, 0.9).matrix, u_xy(kPi / 4, 0.0)) < 1e-12);
    CHECK(max_abs_diff(v_xy(kPi / 4, 0.0, 0.9).matrix, iswap_gate()) < 1e-12);

    const double alpha = kPi / 3.0;
    const double theta = matched_theta(alpha);
    const Mat4 ideal = u_xy(theta, 0.0);
    const Mat4 est = second_order_error(
        [&](double e) { return v_xy(theta, e, alpha).matrix; }, ideal, 1e-3);
    CHECK(max_abs_diff(est, delta_u_xy(alpha)) < 1e-3);

    const double e = 1e-3;
    const double infid = 1.0 - gate_fidelity_2q(v_xy(theta, e, alpha).matrix, ideal);
    CHECK(std::abs(infid / (refocused_infidelity_coeff(InteractionKind::XY, alpha) *
                            std::pow(e, 4)) -
                   1.0) < 0.05);
}

TEST_CASE("u_ex extracts the Ising gate up to a phase") {
    // eps=0: trace criterion 1 against u_zz(theta, 0)
    for (double theta : {kPi / 4.0, 0.7}) {
        const auto ex = u_ex(theta, 0.0);
        CHECK(std::abs(gate_fidelity_2q(ex.matrix, u_zz(theta, 0.0)) - 1.0) < 1e-12);
    }
    // theta=0: identity up to phase
    CHECK(std::abs(gate_fidelity_2q(u_ex(0.0, 0.0).matrix, Mat4::identity()) - 1.0) < 1e-12);
    // the error passes through the extraction linearly
    const auto ex = u_ex(kPi / 4.0, 0.1);
    CHECK(std::abs(gate_fidelity_2q(ex.matrix, u_zz(kPi / 4.0, 0.1)) - 1.0) < 1e-12);
    // sharper: exact equality to e^{-i theta(1+eps)} u_zz(theta, eps)
    const Mat4 want = std::polar(1.0, -(kPi / 4.0) * 1.1) * u_zz(kPi / 4.0, 0.1);
    CHECK(max_abs_diff(ex.matrix, want) < 1e-12);
}

TEST_CASE("v_cp hits its target at eps=0 and scales as eps^4") {
    const double theta = kPi / 4.0;  // total conditional phase
    const auto at_zero = v_cp(theta, 0.0);
    CHECK(std::abs(gate_fidelity_2q(at_zero.matrix, v_cp_target(theta)) - 1.0) < 1e-12);
    CHECK(max_abs_diff(at_zero.matrix, v_cp_target(theta)) < 1e-12);

    const double e = 1e-3;
    const double infid = 1.0 - gate_fidelity_2q(v_cp(theta, e).matrix, v_cp_target(theta));
    const double want = refocused_infidelity_coeff(InteractionKind::CP, theta) * std::pow(e, 4);
    CHECK(std::abs(infid / want - 1.0) < 0.10);

    // theta=pi example: infidelity ~ pi^2 (256 pi^2 - pi^2)/2048 * e^4
    const double infid_pi = 1.0 - gate_fidelity_2q(v_cp(kPi, e).matrix, v_cp_target(kPi));
    const double want_pi = kPi * kPi * (256.0 * kPi * kPi - kPi * kPi) / 2048.0 * std::pow(e, 4);
    CHECK(std::abs(infid_pi / want_pi - 1.0) < 0.10);

    // raw comparison: 1 - F2 of the bare gate is 3 eps^2 theta^2 / 32
    const double raw = 1.0 - gate_fidelity_2q(u_cp(theta / 4.0, e), v_cp_target(theta));
    CHECK(std::abs(raw / (3.0 * e * e * theta * theta / 32.0) - 1.0) < 0.05);

    CHECK_THROWS_AS(v_cp(17.0 * kPi, 0.0), std::invalid_argument);
}

TEST_CASE("slope fits: eps^2 raw vs eps^4 refocused") {
    const std::vector<double> grid = {1e-3, 2e-3, 5e-3, 1e-2};
    auto slope = [&](auto infid) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (double e : grid) {
            const double lx = std::log(e), ly = std::log(infid(e));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double n = static_cast<double>(grid.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    const double delta = kPi / 3.0;
    const double tz = matched_theta(delta);
    CHECK(std::abs(slope([&](double e) {
                       return 1.0 - gate_fidelity_2q(u_zz(tz, e), u_zz(tz, 0.0));
                   }) -
                   2.0) < 0.05);
    CHECK(std::abs(slope([&](double e) {
                       return 1.0 - gate_fidelity_2q(v_zz(tz, e, delta).matrix, u_zz(tz, 0.0));
                   }) -
                   4.0) < 0.05);
    const double tcp = kPi / 4.0;
    CHECK(std::abs(slope([&](double e) {
                       return 1.0 - gate_fidelity_2q(v_cp(tcp, e).matrix, v_cp_target(tcp));
                   }) -
                   4.0) < 0.05);
}

TEST_CASE("sequences multiply out to the returned matrices") {
    const auto a = v_zz(1.3, 0.02, 0.7);
    CHECK(max_abs_diff(compose(a.sequence), a.matrix) < 1e-12);
    const auto b = v_xy(kPi / 4, -0.03, 1.1);
    CHECK(max_abs_diff(compose(b.sequence), b.matrix) < 1e-12);
    const auto c = v_cp(kPi / 4, 0.05);
    CHECK(max_abs_diff(compose(c.sequence), c.matrix) < 1e-12);
    const auto d = u_ex(0.9, -0.04);
    CHECK(max_abs_diff(compose(d.sequence), d.matrix) < 1e-12);
}

TEST_CASE("gate-count ledger: 3 two-qubit pulses for v_zz/v_xy, 12 for v_cp") {
    CHECK(v_zz(2 * kPi, 0.01, kPi / 3).sequence.two_qubit_count() == 3);
    CHECK(v_xy(2 * kPi, 0.01, kPi / 3).sequence.two_qubit_count() == 3);
    CHECK(u_ex(kPi / 4, 0.01).sequence.two_qubit_count() == 4);
    CHECK(v_cp(kPi / 4, 0.01).sequence.two_qubit_count() == 12);
}

TEST_CASE("gate_fidelity_2q basics") {
    CHECK(std::abs(gate_fidelity_2q(cz_gate(), cz_gate()) - 1.0) < 1e-15);
    CHECK(std::abs(gate_fidelity_2q(Mat4::identity(), cz_gate()) - 0.5) < 1e-15);
    Mat4 bad;
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(gate_fidelity_2q(bad, cz_gate()), std::invalid_argument);
}

TEST_CASE("composite sequences stay unitary") {
    Rng rng(702);
    for (int i = 0; i < 20; ++i) {
        const double theta = rng.uniform01() * 6.0 - 3.0;
        const double pulse = rng.uniform01() * 3.0;
        const double eps = rng.uniform01() - 0.5;
        CHECK(is_unitary(v_zz(theta, eps, pulse).matrix, 1e-10));
        CHECK(is_unitary(v_xy(theta, eps, pulse).matrix, 1e-10));
        CHECK(is_unitary(v_cp(theta, eps, pulse).matrix, 1e-10));
    }
}
