#include <doctest.h>

#include <cmath>

#include "clusterfid/gates.hpp"
#include "clusterfid/rng.hpp"

using namespace cfid;

TEST_CASE("u_cp scalar values") {
    CHECK(max_abs_diff(u_cp(kPi / 4, 0.0), cz_gate()) < 1e-15);
    CHECK(max_abs_diff(u_cp(kPi / 4, 1.0), Mat4::identity()) < 1e-12);
    const Mat4 m = u_cp(kPi / 8, 0.5);
    CHECK(std::abs(m(3, 3) - std::polar(1.0, -3.0 * kPi / 4.0)) < 1e-15);
    CHECK(std::abs(m(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("u_zz scalar values") {
    Mat4 expect = Mat4::diagonal({1.0, c64{0, 1}, c64{0, 1}, 1.0});
    expect = std::polar(1.0, -kPi / 4.0) * expect;
    CHECK(max_abs_diff(u_zz(kPi / 4, 0.0), expect) < 1e-15);
    CHECK(max_abs_diff(u_zz(-2 * kPi, 0.0), Mat4::identity()) < 1e-12);
    const Mat4 m = u_zz(kPi / 4, 0.2);
    CHECK(std::abs(m(0, 0) - std::polar(1.0, -0.3 * kPi)) < 1e-15);
    CHECK(std::abs(m(1, 1) - std::polar(1.0, 0.3 * kPi)) < 1e-15);
}

TEST_CASE("u_xy scalar values") {
    CHECK(max_abs_diff(u_xy(kPi / 4, 0.0), iswap_gate()) < 1e-15);
    CHECK(max_abs_diff(u_xy(0.0, 0.7), Mat4::identity()) < 1e-15);
    const Mat4 m = u_xy(kPi / 8, 0.0);
    const double s2 = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(m(1, 1) - s2) < 1e-15);
    CHECK(std::abs(m(1, 2) - c64{0.0, -s2}) < 1e-15);
}

TEST_CASE("one-qubit rotations") {
    CHECK(max_abs_diff(r_z(0.0), Mat2::identity()) < 1e-15);
    const Mat2 rx = r_x(kPi);
    const Mat2 want = c64{0.0, -1.0} * pauli_x();
    CHECK(max_abs_diff(rx, want) < 1e-15);
}

TEST_CASE("per-bond identity: rotations turn the Ising gate into CZ") {
    // 4x4 product oracle: (r_z(-pi/2) x r_z(-pi/2)) u_zz(pi/4, 0) = e^{i pi/4} CZ
    const Mat4 lhs = kron(r_z(-kPi / 2), r_z(-kPi / 2)) * u_zz(kPi / 4, 0.0);
    const Mat4 rhs = std::polar(1.0, kPi / 4.0) * cz_gate();
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    // trace criterion form
    const c64 tr = (lhs * cz_gate().adjoint()).trace();
    CHECK(std::abs(std::abs(tr) / 4.0 - 1.0) < 1e-12);
}

TEST_CASE("gate families are unitary for random parameters") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        const double theta = (rng.uniform01() - 0.5) * 8.0;
        const double eps = (rng.uniform01() - 0.5) * 2.5;
        CHECK(is_unitary(u_cp(theta, eps), 1e-12));
        CHECK(is_unitary(u_zz(theta, eps), 1e-12));
        CHECK(is_unitary(u_xy(theta, eps), 1e-12));
        CHECK(is_unitary(r_z(theta), 1e-12));
        CHECK(is_unitary(r_x(theta), 1e-12));
    }
}

TEST_CASE("periodicity in theta(1+eps): pi/2 for CP, 2pi for ZZ, pi for XY") {
    Rng rng(29);
    for (int i = 0; i < 20; ++i) {
        const double theta = (rng.uniform01() - 0.5) * 6.0;
        const double eps = (rng.uniform01() - 0.5) * 1.8;
        const double scale = 1.0 + eps;
        CHECK(max_abs_diff(u_cp(theta, eps), u_cp(theta + kPi / 2 / scale, eps)) < 1e-12);
        CHECK(max_abs_diff(u_zz(theta, eps), u_zz(theta + 2 * kPi / scale, eps)) < 1e-12);
        CHECK(max_abs_diff(u_xy(theta, eps), u_xy(theta + kPi / scale, eps)) < 1e-12);
    }
}

TEST_CASE("structure: CP/ZZ diagonal, XY preserves the one-excitation block") {
    Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        const double theta = rng.uniform01() * 5.0;
        const double eps = rng.uniform01();
        const Mat4 cp = u_cp(theta, eps);
        const Mat4 zz = u_zz(theta, eps);
        const Mat4 xy = u_xy(theta, eps);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                if (r != c) {
                    CHECK(std::abs(cp(r, c)) < 1e-15);
                    CHECK(std::abs(zz(r, c)) < 1e-15);
                }
            }
        // XY corners untouched, coupling confined to |01>,|10>
        CHECK(std::abs(xy(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(xy(3, 3) - 1.0) < 1e-15);
        CHECK(std::abs(xy(0, 1)) < 1e-15);
        CHECK(std::abs(xy(1, 3)) < 1e-15);
        CHECK(std::abs(xy(3, 0)) < 1e-15);
    }
}

TEST_CASE("interaction kind round-trips through strings") {
    for (auto k : {InteractionKind::CP, InteractionKind::ZZ, InteractionKind::XY})
        CHECK(interaction_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(interaction_from_string("ising"), std::invalid_argument);
}
