#include <doctest.h>

#include <cmath>
#include <vector>

#include "clusterfid/gates.hpp"
#include "clusterfid/statevec.hpp"

using namespace cfid;

namespace {

const double kInv2 = 1.0 / std::sqrt(2.0);

SingleQubitState plus_x() { return {kInv2, kInv2}; }
SingleQubitState ket0() { return {1.0, 0.0}; }
SingleQubitState ket1() { return {0.0, 1.0}; }

// Dense-matrix oracle, independent of the bitmask kernels: full 2^n x 2^n
// operators assembled with kron and applied by plain matrix-vector product.
using DenseMat = std::vector<std::vector<c64>>;

DenseMat dense_from(const Mat2& m) {
    return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

DenseMat dense_kron(const DenseMat& a, const DenseMat& b) {
    const size_t ra = a.size(), rb = b.size();
    DenseMat out(ra * rb, std::vector<c64>(ra * rb));
    for (size_t i = 0; i < ra; ++i)
        for (size_t j = 0; j < ra; ++j)
            for (size_t k = 0; k < rb; ++k)
                for (size_t l = 0; l < rb; ++l) out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return out;
}

std::vector<c64> dense_apply(const DenseMat& m, const std::vector<c64>& v) {
    std::vector<c64> out(v.size());
    for (size_t r = 0; r < v.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

double vec_norm_sq(const std::vector<c64>& v) {
    double n = 0;
    for (auto a : v) n += std::norm(a);
    return n;
}

}  // namespace

TEST_CASE("product_state basis examples") {
    const auto s00 = StateVector::product_state({ket0(), ket0()});
    CHECK(std::abs(s00.amplitude(0) - 1.0) < 1e-15);
    for (size_t i = 1; i < 4; ++i) CHECK(std::abs(s00.amplitude(i)) < 1e-15);

    const auto sxx = StateVector::product_state({plus_x(), plus_x()});
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(sxx.amplitude(i) - 0.5) < 1e-15);

    const auto sy = StateVector::product_state({SingleQubitState{kInv2, c64{0.0, kInv2}}});
    CHECK(std::abs(sy.amplitude(0) - kInv2) < 1e-15);
    CHECK(std::abs(sy.amplitude(1) - c64{0.0, kInv2}) < 1e-15);

    CHECK_THROWS_AS(StateVector::product_state({}), std::invalid_argument);
}

TEST_CASE("apply_1q moves qubit 1 as the most-significant bit") {
    auto st = StateVector::product_state({ket0(), ket0()});
    st.apply_1q(1, pauli_x());
    CHECK(std::abs(st.amplitude(2) - 1.0) < 1e-15);  // |10>

    auto st2 = st;
    st2.apply_1q(2, pauli_i());
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(st2.amplitude(i) - st.amplitude(i)) < 1e-15);
}

TEST_CASE("r_z(pi) flips |+x> to |-x> (2x2 product oracle)") {
    // oracle: multiply the 2x2 matrix into the amplitudes by hand
    const Mat2 rz = r_z(kPi);
    const c64 o0 = rz(0, 0) * kInv2 + rz(0, 1) * kInv2;
    const c64 o1 = rz(1, 0) * kInv2 + rz(1, 1) * kInv2;

    auto st = StateVector::product_state({plus_x()});
    st.apply_1q(1, rz);
    CHECK(std::abs(st.amplitude(0) - o0) < 1e-15);
    CHECK(std::abs(st.amplitude(1) - o1) < 1e-15);
    // |<-x|state>| = 1 up to global phase
    const c64 ov = std::conj(kInv2) * st.amplitude(0) - std::conj(kInv2) * st.amplitude(1);
    CHECK(std::abs(std::abs(ov) - 1.0) < 1e-12);
}

TEST_CASE("apply_1q rejects bad input") {
    auto st = StateVector::product_state({ket0(), ket0()});
    CHECK_THROWS_AS(st.apply_1q(0, pauli_x()), std::invalid_argument);
    CHECK_THROWS_AS(st.apply_1q(3, pauli_x()), std::invalid_argument);
    Mat2 bad;
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(st.apply_1q(1, bad), std::invalid_argument);
}

TEST_CASE("apply_2q examples") {
    auto st = StateVector::product_state({plus_x(), plus_x()});
    st.apply_2q(1, 2, cz_gate());
    CHECK(std::abs(st.amplitude(0) - 0.5) < 1e-15);
    CHECK(std::abs(st.amplitude(1) - 0.5) < 1e-15);
    CHECK(std::abs(st.amplitude(2) - 0.5) < 1e-15);
    CHECK(std::abs(st.amplitude(3) + 0.5) < 1e-15);

    auto st01 = StateVector::product_state({ket0(), ket1()});
    st01.apply_2q(1, 2, iswap_gate());
    CHECK(std::abs(st01.amplitude(2) - c64{0.0, -1.0}) < 1e-15);  // -i |10>

    auto same = st;
    same.apply_2q(1, 2, Mat4::identity());
    for (size_t i = 0; i < 4; ++i) CHECK(std::abs(same.amplitude(i) - st.amplitude(i)) < 1e-15);

    CHECK_THROWS_AS(st.apply_2q(1, 1, cz_gate()), std::invalid_argument);
    CHECK_THROWS_AS(st.apply_2q(1, 5, cz_gate()), std::invalid_argument);
}

TEST_CASE("apply_2q basis convention: swap conjugation identity") {
    // apply_2q(qi, qj, U) == apply_2q(qj, qi, SWAP U SWAP) on a random state
    Rng rng(19);
    std::vector<SingleQubitState> qs;
    for (int q = 0; q < 3; ++q) {
        const double t = rng.uniform01() * kPi, p = rng.uniform01() * 2 * kPi;
        qs.push_back(state_from_orientation({t, p}));
    }
    Mat4 u = u_xy(0.7, 0.3) * u_cp(0.4, -0.2);
    auto a = StateVector::product_state(qs);
    auto b = a;
    a.apply_2q(1, 3, u);
    b.apply_2q(3, 1, swap_gate() * u * swap_gate());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.amplitude(i) - b.amplitude(i)) < 1e-12);
}

TEST_CASE("apply_2q on disjoint pairs commutes") {
    std::vector<SingleQubitState> qs(4, plus_x());
    auto a = StateVector::product_state(qs);
    auto b = a;
    const Mat4 u1 = u_zz(0.6, 0.1);
    const Mat4 u2 = u_xy(0.8, -0.4);
    a.apply_2q(1, 2, u1);
    a.apply_2q(3, 4, u2);
    b.apply_2q(3, 4, u2);
    b.apply_2q(1, 2, u1);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.amplitude(i) - b.amplitude(i)) < 1e-12);
}

TEST_CASE("norm preserved through a random gate sequence") {
    Rng rng(5);
    std::vector<SingleQubitState> qs(5, ket0());
    auto st = StateVector::product_state(qs);
    for (int step = 0; step < 40; ++step) {
        const int q = 1 + static_cast<int>(rng.uniform01() * 5);
        if (step % 2 == 0) {
            st.apply_1q(std::min(q, 5), r_x(rng.uniform01() * 4));
        } else {
            int q2 = 1 + static_cast<int>(rng.uniform01() * 5);
            if (q2 == q) q2 = q % 5 + 1;
            st.apply_2q(std::min(q, 5), std::min(q2, 5), u_xy(rng.uniform01(), 0.2));
        }
        CHECK(std::abs(st.norm_sq() - 1.0) < 1e-12);
    }
}

TEST_CASE("measure_x eigenstate and symmetric examples") {
    auto st = StateVector::product_state({plus_x()});
    const auto r = st.measure_x(1, 0);
    CHECK(r.outcome == 0);
    CHECK(std::abs(r.probability - 1.0) < 1e-12);

    auto s0 = StateVector::product_state({ket0()});
    const auto r0 = s0.measure_x(1, 0);
    CHECK(std::abs(r0.probability - 0.5) < 1e-12);
    auto s1 = StateVector::product_state({ket0()});
    const auto r1 = s1.measure_x(1, 1);
    CHECK(std::abs(r1.probability - 0.5) < 1e-12);

    // forcing the impossible branch of an eigenstate
    auto sx = StateVector::product_state({plus_x()});
    CHECK_THROWS_AS(sx.measure_x(1, 1), std::invalid_argument);
}

TEST_CASE("measure_x on the ideal 3-qubit cluster: dense projector oracle") {
    // cluster = CZ12 CZ23 |+x,+x,+x>
    auto st = StateVector::product_state({plus_x(), plus_x(), plus_x()});
    st.apply_2q(1, 2, cz_gate());
    st.apply_2q(2, 3, cz_gate());

    // oracle: P = (I + X_1)/2 as a dense 8x8, applied to a copied vector
    const DenseMat id2 = dense_from(pauli_i());
    const DenseMat px = dense_from(pauli_x());
    DenseMat proj = dense_kron(dense_kron(px, id2), id2);
    for (size_t r = 0; r < 8; ++r)
        for (size_t c = 0; c < 8; ++c) proj[r][c] = 0.5 * ((r == c ? 1.0 : 0.0) + proj[r][c]);
    std::vector<c64> amps(st.amplitudes().begin(), st.amplitudes().end());
    const double p_oracle = vec_norm_sq(dense_apply(proj, amps));

    const auto res = st.measure_x(1, 0);
    CHECK(std::abs(res.probability - p_oracle) < 1e-12);
    CHECK(std::abs(res.probability - 0.5) < 1e-12);
    CHECK(std::abs(st.norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("measure_x sampling follows the branch probabilities") {
    Rng rng(77);
    int zeros = 0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        auto st = StateVector::product_state({SingleQubitState{1.0, 0.0}});
        const auto r = st.measure_x(1, std::nullopt, &rng);
        zeros += r.outcome == 0 ? 1 : 0;
        CHECK(std::abs(r.probability - 0.5) < 1e-12);
    }
    CHECK(std::abs(static_cast<double>(zeros) / trials - 0.5) < 0.03);

    auto st = StateVector::product_state({plus_x()});
    CHECK_THROWS_AS(st.measure_x(1, std::nullopt, nullptr), std::invalid_argument);
}

TEST_CASE("measure_x branch probabilities sum to one on random states") {
    Rng rng(23);
    std::vector<SingleQubitState> qs;
    for (int q = 0; q < 3; ++q)
        qs.push_back(state_from_orientation(
            {rng.uniform01() * kPi, rng.uniform01() * 2 * kPi}));
    auto st = StateVector::product_state(qs);
    st.apply_2q(1, 2, u_zz(kPi / 4, 0.37));
    st.apply_2q(2, 3, u_cp(kPi / 4, -0.21));
    for (int q = 1; q <= 3; ++q) {
        auto a = st;
        auto b = st;
        const double p0 = a.measure_x(q, 0).probability;
        const double p1 = b.measure_x(q, 1).probability;
        CHECK(std::abs(p0 + p1 - 1.0) < 1e-12);
    }
}

TEST_CASE("reduced_qubit examples") {
    auto st = StateVector::product_state({ket0(), plus_x()});
    const auto q2 = st.reduced_qubit(2);
    CHECK(std::abs(q2.bloch[0] - 1.0) < 1e-12);
    CHECK(std::abs(q2.bloch[1]) < 1e-12);
    CHECK(std::abs(q2.bloch[2]) < 1e-12);

    // Bell state: maximally mixed marginals
    auto bell = StateVector::product_state({plus_x(), ket0()});
    Mat4 cnot;
    cnot(0, 0) = 1;
    cnot(1, 1) = 1;
    cnot(2, 3) = 1;
    cnot(3, 2) = 1;
    bell.apply_2q(1, 2, cnot);
    for (int q = 1; q <= 2; ++q) {
        const auto red = bell.reduced_qubit(q);
        for (double c : red.bloch) CHECK(std::abs(c) < 1e-12);
    }
}

TEST_CASE("reduced_qubit Bloch vector matches the density-matrix oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const BlochOrientation r{rng.uniform01() * kPi, rng.uniform01() * 2 * kPi};
        const SingleQubitState psi = state_from_orientation(r);
        auto st = StateVector::product_state({psi, ket0()});
        const auto red = st.reduced_qubit(1);

        // oracle: rho = psi psi^dagger, Bloch = (2 Re rho01, -2 Im rho01, rho00-rho11)
        const c64 rho01 = psi.a0 * std::conj(psi.a1);
        const auto v = orientation_vector(r);
        CHECK(std::abs(red.bloch[0] - 2 * rho01.real()) < 1e-12);
        CHECK(std::abs(red.bloch[1] + 2 * rho01.imag()) < 1e-12);
        CHECK(std::abs(red.bloch[0] - v[0]) < 1e-10);
        CHECK(std::abs(red.bloch[1] - v[1]) < 1e-10);
        CHECK(std::abs(red.bloch[2] - v[2]) < 1e-10);
        const double len = std::sqrt(red.bloch[0] * red.bloch[0] + red.bloch[1] * red.bloch[1] +
                                     red.bloch[2] * red.bloch[2]);
        CHECK(std::abs(len - 1.0) < 1e-10);
    }
}

TEST_CASE("overlap basics and dimension check") {
    auto a = StateVector::product_state({plus_x(), plus_x()});
    CHECK(std::abs(overlap(a, a) - 1.0) < 1e-12);
    auto z0 = StateVector::product_state({ket0()});
    auto z1 = StateVector::product_state({ket1()});
    CHECK(std::abs(overlap(z0, z1)) < 1e-15);
    CHECK_THROWS_AS(overlap(a, z0), std::invalid_argument);
}

TEST_CASE("project_x_front agrees with measure_x on qubit 1") {
    auto st = StateVector::product_state({plus_x(), plus_x(), plus_x()});
    st.apply_2q(1, 2, cz_gate());
    st.apply_2q(2, 3, cz_gate());
    auto [p, rest] = project_x_front(st, 1);
    auto full = st;
    const auto res = full.measure_x(1, 1);
    CHECK(std::abs(p - res.probability) < 1e-12);
    CHECK(rest.num_qubits() == 2);
    rest.renormalize();
    // the reduced state matches the post-measurement marginal of qubit 3
    const auto red_a = rest.reduced_qubit(2);
    const auto red_b = full.reduced_qubit(3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(red_a.bloch[i] - red_b.bloch[i]) < 1e-12);
}
