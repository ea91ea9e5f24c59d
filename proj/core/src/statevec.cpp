#include "clusterfid/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfid {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kImpossibleBranch = 1e-15;

void check_qubit(int q, int n, const char* where) {
    if (q < 1 || q > n)
        throw std::invalid_argument(std::string(where) + ": qubit index " + std::to_string(q) +
                                    " out of range [1, " + std::to_string(n) + "]");
}

}  // namespace

SingleQubitState state_from_orientation(const BlochOrientation& r) {
    SingleQubitState s;
    s.a0 = std::cos(r.theta0 / 2.0);
    s.a1 = std::polar(std::sin(r.theta0 / 2.0), r.phi0);
    return s;
}

std::array<double, 3> orientation_vector(const BlochOrientation& r) {
    return {std::sin(r.theta0) * std::cos(r.phi0), std::sin(r.theta0) * std::sin(r.phi0),
            std::cos(r.theta0)};
}

StateVector StateVector::product_state(const std::vector<SingleQubitState>& qubits) {
    if (qubits.empty()) throw std::invalid_argument("product_state: empty qubit list");
    if (qubits.size() > kMaxQubits)
        throw std::invalid_argument("product_state: more than " + std::to_string(kMaxQubits) +
                                    " qubits");
    StateVector st;
    st.num_qubits_ = 0;
    st.amps_ = {c64{1.0, 0.0}};
    for (const auto& q : qubits) st.append_qubit(q);
    return st;
}

void StateVector::append_qubit(const SingleQubitState& s) {
    std::vector<c64> next(amps_.size() * 2);
    for (size_t i = 0; i < amps_.size(); ++i) {
        next[2 * i] = amps_[i] * s.a0;
        next[2 * i + 1] = amps_[i] * s.a1;
    }
    amps_ = std::move(next);
    ++num_qubits_;
}

size_t StateVector::bit_mask(int q) const { return size_t{1} << (num_qubits_ - q); }

double StateVector::norm_sq() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

void StateVector::apply_1q(int q, const Mat2& u) {
    check_qubit(q, num_qubits_, "apply_1q");
    if (!is_unitary(u, kUnitaryTol)) throw std::invalid_argument("apply_1q: matrix not unitary");
    const size_t mask = bit_mask(q);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const c64 a0 = amps_[i];
        const c64 a1 = amps_[i | mask];
        amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps_[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void StateVector::apply_2q(int qi, int qj, const Mat4& u) {
    check_qubit(qi, num_qubits_, "apply_2q");
    check_qubit(qj, num_qubits_, "apply_2q");
    if (qi == qj) throw std::invalid_argument("apply_2q: qubit indices collide");
    if (!is_unitary(u, kUnitaryTol)) throw std::invalid_argument("apply_2q: matrix not unitary");
    const size_t mi = bit_mask(qi);  // more significant tensor factor
    const size_t mj = bit_mask(qj);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & (mi | mj)) continue;
        const std::array<size_t, 4> idx = {i, i | mj, i | mi, i | mi | mj};
        std::array<c64, 4> in;
        for (int k = 0; k < 4; ++k) in[static_cast<size_t>(k)] = amps_[idx[static_cast<size_t>(k)]];
        for (int r = 0; r < 4; ++r) {
            c64 v = 0.0;
            for (int c = 0; c < 4; ++c) v += u(r, c) * in[static_cast<size_t>(c)];
            amps_[idx[static_cast<size_t>(r)]] = v;
        }
    }
}

MeasureResult StateVector::measure_x(int q, std::optional<int> forced, Rng* rng) {
    check_qubit(q, num_qubits_, "measure_x");
    const size_t mask = bit_mask(q);

    // Branch amplitudes <x_s| psi for both outcomes, kept in place:
    // component s lives at bit=0 with (a0 + (-1)^s a1)/sqrt(2).
    double p[2] = {0.0, 0.0};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const c64 a0 = amps_[i];
        const c64 a1 = amps_[i | mask];
        p[0] += std::norm((a0 + a1) * inv_sqrt2);
        p[1] += std::norm((a0 - a1) * inv_sqrt2);
    }

    int s;
    if (forced) {
        s = *forced;
        if (s != 0 && s != 1) throw std::invalid_argument("measure_x: outcome must be 0 or 1");
        if (p[s] < kImpossibleBranch)
            throw std::invalid_argument("measure_x: forced outcome has ~zero probability");
    } else {
        if (rng == nullptr) throw std::invalid_argument("measure_x: sampling requires an rng");
        s = rng->uniform01() < p[0] ? 0 : 1;
    }

    // Project, renormalize, and leave qubit q in |x_s>.
    const double sign = s == 0 ? 1.0 : -1.0;
    const double scale = 1.0 / std::sqrt(2.0 * p[s]);
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const c64 proj = (amps_[i] + sign * amps_[i | mask]) * scale;
        amps_[i] = proj * inv_sqrt2;
        amps_[i | mask] = sign * proj * inv_sqrt2;
    }
    return MeasureResult{s, p[s]};
}

ReducedQubit StateVector::reduced_qubit(int q) const {
    check_qubit(q, num_qubits_, "reduced_qubit");
    const size_t mask = bit_mask(q);
    Mat2 rho;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const c64 a0 = amps_[i];
        const c64 a1 = amps_[i | mask];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    ReducedQubit out;
    out.rho = rho;
    out.bloch = {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
                 rho(0, 0).real() - rho(1, 1).real()};
    return out;
}

double StateVector::renormalize() {
    const double n2 = norm_sq();
    if (n2 >= 1e-150) {
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amps_) a *= inv;
    }
    return n2;
}

c64 overlap(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("overlap: dimension mismatch");
    c64 v = 0.0;
    for (size_t i = 0; i < a.size(); ++i) v += std::conj(a.amplitude(i)) * b.amplitude(i);
    return v;
}

std::pair<double, StateVector> project_x_front(const StateVector& state, int s) {
    if (state.num_qubits() < 2)
        throw std::invalid_argument("project_x_front: need at least 2 qubits");
    const size_t half = state.size() / 2;
    const double sign = s == 0 ? 1.0 : -1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    StateVector rest;
    rest.num_qubits_ = state.num_qubits() - 1;
    rest.amps_.resize(half);
    double p = 0.0;
    for (size_t i = 0; i < half; ++i) {
        const c64 v = (state.amplitude(i) + sign * state.amplitude(i + half)) * inv_sqrt2;
        rest.amps_[i] = v;
        p += std::norm(v);
    }
    return {p, std::move(rest)};
}

}  // namespace cfid
