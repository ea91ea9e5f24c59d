#include "clusterfid/refocus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cfid {

namespace {

Mat4 pulse_matrix(const Pulse& p) {
    switch (p.kind) {
        case Pulse::Kind::TwoQubit:
            switch (p.family) {
                case InteractionKind::CP: return u_cp(p.theta, p.epsilon);
                case InteractionKind::ZZ: return u_zz(p.theta, p.epsilon);
                case InteractionKind::XY: return u_xy(p.theta, p.epsilon);
            }
            break;
        case Pulse::Kind::OneQubitX:
            return p.target == 1 ? kron(r_x(p.angle), pauli_i()) : kron(pauli_i(), r_x(p.angle));
        case Pulse::Kind::OneQubitZ:
            return p.target == 1 ? kron(r_z(p.angle), pauli_i()) : kron(pauli_i(), r_z(p.angle));
    }
    throw std::logic_error("pulse_matrix: unreachable");
}

Pulse two_qubit(InteractionKind family, double theta, double epsilon) {
    Pulse p;
    p.kind = Pulse::Kind::TwoQubit;
    p.family = family;
    p.theta = theta;
    p.epsilon = epsilon;
    return p;
}

Pulse one_qubit(Pulse::Kind kind, int target, double angle) {
    Pulse p;
    p.kind = kind;
    p.target = target;
    p.angle = angle;
    return p;
}

void append(PulseSequence& seq, const PulseSequence& tail) {
    seq.pulses.insert(seq.pulses.end(), tail.pulses.begin(), tail.pulses.end());
}

}  // namespace

std::string to_string(const Pulse& p) {
    std::ostringstream os;
    switch (p.kind) {
        case Pulse::Kind::TwoQubit:
            os << to_string(p.family) << "(theta=" << p.theta << ", eps=" << p.epsilon << ")";
            break;
        case Pulse::Kind::OneQubitX:
            os << "x" << p.target << "(" << p.angle << ")";
            break;
        case Pulse::Kind::OneQubitZ:
            os << "z" << p.target << "(" << p.angle << ")";
            break;
    }
    return os.str();
}

int PulseSequence::two_qubit_count() const {
    int n = 0;
    for (const auto& p : pulses)
        if (p.kind == Pulse::Kind::TwoQubit) ++n;
    return n;
}

Mat4 compose(const PulseSequence& seq) {
    Mat4 m = Mat4::identity();
    for (const Pulse& p : seq.pulses) m = m * pulse_matrix(p);
    return m;
}

double matched_theta(double pulse_angle) { return 4.0 * kPi * std::cos(pulse_angle); }

double solve_timescale(double j_over_b, InteractionKind family) {
    (void)family;  // same transcendental equation for both matchings
    if (!std::isfinite(j_over_b))
        throw std::invalid_argument("solve_timescale: ratio must be finite");

    auto f = [&](double x) { return 8.0 * kPi * std::cos(x) / x - j_over_b; };

    auto bisect = [&](double lo, double hi) {
        double flo = f(lo);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((flo <= 0.0) == (fm <= 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    // Scan pi-shifted brackets, finely subdivided so interior root pairs
    // lacking an endpoint sign change are still caught. The positive axis
    // covers every ratio above the global minimum of 8 pi cos(x)/x
    // (about -8.46); below that the root sits on the negative axis.
    constexpr int kSubdiv = 64;
    constexpr int kMaxBands = 16;
    for (int sign = 1; sign >= -1; sign -= 2) {
        for (int band = 0; band < kMaxBands; ++band) {
            const double a = band * kPi + 1e-9;
            const double b = (band + 1) * kPi;
            double prev_x = sign * a;
            double prev_f = f(prev_x);
            for (int k = 1; k <= kSubdiv; ++k) {
                const double x = sign * (a + (b - a) * k / kSubdiv);
                const double fx = f(x);
                if ((prev_f <= 0.0) != (fx <= 0.0)) {
                    const double root = bisect(prev_x, x);
                    if (std::abs(f(root)) < 1e-10) return root;
                }
                prev_x = x;
                prev_f = fx;
            }
        }
    }
    throw std::runtime_error("solve_timescale: no root found");
}

CompositeGate v_zz(double theta, double epsilon, double delta) {
    PulseSequence seq;
    seq.pulses = {
        one_qubit(Pulse::Kind::OneQubitX, 2, -delta),
        two_qubit(InteractionKind::ZZ, -2.0 * kPi, epsilon),
        one_qubit(Pulse::Kind::OneQubitX, 2, delta),
        one_qubit(Pulse::Kind::OneQubitX, 2, delta),
        two_qubit(InteractionKind::ZZ, -2.0 * kPi, epsilon),
        one_qubit(Pulse::Kind::OneQubitX, 2, -delta),
        two_qubit(InteractionKind::ZZ, theta, epsilon),
    };
    return CompositeGate{compose(seq), std::move(seq)};
}

CompositeGate v_xy(double theta, double epsilon, double alpha) {
    PulseSequence seq;
    seq.pulses = {
        one_qubit(Pulse::Kind::OneQubitZ, 2, -alpha),
        two_qubit(InteractionKind::XY, -2.0 * kPi, epsilon),
        one_qubit(Pulse::Kind::OneQubitZ, 2, alpha),
        one_qubit(Pulse::Kind::OneQubitZ, 2, alpha),
        two_qubit(InteractionKind::XY, -2.0 * kPi, epsilon),
        one_qubit(Pulse::Kind::OneQubitZ, 2, -alpha),
        two_qubit(InteractionKind::XY, theta, epsilon),
    };
    return CompositeGate{compose(seq), std::move(seq)};
}

CompositeGate u_ex(double theta, double epsilon) {
    // Flip both qubits, run the doubled CP pulse, flip back, run it again.
    // Each doubled pulse carries conditional phase 2*theta and is emitted as
    // two half-angle pulses, i.e. u_cp(theta/4, eps) twice.
    PulseSequence seq;
    auto half_flip = [] { return one_qubit(Pulse::Kind::OneQubitX, 1, kPi); };
    auto half_flip2 = [] { return one_qubit(Pulse::Kind::OneQubitX, 2, kPi); };
    auto cp_pulse = [&] { return two_qubit(InteractionKind::CP, theta / 4.0, epsilon); };
    seq.pulses = {half_flip(), half_flip2(), cp_pulse(), cp_pulse(),
                  half_flip(), half_flip2(), cp_pulse(), cp_pulse()};
    return CompositeGate{compose(seq), std::move(seq)};
}

Mat4 v_cp_target(double theta) {
    return Mat4::diagonal({1.0, 1.0, 1.0, std::polar(1.0, -theta)});
}

CompositeGate v_cp(double theta, double epsilon, std::optional<double> gamma_opt) {
    double gamma;
    if (gamma_opt) {
        gamma = *gamma_opt;
    } else {
        const double ratio = theta / (16.0 * kPi);
        if (std::abs(ratio) > 1.0)
            throw std::invalid_argument("v_cp: default gamma needs |theta/16pi| <= 1");
        gamma = std::acos(ratio);
    }

    PulseSequence seq;
    seq.pulses = {
        one_qubit(Pulse::Kind::OneQubitZ, 1, -theta / 2.0),
        one_qubit(Pulse::Kind::OneQubitZ, 2, -theta / 2.0),
        one_qubit(Pulse::Kind::OneQubitX, 2, -gamma),
    };
    append(seq, u_ex(-2.0 * kPi, epsilon).sequence);
    seq.pulses.push_back(one_qubit(Pulse::Kind::OneQubitX, 2, gamma));
    seq.pulses.push_back(one_qubit(Pulse::Kind::OneQubitX, 2, gamma));
    append(seq, u_ex(-2.0 * kPi, epsilon).sequence);
    seq.pulses.push_back(one_qubit(Pulse::Kind::OneQubitX, 2, -gamma));
    append(seq, u_ex(theta / 4.0, epsilon).sequence);
    return CompositeGate{compose(seq), std::move(seq)};
}

double gate_fidelity_2q(const Mat4& v, const Mat4& u_ideal) {
    if (!is_unitary(v, 1e-8) || !is_unitary(u_ideal, 1e-8))
        throw std::invalid_argument("gate_fidelity_2q: inputs must be unitary");
    return std::abs((v * u_ideal.adjoint()).trace()) / 4.0;
}

Mat4 delta_u_zz(double delta) {
    const c64 d = c64{0.0, -4.0 * kPi * kPi} * std::polar(1.0, 4.0 * kPi * std::cos(delta)) *
                  std::sin(2.0 * delta);
    Mat4 m;
    m(0, 1) = d;
    m(1, 0) = -std::conj(d);
    m(2, 3) = -std::conj(d);
    m(3, 2) = d;
    return m;
}

Mat4 delta_u_xy(double alpha) {
    const double s = std::sin(2.0 * alpha);
    const double arg = 8.0 * kPi * std::cos(alpha);
    const c64 c = c64{0.0, 16.0 * kPi * kPi} * std::cos(arg) * s;
    const c64 cp = -16.0 * kPi * kPi * std::sin(arg) * s;
    Mat4 m;
    m(1, 1) = c;
    m(1, 2) = -cp;
    m(2, 1) = cp;
    m(2, 2) = std::conj(c);
    return m;
}

double raw_infidelity_coeff(InteractionKind family, double pulse_angle_or_theta) {
    switch (family) {
        case InteractionKind::ZZ: {
            const double c = std::cos(pulse_angle_or_theta);
            return 8.0 * kPi * kPi * c * c;
        }
        case InteractionKind::XY: {
            const double c = std::cos(pulse_angle_or_theta);
            return 16.0 * kPi * kPi * c * c;
        }
        case InteractionKind::CP: {
            const double t = pulse_angle_or_theta;
            return 3.0 * t * t / 32.0;
        }
    }
    throw std::logic_error("raw_infidelity_coeff: unreachable");
}

Mat4 second_order_error(const std::function<Mat4(double)>& gate, const Mat4& at_zero,
                        double eps) {
    auto sym = [&](double e) {
        const Mat4 plus = gate(e);
        const Mat4 minus = gate(-e);
        Mat4 est;
        for (size_t i = 0; i < est.a.size(); ++i)
            est.a[i] = (plus.a[i] + minus.a[i] - 2.0 * at_zero.a[i]) / (2.0 * e * e);
        return est;
    };
    const Mat4 full = sym(eps);
    const Mat4 half = sym(eps / 2.0);
    Mat4 out;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = (4.0 * half.a[i] - full.a[i]) / 3.0;
    return out;
}

double refocused_infidelity_coeff(InteractionKind family, double pulse_angle_or_theta) {
    switch (family) {
        case InteractionKind::ZZ: {
            const double s = std::sin(2.0 * pulse_angle_or_theta);
            return 8.0 * std::pow(kPi, 4) * s * s;
        }
        case InteractionKind::XY: {
            const double s = std::sin(2.0 * pulse_angle_or_theta);
            return 64.0 * std::pow(kPi, 4) * s * s;
        }
        case InteractionKind::CP: {
            const double t = pulse_angle_or_theta;
            return -t * t * (t * t - 256.0 * kPi * kPi) / 2048.0;
        }
    }
    throw std::logic_error("refocused_infidelity_coeff: unreachable");
}

}  // namespace cfid
