#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clusterfid/gates.hpp"

namespace cfid {

// Primitive in a composite-gate sequence: an error-prone two-qubit pulse or
// an error-free one-qubit rotation on one side of the pair.
struct Pulse {
    enum class Kind { TwoQubit, OneQubitX, OneQubitZ };

    Kind kind = Kind::TwoQubit;
    InteractionKind family = InteractionKind::ZZ;  // TwoQubit
    double theta = 0.0;                            // TwoQubit
    double epsilon = 0.0;                          // TwoQubit
    int target = 2;                                // OneQubit*: 1 or 2
    double angle = 0.0;                            // OneQubit*
};

std::string to_string(const Pulse& p);

// Pulses are listed operator-style: the rightmost (last) element acts first.
struct PulseSequence {
    std::vector<Pulse> pulses;

    int two_qubit_count() const;
};

// Multiplies the primitives out, in listed order.
Mat4 compose(const PulseSequence& seq);

struct CompositeGate {
    Mat4 matrix;
    PulseSequence sequence;
};

// Interaction angle matched to a sandwich-pulse angle: theta = 4 pi cos(x).
// This is the J/B = 8 pi cos(x)/x time parameterization combined with
// theta = (J/2B) x; the +-2pi sandwiches cancel the leading error only at
// this matching.
double matched_theta(double pulse_angle);

// Solves 8 pi cos(x)/x = j_over_b by bracketed bisection, scanning
// pi-shifted brackets (and the negative axis when the positive one cannot
// reach the target). Residual below 1e-10. `family` only labels the result;
// the equation is the same for the Ising and XY pulse matchings.
double solve_timescale(double j_over_b, InteractionKind family);

// Refocused Ising gate
//   X(-d) ZZ(-2pi,e) X(+d) X(+d) ZZ(-2pi,e) X(-d) ZZ(theta,e),
// equal to u_zz(theta, 0) at e = 0 and, at the matched theta, accurate to
// O(e^2) with leading error delta_u_zz(delta) e^2.
CompositeGate v_zz(double theta, double epsilon, double delta);

// Same shape with Z-axis one-qubit pulses around XY interactions.
CompositeGate v_xy(double theta, double epsilon, double alpha);

// Ising action extracted from two doubled controlled-phase pulses
// conjugated by x-flips on both qubits. theta is the *total conditional
// phase*: u_ex(theta, e) = e^{-i theta (1+e)} u_zz(theta, e) exactly, and
// each doubled CP pulse is emitted as two half-angle pulses.
CompositeGate u_ex(double theta, double epsilon);

// Refocused controlled-phase gate, built from u_ex pulses plus a leading
// pair of one-qubit Z pulses that reinsert the single-qubit phases. theta
// is the total conditional phase: the ideal target is u_cp(theta/4, 0) =
// diag(1,1,1,e^{-i theta}). gamma defaults to arccos(theta/16pi), the
// matching for the internal theta/4 Ising angle.
CompositeGate v_cp(double theta, double epsilon, std::optional<double> gamma = std::nullopt);

// diag(1,1,1,e^{-i theta}): the gate v_cp(theta, ...) approximates.
Mat4 v_cp_target(double theta);

// |Tr(v u_ideal^dagger)| / 4; both arguments must be unitary.
double gate_fidelity_2q(const Mat4& v, const Mat4& u_ideal);

// Analytic leading-error matrices of the refocused gates,
// V(e) = U(theta,0) + DeltaU e^2 + O(e^3) at the matched theta.
Mat4 delta_u_zz(double delta);
Mat4 delta_u_xy(double alpha);

// Leading infidelity coefficients: 1 - F2 = raw_coeff e^2 (bare gates) and
// refocused_coeff e^4 (composite gates), at the matched theta.
double raw_infidelity_coeff(InteractionKind family, double pulse_angle_or_theta);
double refocused_infidelity_coeff(InteractionKind family, double pulse_angle_or_theta);

// Numerical limit of (G(e) - G(0))/e^2 evaluated at eps: the symmetric
// difference over +-eps cancels the odd orders that pollute a one-sided
// quotient, and one Richardson step over eps/2 removes the remaining e^2
// bias of the estimator itself.
Mat4 second_order_error(const std::function<Mat4(double)>& gate, const Mat4& at_zero, double eps);

}  // namespace cfid
