#pragma once

#include <string>

#include "clusterfid/linalg.hpp"

namespace cfid {

// The three native two-qubit interactions a chain can be built from.
enum class InteractionKind { CP, ZZ, XY };

std::string to_string(InteractionKind kind);
InteractionKind interaction_from_string(const std::string& name);

// Error-prone controlled-phase gate diag(1, 1, 1, e^{-i 4 theta (1+epsilon)});
// theta = Jt, so theta = pi/4 gives CZ at epsilon = 0.
Mat4 u_cp(double theta, double epsilon);

// Error-prone Ising gate e^{-i theta (1+epsilon) ZZ}:
// diag(e^{-i t'}, e^{i t'}, e^{i t'}, e^{-i t'}) with t' = theta (1+epsilon).
Mat4 u_zz(double theta, double epsilon);

// Error-prone XY gate e^{-i theta (1+epsilon) (XX+YY)}: identity corners,
// inner block [[cos 2t', -i sin 2t'], [-i sin 2t', cos 2t']]. theta = pi/4
// gives iSWAP at epsilon = 0.
Mat4 u_xy(double theta, double epsilon);

// Error-free one-qubit rotations e^{-i phi Z/2} and e^{-i delta X/2}.
Mat2 r_z(double phi);
Mat2 r_x(double delta);

// Fixed reference gates.
Mat4 cz_gate();
Mat4 iswap_gate();
Mat4 swap_gate();

}  // namespace cfid
