#pragma once

#include "clusterfid/gates.hpp"

namespace cfid {

// Closed-form teleportation-fidelity laws for uniform per-bond error.
// These are the oracles the simulator is checked against.

// Three-qubit chain, controlled-phase interaction:
// 1 - (1 - sin^2 t0 cos^2 p0) sin^2(pi e/2)/2 - sin^2(t0/2) sin^2(pi e)/2.
double f_cp_n3(double theta0, double phi0, double epsilon);

// Three-qubit chain, Ising interaction:
// 1 - (1 - sin^2 t0 sin^2 p0) sin^2(pi e/2)/2.
double f_zz_n3(double theta0, double phi0, double epsilon);

// Worst-case (x-z plane) fidelity for an odd n-qubit Ising chain:
// (1 + cos^{n-1}(pi e/2)) / 2. The XY chain obeys the same law.
double min_f_zz(int n, double epsilon);

// Error at which min_f_zz crosses 2/3: (2/pi) arccos(3^{1/(1-n)}).
double eps_max(int n);

// |<chain(0)|chain(e)>| for Ising builds with the input fixed at |+x>:
// cos^{n-1}(pi e/4).
double cluster_overlap(int n, double epsilon);

// Second-order fidelity coefficient F = 1 + f2 e^2 + O(e^3) on the
// three-qubit chain. ZZ: -(pi^2/8)(1 - sin^2 t0 sin^2 p0);
// CP: -(pi^2/8)(1 - sin^2 t0 cos^2 p0 + 4 sin^2(t0/2)). No XY form is
// derived; XY is checked against the ZZ coefficient empirically, so asking
// for it here throws.
double perturbative_f2(InteractionKind kind, double theta0, double phi0);

}  // namespace cfid
