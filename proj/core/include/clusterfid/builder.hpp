#pragma once

#include <cstdint>
#include <vector>

#include "clusterfid/gates.hpp"
#include "clusterfid/statevec.hpp"

namespace cfid {

// Fractional gate error per bond: the same value on every bond, an
// independent N(0, sigma) draw per bond from a seeded stream, or an
// explicit list.
struct ErrorModel {
    enum class Kind { Uniform, GaussianPerBond, Explicit };

    Kind kind = Kind::Uniform;
    double epsilon = 0.0;               // Uniform
    double sigma = 0.0;                 // GaussianPerBond
    uint64_t seed = 0;                  // GaussianPerBond
    std::vector<double> bond_epsilons;  // Explicit, length n_total - 1

    static ErrorModel uniform(double eps);
    static ErrorModel gaussian(double sigma, uint64_t seed);
    static ErrorModel explicit_list(std::vector<double> eps);
};

// One epsilon per bond (1,2) ... (N-1,N).
using BondErrors = std::vector<double>;

// A chain of n_total qubits: the input qubit plus an (n_total - 1)-qubit
// cluster. n_total must be odd (the byproduct bookkeeping assumes it),
// at least 3, and at most 11 so branch enumeration stays cheap.
struct ChainSpec {
    InteractionKind kind = InteractionKind::CP;
    int n_total = 3;
    ErrorModel error_model;

    int bond_count() const { return n_total - 1; }
    void validate() const;  // throws std::invalid_argument
};

// Draws (or copies) the per-bond errors for one realization. Gaussian bond
// b consumes the b-th draw of the seeded stream, so lists are reproducible.
BondErrors realize_errors(const ChainSpec& spec);

struct BuildResult {
    StateVector state;
    BondErrors bond_errors;
};

// Input-qubit-plus-cluster construction for each interaction:
//  CP: qubit 1 = input, 2..N = |+x>; u_cp(pi/4, eps_b) on every bond.
//  ZZ: qubit 1 = input, 2..N = |+x>; per bond u_zz(pi/4, eps_b) then
//      r_z(-pi/2) on both endpoints.
//  XY: qubit 1 = input, 2..N = |+y>; u_xy(pi/4, eps_b) on even bonds
//      (2,3),(4,5),... then on odd bonds (1,2),(3,4),...; finally
//      r_z(+pi/2) on every qubit that will be measured (1..N-1). XY gates
//      on bonds sharing a qubit do not commute, so the layer order is part
//      of the protocol.
BuildResult build_cp(const ChainSpec& spec, const BlochOrientation& input);
BuildResult build_zz(const ChainSpec& spec, const BlochOrientation& input);
BuildResult build_xy(const ChainSpec& spec, const BlochOrientation& input);

// Dispatch on spec.kind.
BuildResult build_chain(const ChainSpec& spec, const BlochOrientation& input);

// Same wirings with the input given as amplitudes and the bond errors fixed
// by the caller. Backbone of the public builders and of the branch-transfer
// fast path.
StateVector build_with_errors(InteractionKind kind, int n_total, const SingleQubitState& input,
                              const BondErrors& errors);

}  // namespace cfid
