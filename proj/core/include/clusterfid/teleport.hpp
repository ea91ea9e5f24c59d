#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "clusterfid/builder.hpp"

namespace cfid {

// Outcomes s_1 .. s_{N-1} of the x measurements, in qubit order.
struct MeasurementRecord {
    std::vector<uint8_t> s;
};

// Pauli correction accumulated on the output qubit. Standard realizes
// X^a Z^b with a = sum of even-position outcomes and b = sum of odd-position
// outcomes (mod 2); XZSwapped exchanges the roles, which is the rule for the
// twisted chain built from the XY interaction.
enum class ByproductVariant { Standard, XZSwapped };

Mat2 byproduct(const MeasurementRecord& record, ByproductVariant variant);

ByproductVariant byproduct_for(InteractionKind kind);

// One forced-outcome path: its record, cumulative probability, and the
// output qubit state. Branches whose probability underflows 1e-15 are kept
// in the list but flagged invalid and skipped when averaging.
struct Branch {
    MeasurementRecord record;
    double probability = 0.0;
    SingleQubitState output;
    bool valid = false;
};

// All 2^{N-1} branches of x-measuring qubits 1..N-1, in lexicographic
// record order (s_1 most significant).
std::vector<Branch> enumerate_branches(const StateVector& state);

enum class ChannelClass { Quantum, Indeterminate, Classical };

// F > 2/3 certifies a quantum channel; F <= 1/2 only a classical one.
ChannelClass classify_channel(double fidelity);
std::string to_string(ChannelClass c);

struct FidelityReport {
    ChainSpec spec;
    BlochOrientation input;
    BondErrors bond_errors;
    std::vector<Branch> branches;
    std::vector<double> branch_fidelities;  // aligned with `branches`, -1 when invalid
    double weighted_fidelity = 0.0;
    double min_branch = 0.0;
    double max_branch = 0.0;
    double branch_spread = 0.0;
    double excluded_mass = 0.0;
    ChannelClass channel = ChannelClass::Classical;
};

struct TeleportOptions {
    // Overrides the kind-derived byproduct rule; diagnostic use only.
    std::optional<ByproductVariant> byproduct_override;
};

// Builds the chain, enumerates every measurement branch, corrects each
// output with its byproduct, and reports per-branch fidelities
// |<psi_in| U_S |psi_out>|^2 with their probability-weighted average.
FidelityReport teleport_fidelity(const ChainSpec& spec, const BlochOrientation& input,
                                 const TeleportOptions& opts = {});

// One randomized measurement trajectory; the mean over seeds converges to
// the weighted fidelity. Deterministic for a fixed seed.
std::pair<MeasurementRecord, double> sample_run(const ChainSpec& spec,
                                                const BlochOrientation& input, uint64_t seed);

// Teleports along the same logical chain while holding at most `window`
// live qubits: measure leading qubits as soon as every gate touching them
// has run, drop them, attach fresh ones. Exactly reorders commuting
// operations, so the report matches teleport_fidelity. window >= 3.
FidelityReport refresh_teleport(const ChainSpec& spec, const BlochOrientation& input, int window);

// Unnormalized output amplitudes per branch as a linear map of the input
// amplitudes (columns = outputs for inputs |0> and |1>). One chain build
// pair serves every input orientation, which is what makes direction sweeps
// cheap. Matches the direct path within roundoff; tested against it.
struct BranchTransfer {
    MeasurementRecord record;
    Mat2 m;
};

std::vector<BranchTransfer> branch_transfers(InteractionKind kind, int n_total,
                                             const BondErrors& errors);

// Weighted fidelity for one input evaluated through transfer matrices.
double weighted_fidelity(const std::vector<BranchTransfer>& transfers,
                         const SingleQubitState& input, ByproductVariant variant);

// Direct single-pass weighted fidelity for one already-built chain.
double weighted_fidelity_direct(const StateVector& state, const SingleQubitState& input,
                                ByproductVariant variant);

}  // namespace cfid
