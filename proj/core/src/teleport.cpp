#include "clusterfid/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfid {

namespace {

constexpr double kExcludedBranch = 1e-15;  // branches below this carry no output
constexpr double kDeadBranch = 1e-150;     // below this, renormalization is meaningless

c64 inner(const SingleQubitState& bra, const SingleQubitState& ket) {
    return std::conj(bra.a0) * ket.a0 + std::conj(bra.a1) * ket.a1;
}

SingleQubitState apply(const Mat2& m, const SingleQubitState& s) {
    return SingleQubitState{m(0, 0) * s.a0 + m(0, 1) * s.a1, m(1, 0) * s.a0 + m(1, 1) * s.a1};
}

double branch_fidelity(const SingleQubitState& input, const Mat2& correction,
                       const SingleQubitState& output) {
    return std::norm(inner(input, apply(correction, output)));
}

}  // namespace

Mat2 byproduct(const MeasurementRecord& record, ByproductVariant variant) {
    if (record.s.empty() || record.s.size() % 2 != 0)
        throw std::invalid_argument(
            "byproduct: record length must be even and nonzero (odd-chain rule)");
    int even_sum = 0;
    int odd_sum = 0;
    for (size_t j = 1; j <= record.s.size(); ++j) {
        if (j % 2 == 0)
            even_sum += record.s[j - 1];
        else
            odd_sum += record.s[j - 1];
    }
    const int a = even_sum % 2;
    const int b = odd_sum % 2;
    // x-then-z operator order; the reverse differs by a global phase only.
    Mat2 first = variant == ByproductVariant::Standard ? pauli_x() : pauli_z();
    Mat2 second = variant == ByproductVariant::Standard ? pauli_z() : pauli_x();
    Mat2 m = Mat2::identity();
    if (a) m = m * first;
    if (b) m = m * second;
    return m;
}

ByproductVariant byproduct_for(InteractionKind kind) {
    return kind == InteractionKind::XY ? ByproductVariant::XZSwapped : ByproductVariant::Standard;
}

namespace {

void enumerate_rec(const StateVector& st, double prob, bool dead, std::vector<uint8_t>& rec,
                   std::vector<Branch>& out) {
    if (st.num_qubits() == 1) {
        Branch b;
        b.record.s = rec;
        b.probability = dead ? 0.0 : prob;
        if (!dead && b.probability >= kExcludedBranch) {
            b.output = SingleQubitState{st.amplitude(0), st.amplitude(1)};
            b.valid = true;
        }
        out.push_back(std::move(b));
        return;
    }
    for (int s = 0; s < 2; ++s) {
        auto [p, rest] = project_x_front(st, s);
        rec.push_back(static_cast<uint8_t>(s));
        if (dead || p < kDeadBranch) {
            enumerate_rec(rest, 0.0, true, rec, out);
        } else {
            rest.renormalize();
            enumerate_rec(rest, prob * p, false, rec, out);
        }
        rec.pop_back();
    }
}

}  // namespace

std::vector<Branch> enumerate_branches(const StateVector& state) {
    if (state.num_qubits() < 3)
        throw std::invalid_argument("enumerate_branches: need at least 3 qubits");
    std::vector<Branch> out;
    out.reserve(size_t{1} << (state.num_qubits() - 1));
    std::vector<uint8_t> rec;
    enumerate_rec(state, 1.0, false, rec, out);
    return out;
}

ChannelClass classify_channel(double fidelity) {
    if (fidelity > 2.0 / 3.0) return ChannelClass::Quantum;
    if (fidelity > 0.5) return ChannelClass::Indeterminate;
    return ChannelClass::Classical;
}

std::string to_string(ChannelClass c) {
    switch (c) {
        case ChannelClass::Quantum: return "quantum";
        case ChannelClass::Indeterminate: return "indeterminate";
        case ChannelClass::Classical: return "classical";
    }
    return "?";
}

namespace {

FidelityReport assemble_report(const ChainSpec& spec, const BlochOrientation& input,
                               BondErrors errors, std::vector<Branch> branches,
                               ByproductVariant variant) {
    FidelityReport rep;
    rep.spec = spec;
    rep.input = input;
    rep.bond_errors = std::move(errors);
    rep.branch_fidelities.reserve(branches.size());

    const SingleQubitState psi_in = state_from_orientation(input);
    double weighted = 0.0;
    double excluded = 0.0;
    double fmin = 2.0;
    double fmax = -1.0;
    for (const Branch& b : branches) {
        if (!b.valid) {
            excluded += b.probability;
            rep.branch_fidelities.push_back(-1.0);
            continue;
        }
        const double f = branch_fidelity(psi_in, byproduct(b.record, variant), b.output);
        rep.branch_fidelities.push_back(f);
        weighted += b.probability * f;
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    rep.branches = std::move(branches);
    rep.weighted_fidelity = weighted;
    rep.excluded_mass = excluded;
    rep.min_branch = fmin <= 1.5 ? fmin : 0.0;
    rep.max_branch = fmax >= 0.0 ? fmax : 0.0;
    rep.branch_spread = rep.max_branch - rep.min_branch;
    rep.channel = classify_channel(weighted);
    return rep;
}

}  // namespace

FidelityReport teleport_fidelity(const ChainSpec& spec, const BlochOrientation& input,
                                 const TeleportOptions& opts) {
    spec.validate();
    BuildResult built = build_chain(spec, input);
    std::vector<Branch> branches = enumerate_branches(built.state);
    const ByproductVariant variant =
        opts.byproduct_override ? *opts.byproduct_override : byproduct_for(spec.kind);
    return assemble_report(spec, input, std::move(built.bond_errors), std::move(branches),
                           variant);
}

std::pair<MeasurementRecord, double> sample_run(const ChainSpec& spec,
                                                const BlochOrientation& input, uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    BuildResult built = build_chain(spec, input);
    StateVector st = std::move(built.state);
    MeasurementRecord record;
    while (st.num_qubits() > 1) {
        auto [p0, rest0] = project_x_front(st, 0);
        const int s = rng.uniform01() < p0 ? 0 : 1;
        record.s.push_back(static_cast<uint8_t>(s));
        if (s == 0) {
            st = std::move(rest0);
        } else {
            auto [p1, rest1] = project_x_front(st, 1);
            st = std::move(rest1);
        }
        st.renormalize();
    }
    const SingleQubitState out{st.amplitude(0), st.amplitude(1)};
    const ByproductVariant variant = byproduct_for(spec.kind);
    const double f =
        branch_fidelity(state_from_orientation(input), byproduct(record, variant), out);
    return {std::move(record), f};
}

// ---------------------------------------------------------------------------
// Windowed refreshing
// ---------------------------------------------------------------------------

namespace {

struct RefreshOp {
    enum class Type { Attach, Bond, Rz, Measure };
    Type type;
    int qubit = 0;  // Attach / Rz / Measure
    int bond = 0;   // Bond: acts on (bond, bond+1)
};

// Greedy schedule holding at most `window` live qubits. A qubit is measured
// once every gate touching it has run; XY bond layering (even bonds before
// the odd bonds that share a qubit with them) is respected, so the schedule
// is the reference build reordered only across commuting operations.
std::vector<RefreshOp> make_refresh_schedule(InteractionKind kind, int n, int window) {
    std::vector<RefreshOp> ops;
    std::vector<char> bond_applied(static_cast<size_t>(n), 0);  // index by bond, 1-based
    std::vector<char> rz_applied(static_cast<size_t>(n) + 1, 0);
    int lo = 1, hi = 1, next = 2;

    auto bond_live = [&](int b) { return b >= lo && b + 1 <= hi; };
    auto bond_ready = [&](int b) {
        if (!bond_live(b) || bond_applied[static_cast<size_t>(b)]) return false;
        if (kind != InteractionKind::XY) return true;
        if (b % 2 == 0) return true;  // layer 1
        // layer 2: even neighbors must already be in place
        if (b - 1 >= 2 && !bond_applied[static_cast<size_t>(b - 1)]) return false;
        if (b + 1 <= n - 1 && !bond_applied[static_cast<size_t>(b + 1)]) return false;
        return true;
    };
    auto bonds_done_at = [&](int q) {
        if (q - 1 >= 1 && !bond_applied[static_cast<size_t>(q - 1)]) return false;
        if (q <= n - 1 && !bond_applied[static_cast<size_t>(q)]) return false;
        return true;
    };
    auto rz_ready = [&](int q) {
        return q <= n - 1 && !rz_applied[static_cast<size_t>(q)] && bonds_done_at(q);
    };
    auto measurable = [&](int q) {
        if (!bonds_done_at(q)) return false;
        if (kind == InteractionKind::XY && !rz_applied[static_cast<size_t>(q)]) return false;
        return true;
    };

    while (lo < n || next <= n) {
        bool progressed = true;
        while (progressed) {
            progressed = false;
            for (int b = lo; b <= hi - 1 && b <= n - 1; ++b) {
                if (bond_ready(b)) {
                    ops.push_back({RefreshOp::Type::Bond, 0, b});
                    bond_applied[static_cast<size_t>(b)] = 1;
                    progressed = true;
                }
            }
            if (kind == InteractionKind::XY) {
                for (int q = lo; q <= hi && q <= n - 1; ++q) {
                    if (rz_ready(q)) {
                        ops.push_back({RefreshOp::Type::Rz, q, 0});
                        rz_applied[static_cast<size_t>(q)] = 1;
                        progressed = true;
                    }
                }
            }
        }
        if (hi - lo + 1 < window && next <= n) {
            ops.push_back({RefreshOp::Type::Attach, next, 0});
            hi = next++;
        } else if (lo <= n - 1 && measurable(lo)) {
            ops.push_back({RefreshOp::Type::Measure, lo, 0});
            ++lo;
        } else {
            throw std::logic_error("refresh_teleport: window too small for the bond protocol");
        }
    }
    return ops;
}

struct RefreshExec {
    InteractionKind kind;
    const std::vector<RefreshOp>& ops;
    const BondErrors& eps;
    std::vector<Branch>& out;

    void run(size_t idx, StateVector st, int lo, double prob, bool dead,
             std::vector<uint8_t>& rec) {
        for (size_t i = idx; i < ops.size(); ++i) {
            const RefreshOp& op = ops[i];
            switch (op.type) {
                case RefreshOp::Type::Attach: {
                    const double v = 1.0 / std::sqrt(2.0);
                    st.append_qubit(kind == InteractionKind::XY
                                        ? SingleQubitState{v, c64{0.0, v}}
                                        : SingleQubitState{v, v});
                    break;
                }
                case RefreshOp::Type::Bond: {
                    const int s1 = op.bond - lo + 1;
                    const double e = eps[static_cast<size_t>(op.bond - 1)];
                    switch (kind) {
                        case InteractionKind::CP:
                            st.apply_2q(s1, s1 + 1, u_cp(kPi / 4.0, e));
                            break;
                        case InteractionKind::ZZ:
                            st.apply_2q(s1, s1 + 1, u_zz(kPi / 4.0, e));
                            st.apply_1q(s1, r_z(-kPi / 2.0));
                            st.apply_1q(s1 + 1, r_z(-kPi / 2.0));
                            break;
                        case InteractionKind::XY:
                            st.apply_2q(s1, s1 + 1, u_xy(kPi / 4.0, e));
                            break;
                    }
                    break;
                }
                case RefreshOp::Type::Rz:
                    st.apply_1q(op.qubit - lo + 1, r_z(kPi / 2.0));
                    break;
                case RefreshOp::Type::Measure: {
                    for (int s = 0; s < 2; ++s) {
                        auto [p, rest] = project_x_front(st, s);
                        rec.push_back(static_cast<uint8_t>(s));
                        if (dead || p < kDeadBranch) {
                            run(i + 1, rest, lo + 1, 0.0, true, rec);
                        } else {
                            rest.renormalize();
                            run(i + 1, std::move(rest), lo + 1, prob * p, false, rec);
                        }
                        rec.pop_back();
                    }
                    return;
                }
            }
        }
        Branch b;
        b.record.s = rec;
        b.probability = dead ? 0.0 : prob;
        if (!dead && b.probability >= kExcludedBranch) {
            b.output = SingleQubitState{st.amplitude(0), st.amplitude(1)};
            b.valid = true;
        }
        out.push_back(std::move(b));
    }
};

}  // namespace

FidelityReport refresh_teleport(const ChainSpec& spec, const BlochOrientation& input,
                                int window) {
    spec.validate();
    if (window < 3) throw std::invalid_argument("refresh_teleport: window must be >= 3");

    BondErrors errors = realize_errors(spec);
    const std::vector<RefreshOp> ops = make_refresh_schedule(spec.kind, spec.n_total, window);

    std::vector<Branch> branches;
    branches.reserve(size_t{1} << (spec.n_total - 1));
    std::vector<uint8_t> rec;
    StateVector initial = StateVector::product_state({state_from_orientation(input)});
    RefreshExec exec{spec.kind, ops, errors, branches};
    exec.run(0, std::move(initial), 1, 1.0, false, rec);

    return assemble_report(spec, input, std::move(errors), std::move(branches),
                           byproduct_for(spec.kind));
}

// ---------------------------------------------------------------------------
// Branch-transfer fast path
// ---------------------------------------------------------------------------

namespace {

void transfer_rec(const StateVector& st, std::vector<c64>& leaves) {
    if (st.num_qubits() == 1) {
        leaves.push_back(st.amplitude(0));
        leaves.push_back(st.amplitude(1));
        return;
    }
    for (int s = 0; s < 2; ++s) {
        auto [p, rest] = project_x_front(st, s);
        (void)p;  // unnormalized on purpose: leaves carry the branch amplitude
        transfer_rec(rest, leaves);
    }
}

std::vector<c64> unnormalized_leaves(const StateVector& st) {
    std::vector<c64> leaves;
    leaves.reserve(size_t{2} << (st.num_qubits() - 1));
    transfer_rec(st, leaves);
    return leaves;
}

}  // namespace

std::vector<BranchTransfer> branch_transfers(InteractionKind kind, int n_total,
                                             const BondErrors& errors) {
    const std::vector<c64> col0 =
        unnormalized_leaves(build_with_errors(kind, n_total, SingleQubitState{1.0, 0.0}, errors));
    const std::vector<c64> col1 =
        unnormalized_leaves(build_with_errors(kind, n_total, SingleQubitState{0.0, 1.0}, errors));

    const size_t n_branches = size_t{1} << (n_total - 1);
    std::vector<BranchTransfer> out(n_branches);
    for (size_t k = 0; k < n_branches; ++k) {
        BranchTransfer& t = out[k];
        t.record.s.resize(static_cast<size_t>(n_total - 1));
        for (int j = 0; j < n_total - 1; ++j)
            t.record.s[static_cast<size_t>(j)] =
                static_cast<uint8_t>((k >> (n_total - 2 - j)) & 1u);
        t.m(0, 0) = col0[2 * k];
        t.m(1, 0) = col0[2 * k + 1];
        t.m(0, 1) = col1[2 * k];
        t.m(1, 1) = col1[2 * k + 1];
    }
    return out;
}

double weighted_fidelity(const std::vector<BranchTransfer>& transfers,
                         const SingleQubitState& input, ByproductVariant variant) {
    double total = 0.0;
    for (const BranchTransfer& t : transfers) {
        const SingleQubitState raw{t.m(0, 0) * input.a0 + t.m(0, 1) * input.a1,
                                   t.m(1, 0) * input.a0 + t.m(1, 1) * input.a1};
        total += branch_fidelity(input, byproduct(t.record, variant), raw);
    }
    return total;
}

double weighted_fidelity_direct(const StateVector& state, const SingleQubitState& input,
                                ByproductVariant variant) {
    const std::vector<c64> leaves = unnormalized_leaves(state);
    const int n_meas = state.num_qubits() - 1;
    MeasurementRecord rec;
    rec.s.resize(static_cast<size_t>(n_meas));
    double total = 0.0;
    for (size_t k = 0; k < leaves.size() / 2; ++k) {
        for (int j = 0; j < n_meas; ++j)
            rec.s[static_cast<size_t>(j)] = static_cast<uint8_t>((k >> (n_meas - 1 - j)) & 1u);
        const SingleQubitState raw{leaves[2 * k], leaves[2 * k + 1]};
        total += branch_fidelity(input, byproduct(rec, variant), raw);
    }
    return total;
}

}  // namespace cfid
