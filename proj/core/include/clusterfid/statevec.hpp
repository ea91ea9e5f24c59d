#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "clusterfid/linalg.hpp"
#include "clusterfid/rng.hpp"

namespace cfid {

// Hard cap on register width; 2^24 amplitudes is the practical memory bound.
inline constexpr int kMaxQubits = 24;

// Two complex amplitudes with unit norm.
struct SingleQubitState {
    c64 a0{1.0, 0.0};
    c64 a1{0.0, 0.0};
};

// Point on the Bloch sphere: theta0 in [0, pi], phi0 in [0, 2*pi).
// (pi/2, pi/2) is +y.
struct BlochOrientation {
    double theta0 = 0.0;
    double phi0 = 0.0;
};

// cos(theta0/2)|0> + e^{i phi0} sin(theta0/2)|1>
SingleQubitState state_from_orientation(const BlochOrientation& r);

// Cartesian unit vector (sin t cos p, sin t sin p, cos t).
std::array<double, 3> orientation_vector(const BlochOrientation& r);

struct MeasureResult {
    int outcome = 0;           // 0 -> |+x>, 1 -> |-x>
    double probability = 0.0;  // pre-renormalization squared norm
};

struct ReducedQubit {
    Mat2 rho;                          // single-qubit density matrix
    std::array<double, 3> bloch{};     // (Tr rho X, Tr rho Y, Tr rho Z)
};

// Dense register of 2^num_qubits amplitudes. Qubit indices are 1-based and
// qubit 1 is the most-significant bit of the amplitude index, so the order
// of tensor factors matches the order qubits are listed in.
class StateVector {
  public:
    // Tensor product of the listed qubits; throws on an empty list.
    static StateVector product_state(const std::vector<SingleQubitState>& qubits);

    int num_qubits() const { return num_qubits_; }
    size_t size() const { return amps_.size(); }
    const std::vector<c64>& amplitudes() const { return amps_; }
    c64 amplitude(size_t index) const { return amps_[index]; }

    double norm_sq() const;

    // Applies u to qubit q. u must be unitary within 1e-10.
    void apply_1q(int q, const Mat2& u);

    // Applies u to the pair (qi, qj) with qi as the more significant factor.
    void apply_2q(int qi, int qj, const Mat4& u);

    // Projective x-basis measurement of qubit q with projector
    // (I + (-1)^s X_q)/2. When `forced` is given that branch is taken and an
    // impossible branch (probability < 1e-15) throws; otherwise the outcome
    // is sampled from `rng`. The post-measurement state is renormalized and
    // the measured qubit is left in |+x> or |-x>.
    MeasureResult measure_x(int q, std::optional<int> forced, Rng* rng = nullptr);

    // Partial trace down to qubit q, with the Bloch vector alongside.
    ReducedQubit reduced_qubit(int q) const;

    // Appends one qubit as the new least-significant tensor factor.
    void append_qubit(const SingleQubitState& s);

    // Rescales to unit norm and returns the previous squared norm. Left
    // untouched when the state has all-but-vanished (norm^2 < 1e-150).
    double renormalize();

  private:
    StateVector() = default;

    size_t bit_mask(int q) const;  // mask for 1-based qubit q

    int num_qubits_ = 0;
    std::vector<c64> amps_;

    friend std::pair<double, StateVector> project_x_front(const StateVector& state, int s);
};

// <a|b>; throws on dimension mismatch.
c64 overlap(const StateVector& a, const StateVector& b);

// Projects qubit 1 onto |x_s> and removes it from the register, returning
// the branch probability (squared norm of the projected part) and the
// remaining (N-1)-qubit state, *not* renormalized. Phase-consistent: the
// returned amplitudes are <x_s|_1 psi.
std::pair<double, StateVector> project_x_front(const StateVector& state, int s);

}  // namespace cfid
