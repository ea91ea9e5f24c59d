#include "clusterfid/builder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfid {

namespace {

constexpr int kMaxChainQubits = 11;

SingleQubitState plus_x() {
    const double v = 1.0 / std::sqrt(2.0);
    return SingleQubitState{v, v};
}

SingleQubitState plus_y() {
    const double v = 1.0 / std::sqrt(2.0);
    return SingleQubitState{v, c64{0.0, v}};
}

void check_kind(const ChainSpec& spec, InteractionKind expected, const char* where) {
    if (spec.kind != expected)
        throw std::invalid_argument(std::string(where) + ": spec.kind is " +
                                    to_string(spec.kind) + ", expected " + to_string(expected));
}

}  // namespace

ErrorModel ErrorModel::uniform(double eps) {
    ErrorModel m;
    m.kind = Kind::Uniform;
    m.epsilon = eps;
    return m;
}

ErrorModel ErrorModel::gaussian(double sigma, uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("ErrorModel: sigma must be >= 0");
    ErrorModel m;
    m.kind = Kind::GaussianPerBond;
    m.sigma = sigma;
    m.seed = seed;
    return m;
}

ErrorModel ErrorModel::explicit_list(std::vector<double> eps) {
    ErrorModel m;
    m.kind = Kind::Explicit;
    m.bond_epsilons = std::move(eps);
    return m;
}

void ChainSpec::validate() const {
    if (n_total < 3)
        throw std::invalid_argument("ChainSpec: n must be at least 3");
    if (n_total % 2 == 0)
        throw std::invalid_argument(
            "ChainSpec: n must be odd (the byproduct rule is defined for odd chains)");
    if (n_total > kMaxChainQubits)
        throw std::invalid_argument("ChainSpec: n capped at " + std::to_string(kMaxChainQubits));
    if (error_model.kind == ErrorModel::Kind::Explicit &&
        static_cast<int>(error_model.bond_epsilons.size()) != bond_count())
        throw std::invalid_argument("ChainSpec: explicit error list must have one entry per bond");
    if (error_model.kind == ErrorModel::Kind::GaussianPerBond && error_model.sigma < 0.0)
        throw std::invalid_argument("ChainSpec: sigma must be >= 0");
}

BondErrors realize_errors(const ChainSpec& spec) {
    spec.validate();
    const int bonds = spec.bond_count();
    switch (spec.error_model.kind) {
        case ErrorModel::Kind::Uniform:
            return BondErrors(static_cast<size_t>(bonds), spec.error_model.epsilon);
        case ErrorModel::Kind::Explicit:
            return spec.error_model.bond_epsilons;
        case ErrorModel::Kind::GaussianPerBond: {
            Rng rng(spec.error_model.seed);
            BondErrors eps(static_cast<size_t>(bonds));
            for (auto& e : eps) e = rng.normal(spec.error_model.sigma);
            return eps;
        }
    }
    throw std::logic_error("realize_errors: unreachable");
}

StateVector build_with_errors(InteractionKind kind, int n_total, const SingleQubitState& input,
                              const BondErrors& errors) {
    if (static_cast<int>(errors.size()) != n_total - 1)
        throw std::invalid_argument("build_with_errors: need one epsilon per bond");

    std::vector<SingleQubitState> qubits;
    qubits.reserve(static_cast<size_t>(n_total));
    qubits.push_back(input);
    for (int q = 2; q <= n_total; ++q)
        qubits.push_back(kind == InteractionKind::XY ? plus_y() : plus_x());
    StateVector st = StateVector::product_state(qubits);

    switch (kind) {
        case InteractionKind::CP:
            for (int b = 1; b < n_total; ++b)
                st.apply_2q(b, b + 1, u_cp(kPi / 4.0, errors[static_cast<size_t>(b - 1)]));
            break;
        case InteractionKind::ZZ:
            for (int b = 1; b < n_total; ++b) {
                st.apply_2q(b, b + 1, u_zz(kPi / 4.0, errors[static_cast<size_t>(b - 1)]));
                st.apply_1q(b, r_z(-kPi / 2.0));
                st.apply_1q(b + 1, r_z(-kPi / 2.0));
            }
            break;
        case InteractionKind::XY:
            for (int b = 2; b < n_total; b += 2)
                st.apply_2q(b, b + 1, u_xy(kPi / 4.0, errors[static_cast<size_t>(b - 1)]));
            for (int b = 1; b < n_total; b += 2)
                st.apply_2q(b, b + 1, u_xy(kPi / 4.0, errors[static_cast<size_t>(b - 1)]));
            for (int q = 1; q < n_total; ++q) st.apply_1q(q, r_z(kPi / 2.0));
            break;
    }
    return st;
}

namespace {

BuildResult build_impl(const ChainSpec& spec, const BlochOrientation& input) {
    BondErrors errors = realize_errors(spec);
    StateVector st =
        build_with_errors(spec.kind, spec.n_total, state_from_orientation(input), errors);
    return BuildResult{std::move(st), std::move(errors)};
}

}  // namespace

BuildResult build_cp(const ChainSpec& spec, const BlochOrientation& input) {
    check_kind(spec, InteractionKind::CP, "build_cp");
    return build_impl(spec, input);
}

BuildResult build_zz(const ChainSpec& spec, const BlochOrientation& input) {
    check_kind(spec, InteractionKind::ZZ, "build_zz");
    return build_impl(spec, input);
}

BuildResult build_xy(const ChainSpec& spec, const BlochOrientation& input) {
    check_kind(spec, InteractionKind::XY, "build_xy");
    return build_impl(spec, input);
}

BuildResult build_chain(const ChainSpec& spec, const BlochOrientation& input) {
    spec.validate();
    return build_impl(spec, input);
}

}  // namespace cfid
