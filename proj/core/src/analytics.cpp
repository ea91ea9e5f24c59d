#include "clusterfid/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace cfid {

namespace {

void check_n(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("analytics: n must be odd and at least 3");
}

double sq(double x) { return x * x; }

}  // namespace

double f_cp_n3(double theta0, double phi0, double epsilon) {
    const double aniso = 1.0 - sq(std::sin(theta0)) * sq(std::cos(phi0));
    return 1.0 - aniso * sq(std::sin(kPi * epsilon / 2.0)) / 2.0 -
           sq(std::sin(theta0 / 2.0)) * sq(std::sin(kPi * epsilon)) / 2.0;
}

double f_zz_n3(double theta0, double phi0, double epsilon) {
    const double aniso = 1.0 - sq(std::sin(theta0)) * sq(std::sin(phi0));
    return 1.0 - aniso * sq(std::sin(kPi * epsilon / 2.0)) / 2.0;
}

double min_f_zz(int n, double epsilon) {
    check_n(n);
    return (1.0 + std::pow(std::cos(kPi * epsilon / 2.0), n - 1)) / 2.0;
}

double eps_max(int n) {
    check_n(n);
    return (2.0 / kPi) * std::acos(std::pow(3.0, 1.0 / (1.0 - n)));
}

double cluster_overlap(int n, double epsilon) {
    check_n(n);
    return std::pow(std::cos(kPi * epsilon / 4.0), n - 1);
}

double perturbative_f2(InteractionKind kind, double theta0, double phi0) {
    switch (kind) {
        case InteractionKind::ZZ:
            return -(sq(kPi) / 8.0) * (1.0 - sq(std::sin(theta0)) * sq(std::sin(phi0)));
        case InteractionKind::CP:
            return -(sq(kPi) / 8.0) * (1.0 - sq(std::sin(theta0)) * sq(std::cos(phi0)) +
                                       4.0 * sq(std::sin(theta0 / 2.0)));
        case InteractionKind::XY:
            throw std::invalid_argument(
                "perturbative_f2: no XY coefficient is derived; compare against ZZ empirically");
    }
    throw std::logic_error("perturbative_f2: unreachable");
}

}  // namespace cfid
