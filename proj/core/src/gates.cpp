#include "clusterfid/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace cfid {

std::string to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::CP: return "cp";
        case InteractionKind::ZZ: return "zz";
        case InteractionKind::XY: return "xy";
    }
    return "?";
}

InteractionKind interaction_from_string(const std::string& name) {
    if (name == "cp" || name == "CP") return InteractionKind::CP;
    if (name == "zz" || name == "ZZ") return InteractionKind::ZZ;
    if (name == "xy" || name == "XY") return InteractionKind::XY;
    throw std::invalid_argument("unknown interaction kind: " + name);
}

Mat4 u_cp(double theta, double epsilon) {
    return Mat4::diagonal({1.0, 1.0, 1.0, std::polar(1.0, -4.0 * theta * (1.0 + epsilon))});
}

Mat4 u_zz(double theta, double epsilon) {
    const c64 lo = std::polar(1.0, -theta * (1.0 + epsilon));
    const c64 hi = std::conj(lo);
    return Mat4::diagonal({lo, hi, hi, lo});
}

Mat4 u_xy(double theta, double epsilon) {
    const double t = 2.0 * theta * (1.0 + epsilon);
    Mat4 m;
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    m(1, 1) = std::cos(t);
    m(2, 2) = std::cos(t);
    m(1, 2) = c64{0.0, -std::sin(t)};
    m(2, 1) = c64{0.0, -std::sin(t)};
    return m;
}

Mat2 r_z(double phi) {
    return Mat2::diagonal({std::polar(1.0, -phi / 2.0), std::polar(1.0, phi / 2.0)});
}

Mat2 r_x(double delta) {
    Mat2 m;
    m(0, 0) = std::cos(delta / 2.0);
    m(1, 1) = std::cos(delta / 2.0);
    m(0, 1) = c64{0.0, -std::sin(delta / 2.0)};
    m(1, 0) = c64{0.0, -std::sin(delta / 2.0)};
    return m;
}

Mat4 cz_gate() { return Mat4::diagonal({1.0, 1.0, 1.0, -1.0}); }

Mat4 iswap_gate() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    m(1, 2) = c64{0.0, -1.0};
    m(2, 1) = c64{0.0, -1.0};
    return m;
}

Mat4 swap_gate() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

}  // namespace cfid
