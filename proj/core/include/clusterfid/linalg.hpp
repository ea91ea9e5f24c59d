#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cfid {

using c64 = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Dense row-major complex matrix of fixed dimension. Only the 2x2
// (one-qubit) and 4x4 (two-qubit) instantiations are used; chains are
// shallow enough that explicit small matrices beat anything fancier.
template <int N>
struct Mat {
    std::array<c64, static_cast<size_t>(N) * N> a{};

    c64& operator()(int r, int c) { return a[static_cast<size_t>(r) * N + c]; }
    const c64& operator()(int r, int c) const { return a[static_cast<size_t>(r) * N + c]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Mat diagonal(const std::array<c64, N>& d) {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = d[static_cast<size_t>(i)];
        return m;
    }

    Mat adjoint() const {
        Mat m;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    c64 trace() const {
        c64 t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat m;
        for (int r = 0; r < N; ++r)
            for (int k = 0; k < N; ++k) {
                const c64 xrk = x(r, k);
                if (xrk == c64{}) continue;
                for (int c = 0; c < N; ++c) m(r, c) += xrk * y(k, c);
            }
        return m;
    }

    friend Mat operator*(c64 s, const Mat& x) {
        Mat m = x;
        for (auto& v : m.a) v *= s;
        return m;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] += y.a[i];
        return m;
    }

    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] -= y.a[i];
        return m;
    }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <int N>
double max_abs_diff(const Mat<N>& x, const Mat<N>& y) {
    double m = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

template <int N>
bool is_unitary(const Mat<N>& u, double tol) {
    const Mat<N> p = u * u.adjoint();
    return max_abs_diff(p, Mat<N>::identity()) <= tol;
}

inline Mat4 kron(const Mat2& x, const Mat2& y) {
    Mat4 m;
    for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c2 = 0; c2 < 2; ++c2)
                    m(r1 * 2 + r2, c1 * 2 + c2) = x(r1, c1) * y(r2, c2);
    return m;
}

inline Mat2 pauli_i() { return Mat2::identity(); }
inline Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = c64{0.0, -1.0};
    m(1, 0) = c64{0.0, 1.0};
    return m;
}
inline Mat2 pauli_z() { return Mat2::diagonal({1.0, -1.0}); }

}  // namespace cfid
