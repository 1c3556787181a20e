#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace foamkit {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846264338327950288;

// Row-major 2x2 complex matrix.
struct Matrix2 {
    Complex a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    Matrix2() = default;
    Matrix2(Complex m11, Complex m12, Complex m21, Complex m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {}

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 zero() { return {}; }

    Complex det() const { return a11 * a22 - a12 * a21; }
    Complex trace() const { return a11 + a22; }

    Matrix2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
    Matrix2 transpose() const { return {a11, a21, a12, a22}; }
    Matrix2 conj() const {
        return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)};
    }

    // Inverse assuming det != 0.
    Matrix2 inverse() const {
        Complex d = det();
        if (std::abs(d) < 1e-300) throw std::domain_error("Matrix2::inverse of singular matrix");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend Matrix2 operator*(Complex s, const Matrix2& a) {
        return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
    }
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
        return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
    }
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
        return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
    }

    // Frobenius norm.
    double norm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }

    Complex at(int r, int c) const {
        if (r == 0) return c == 0 ? a11 : a12;
        return c == 0 ? a21 : a22;
    }
};

inline double dist(const Matrix2& a, const Matrix2& b) { return (a - b).norm(); }

// Pauli matrices.
inline const Matrix2& sigma1() {
    static const Matrix2 m{0.0, 1.0, 1.0, 0.0};
    return m;
}
inline const Matrix2& sigma2() {
    static const Matrix2 m{0.0, Complex(0, -1), Complex(0, 1), 0.0};
    return m;
}
inline const Matrix2& sigma3() {
    static const Matrix2 m{1.0, 0.0, 0.0, -1.0};
    return m;
}

}  // namespace foamkit
