#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "foamkit/half_int.hpp"
#include "foamkit/matrix2.hpp"
#include "foamkit/primes.hpp"
#include "foamkit/su2.hpp"

namespace foamkit {

// Small dense complex matrix (row-major).
struct CMat {
    int rows = 0, cols = 0;
    std::vector<Complex> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Complex(0)) {}

    Complex& at(int r, int c) { return a[(size_t)r * cols + c]; }
    Complex at(int r, int c) const { return a[(size_t)r * cols + c]; }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
    friend CMat operator*(const CMat& x, const CMat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("CMat: shape mismatch");
        CMat z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                Complex v = x.at(i, k);
                if (v == Complex(0)) continue;
                for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }
    CMat adjoint() const {
        CMat z(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) z.at(j, i) = std::conj(at(i, j));
        return z;
    }
    double dist(const CMat& o) const {
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - o.a[i]);
        return std::sqrt(s);
    }
};

// Row/column index for magnetic number m at spin j, stored descending
// (m = j first).
inline int mag_index(HalfInt j, HalfInt m) { return (j - m).to_int(); }
inline HalfInt mag_of_index(HalfInt j, int idx) { return j - HalfInt(idx); }

namespace detail {

// Integer power of a complex number with 0^0 = 1.
inline Complex cpow_int(Complex z, int n) {
    if (n < 0) throw std::domain_error("negative power in Wigner sum");
    Complex r(1.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// sqrt((j+m)!(j-m)! / ((j+n)!(j-n)!)) exactly via prime exponents.
inline double wigner_prefactor(int jm, int jmm, int jn, int jmn) {
    PrimeExp pe;
    pe.mul_factorial(jm);
    pe.mul_factorial(jmm);
    pe.mul_factorial(jn, -1);
    pe.mul_factorial(jmn, -1);
    return std::exp(0.5 * pe.log());
}

// Binomial C(n, k) as double through prime exponents (exact up to the final
// conversion; avoids overflow for large spins).
inline double binomial_d(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    PrimeExp pe;
    pe.mul_factorial(n);
    pe.mul_factorial(k, -1);
    pe.mul_factorial(n - k, -1);
    return pe.to_double();
}

}  // namespace detail

// Single Wigner matrix entry for any g in GL2(C):
// D^j_{mn}(g) = sqrt((j+m)!(j-m)!/((j+n)!(j-n)!))
//   sum_k C(j+n,k) C(j-n,j+m-k) g11^k g21^{j+n-k} g12^{j+m-k} g22^{k-m-n}.
inline Complex wigner_D_entry(HalfInt j, HalfInt m, HalfInt n, const Matrix2& g) {
    if (j.negative()) throw std::invalid_argument("wigner_D: j < 0");
    if (!HalfInt::magnetic_ok(j, m) || !HalfInt::magnetic_ok(j, n)) return 0.0;
    int jm = (j + m).to_int(), jmm = (j - m).to_int();
    int jn = (j + n).to_int(), jmn = (j - n).to_int();
    int mn = (m + n).to_int();
    int klo = std::max(0, mn), khi = std::min(jm, jn);
    Complex sum(0);
    for (int k = klo; k <= khi; ++k) {
        double c = detail::binomial_d(jn, k) * detail::binomial_d(jmn, jm - k);
        Complex term = c * detail::cpow_int(g.a11, k) * detail::cpow_int(g.a21, jn - k) *
                       detail::cpow_int(g.a12, jm - k) * detail::cpow_int(g.a22, k - mn);
        sum += term;
    }
    return detail::wigner_prefactor(jm, jmm, jn, jmn) * sum;
}

// Full (2j+1)x(2j+1) Wigner matrix, indices descending in m and n.
inline CMat wigner_D(HalfInt j, const Matrix2& g) {
    if (j.negative()) throw std::invalid_argument("wigner_D: j < 0");
    int d = j.dim();
    CMat out(d, d);
    for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c)
            out.at(i, c) = wigner_D_entry(j, mag_of_index(j, i), mag_of_index(j, c), g);
    return out;
}

inline CMat wigner_D(HalfInt j, const SU2Element& u) { return wigner_D(j, u.matrix()); }

// Reduced Wigner matrix entry:
// d^j_{m'm}(beta) = sqrt((j+m')!(j-m')!/((j+m)!(j-m)!))
//   sum_k (-1)^{m'+j-k} C(j+m,k) C(j-m,j-k+m')
//   cos(b/2)^{2k-m-m'} sin(b/2)^{m+m'+2j-2k}.
inline double wigner_d_entry(HalfInt j, HalfInt mp, HalfInt m, double beta) {
    if (j.negative()) throw std::invalid_argument("wigner_d_small: j < 0");
    if (!HalfInt::magnetic_ok(j, mp) || !HalfInt::magnetic_ok(j, m)) return 0.0;
    int jm = (j + m).to_int(), jmm = (j - m).to_int();
    int jmp = (j + mp).to_int(), jmmp = (j - mp).to_int();
    int mpm = (mp + m).to_int();
    double cb = std::cos(beta / 2), sb = std::sin(beta / 2);
    int klo = std::max(0, mpm), khi = std::min(jmp, jm);
    double sum = 0;
    for (int k = klo; k <= khi; ++k) {
        // (-1)^{m'+j-k} with m'+j = jmp - ... note j+m' integer.
        int sgn = ((jmp - k) % 2 == 0) ? 1 : -1;
        double c = detail::binomial_d(jm, k) * detail::binomial_d(jmm, jmp - k);
        sum += sgn * c * std::pow(cb, 2 * k - mpm) * std::pow(sb, mpm + jm + jmm - 2 * k);
    }
    return detail::wigner_prefactor(jmp, jmmp, jm, jmm) * sum;
}

inline std::vector<std::vector<double>> wigner_d_small(HalfInt j, double beta) {
    int d = j.dim();
    std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c)
            out[i][c] = wigner_d_entry(j, mag_of_index(j, i), mag_of_index(j, c), beta);
    return out;
}

}  // namespace foamkit
