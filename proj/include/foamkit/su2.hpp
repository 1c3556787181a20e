#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "foamkit/matrix2.hpp"

namespace foamkit {

// Validated element of SU(2): unitary, det = 1.
class SU2Element {
public:
    static constexpr double kTol = 1e-12;

    SU2Element() : m_(Matrix2::identity()) {}

    explicit SU2Element(const Matrix2& m) : m_(m) {
        Matrix2 gram = m_.adjoint() * m_;
        if (dist(gram, Matrix2::identity()) > 1e-10 || std::abs(m_.det() - 1.0) > 1e-10)
            throw std::invalid_argument("SU2Element: matrix is not special unitary");
    }

    // Builds from the Cayley-Klein pair (a, b): u = [[a, -conj b],[b, conj a]],
    // normalizing |a|^2+|b|^2 to 1 (rejects strongly non-unit input).
    static SU2Element from_pair(Complex a, Complex b) {
        double n2 = std::norm(a) + std::norm(b);
        if (n2 < 1e-24) throw std::invalid_argument("SU2Element::from_pair: zero vector");
        double s = 1.0 / std::sqrt(n2);
        SU2Element u;
        u.m_ = Matrix2(s * a, -std::conj(s * b), s * b, std::conj(s * a));
        return u;
    }

    const Matrix2& matrix() const { return m_; }

    SU2Element inverse() const {
        SU2Element u;
        u.m_ = m_.adjoint();
        return u;
    }

    friend SU2Element operator*(const SU2Element& a, const SU2Element& b) {
        // Re-derive the Cayley-Klein pair to keep round-off from accumulating.
        Matrix2 p = a.m_ * b.m_;
        return from_pair(p.a11, p.a21);
    }

private:
    Matrix2 m_;
};

struct EulerAngles {
    double alpha = 0, beta = 0, gamma = 0;
};

// Rotation matrix in SO(3), row-major.
struct Rotation3 {
    std::array<std::array<double, 3>, 3> r{};

    static Rotation3 identity() {
        Rotation3 g;
        for (int i = 0; i < 3; ++i) g.r[i][i] = 1.0;
        return g;
    }
    friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
        Rotation3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += a.r[i][k] * b.r[k][j];
                c.r[i][j] = s;
            }
        return c;
    }
    double distance(const Rotation3& o) const {
        double s = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double d = r[i][j] - o.r[i][j];
                s += d * d;
            }
        return std::sqrt(s);
    }
};

// u = exp(-i a s3/2) exp(-i b s2/2) exp(-i g s3/2).
inline SU2Element su2_from_euler(const EulerAngles& e) {
    double cb = std::cos(e.beta / 2), sb = std::sin(e.beta / 2);
    Complex ea = std::exp(Complex(0, -(e.alpha + e.gamma) / 2));
    Complex eb = std::exp(Complex(0, -(e.gamma - e.alpha) / 2));
    // Cayley-Klein pair (a, b) of the product.
    return SU2Element::from_pair(ea * cb, eb * sb);
}

// Inverse of su2_from_euler with the canonical ranges
// alpha in (-2pi, 2pi), beta in [0, pi], gamma in [|alpha|, 4pi - |alpha|).
// At beta in {0, pi} only one angle combination survives; ties broken by
// gamma = |alpha|.
inline EulerAngles euler_from_su2(const SU2Element& u) {
    const Matrix2& m = u.matrix();
    Complex a = m.a11, b = m.a21;
    double beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    const double eps = 1e-13;
    EulerAngles e;
    e.beta = beta;
    auto wrap4pi = [](double x) {  // into [0, 4pi)
        double y = std::fmod(x, 4 * kPi);
        if (y < 0) y += 4 * kPi;
        return y;
    };
    if (std::abs(b) <= eps) {
        // Only s = alpha + gamma is determined (mod 4pi); gamma = |alpha|.
        double s = wrap4pi(-2.0 * std::arg(a));
        e.beta = 0.0;
        e.alpha = s / 2;
        e.gamma = e.alpha;
        return e;
    }
    if (std::abs(a) <= eps) {
        // Only d = gamma - alpha is determined (mod 4pi); gamma = |alpha|.
        double d = wrap4pi(-2.0 * std::arg(b));
        e.beta = kPi;
        e.alpha = -d / 2;
        e.gamma = d / 2;
        return e;
    }
    double s = -2.0 * std::arg(a);  // alpha + gamma, mod 4pi
    double d = -2.0 * std::arg(b);  // gamma - alpha, mod 4pi
    // Try the four (mod 4pi) sheet combinations and keep the canonical one.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double ss = wrap4pi(s) - 4 * kPi * i;
            double dd = wrap4pi(d) + 4 * kPi * j;
            double alpha = (ss - dd) / 2, gamma = (ss + dd) / 2;
            if (alpha > -2 * kPi && alpha < 2 * kPi && gamma >= std::abs(alpha) - 1e-12 &&
                gamma < 4 * kPi - std::abs(alpha) - 1e-12) {
                e.alpha = alpha;
                e.gamma = gamma;
                return e;
            }
        }
    // Boundary round-off: fall back to the principal sheet.
    double ss = wrap4pi(s), dd = wrap4pi(d);
    e.alpha = (ss - dd) / 2;
    e.gamma = (ss + dd) / 2;
    return e;
}

// u = cos|a| 1 + i sin|a| (ahat . sigma).
inline SU2Element su2_exp(const std::array<double, 3>& alpha) {
    double n = std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
    double c, s;  // cos n and sin(n)/n
    if (n < 1e-8) {
        c = 1.0 - n * n / 2;
        s = 1.0 - n * n / 6;
    } else {
        c = std::cos(n);
        s = std::sin(n) / n;
    }
    Complex i(0, 1);
    // a = c + i s a3 ; b = i s (a1) - s a2 from (i s (a.sigma)) row 2 col 1.
    Complex a = c + i * (s * alpha[2]);
    Complex b = i * (s * alpha[0]) - (s * alpha[1]);
    return SU2Element::from_pair(a, b);
}

// The 2-to-1 homomorphism SU(2) -> SO(3) in the explicit form for
// u = [[a, -conj b],[b, conj a]]; satisfies g(u) = g(-u) and maps the Euler
// decomposition onto r_z(alpha) r_y(beta) r_z(gamma).
inline Rotation3 su2_to_so3(const SU2Element& u) {
    const Matrix2& m = u.matrix();
    Complex a = m.a11, b = m.a21;
    Complex a2 = a * a, b2 = b * b;
    Rotation3 g;
    g.r[0][0] = std::real(a2) - std::real(b2);
    g.r[0][1] = -std::imag(a2) + std::imag(b2);
    g.r[0][2] = 2.0 * std::real(a * std::conj(b));
    g.r[1][0] = std::imag(a2) + std::imag(b2);
    g.r[1][1] = std::real(a2) + std::real(b2);
    g.r[1][2] = -2.0 * std::imag(std::conj(a) * b);
    g.r[2][0] = -2.0 * std::real(a * b);
    g.r[2][1] = 2.0 * std::imag(a * b);
    g.r[2][2] = std::norm(a) - std::norm(b);
    return g;
}

// Uniform (Haar) sample: a normalized 4-dim gaussian point on S^3.
inline SU2Element haar_sample_su2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double x0 = gauss(rng), x1 = gauss(rng), x2 = gauss(rng), x3 = gauss(rng);
    return SU2Element::from_pair(Complex(x0, x1), Complex(x2, x3));
}

}  // namespace foamkit
