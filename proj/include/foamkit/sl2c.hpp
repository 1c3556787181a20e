#pragma once

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "foamkit/matrix2.hpp"
#include "foamkit/su2.hpp"

namespace foamkit {

// Element of SL2(C): a 2x2 complex matrix with unit determinant.
class SL2CElement {
public:
    SL2CElement() : m_(Matrix2::identity()) {}

    explicit SL2CElement(const Matrix2& m) : m_(m) {
        if (std::abs(m.det() - 1.0) > 1e-10)
            throw std::invalid_argument("SL2CElement: determinant differs from 1");
    }

    // Projects a noisy invertible matrix onto det = 1 by dividing by a square
    // root of the determinant, branch chosen nearest to the input.
    static SL2CElement project(const Matrix2& m) {
        Complex d = m.det();
        if (std::abs(d) < 1e-12) throw std::invalid_argument("SL2CElement: singular matrix");
        Complex s = std::sqrt(d);
        Matrix2 a = (1.0 / s) * m;
        Matrix2 b = (-1.0 / s) * m;
        SL2CElement out;
        out.m_ = (dist(a, m) <= dist(b, m)) ? a : b;
        return out;
    }

    static SL2CElement from_su2(const SU2Element& u) {
        SL2CElement g;
        g.m_ = u.matrix();
        return g;
    }

    const Matrix2& matrix() const { return m_; }
    SL2CElement inverse() const {
        SL2CElement g;
        g.m_ = m_.inverse();
        return g;
    }
    friend SL2CElement operator*(const SL2CElement& a, const SL2CElement& b) {
        SL2CElement g;
        g.m_ = a.m_ * b.m_;
        return g;
    }

private:
    Matrix2 m_;
};

// Real four-vector (t,x,y,z) identified with the hermitian matrix
// t 1 + x sigma1 + y sigma2 + z sigma3; det = t^2 - x^2 - y^2 - z^2.
struct HermitianVec {
    double h0 = 0, h1 = 0, h2 = 0, h3 = 0;

    double minkowski_norm2() const { return h0 * h0 - h1 * h1 - h2 * h2 - h3 * h3; }
};

inline Matrix2 vec_to_matrix(const HermitianVec& x) {
    return Matrix2{Complex(x.h0 + x.h3, 0), Complex(x.h1, -x.h2),
                   Complex(x.h1, x.h2), Complex(x.h0 - x.h3, 0)};
}

inline HermitianVec matrix_to_vec(const Matrix2& h) {
    if (dist(h, h.adjoint()) > 1e-10)
        throw std::invalid_argument("matrix_to_vec: matrix is not hermitian");
    HermitianVec x;
    x.h0 = 0.5 * std::real(h.a11 + h.a22);
    x.h3 = 0.5 * std::real(h.a11 - h.a22);
    x.h1 = std::real(h.a21);
    x.h2 = std::imag(h.a21);
    return x;
}

// Lorentz action on Minkowski space: h -> a h a^dagger.
inline HermitianVec act_on_vec(const SL2CElement& a, const HermitianVec& x) {
    return matrix_to_vec(a.matrix() * vec_to_matrix(x) * a.matrix().adjoint());
}

namespace detail {

// Unique positive square root of a positive-definite hermitian 2x2 matrix.
inline Matrix2 hermitian_sqrt(const Matrix2& p) {
    double t = std::real(p.trace());
    double d = std::real(p.det());
    if (d <= 0 || t <= 0) throw std::domain_error("hermitian_sqrt: matrix not positive definite");
    double s = std::sqrt(d);
    double denom = std::sqrt(t + 2 * s);
    Matrix2 out = p;
    out.a11 += s;
    out.a22 += s;
    return (1.0 / denom) * out;
}

// Eigen pair of a hermitian 2x2 matrix: returns the eigenvalues (hi >= lo)
// and a special-unitary matrix whose first column is the hi-eigenvector.
inline void hermitian_eigen(const Matrix2& a, double& hi, double& lo, Matrix2& evec) {
    double tr = std::real(a.trace());
    double det = std::real(a.det());
    double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    hi = tr / 2 + disc;
    lo = tr / 2 - disc;
    // Columns of (a - lo*1) span the hi-eigenspace.
    Complex c1a = a.a11 - lo, c1b = a.a21;
    Complex c2a = a.a12, c2b = a.a22 - lo;
    Complex va, vb;
    if (std::norm(c1a) + std::norm(c1b) >= std::norm(c2a) + std::norm(c2b)) {
        va = c1a;
        vb = c1b;
    } else {
        va = c2a;
        vb = c2b;
    }
    double n = std::sqrt(std::norm(va) + std::norm(vb));
    if (n < 1e-300) {  // degenerate: any orthonormal basis works
        va = 1;
        vb = 0;
        n = 1;
    }
    va /= n;
    vb /= n;
    evec = Matrix2{va, -std::conj(vb), vb, std::conj(va)};  // det = 1
}

}  // namespace detail

struct PolarFactors {
    Matrix2 h;  // positive-definite hermitian
    Matrix2 u;  // unitary
};

// m = h u with h = sqrt(m m^dagger).
inline PolarFactors polar_decompose(const Matrix2& m) {
    if (std::abs(m.det()) < 1e-12) throw std::invalid_argument("polar_decompose: singular matrix");
    PolarFactors f;
    f.h = detail::hermitian_sqrt(m * m.adjoint());
    f.u = f.h.inverse() * m;
    return f;
}

struct CartanFactors {
    SU2Element u, v;
    double r = 0;  // boost rapidity, >= 0
};

// g = u e^{r sigma3/2} v^{-1}; r unique, the (u,v) pair gauge-fixed by making
// the (1,1) entry of v real non-negative (falling back to the (2,1) entry).
// For g already in SU(2): u = g, v = 1, r = 0.
inline CartanFactors cartan_decompose(const SL2CElement& g) {
    CartanFactors f;
    Matrix2 gg = g.matrix().adjoint() * g.matrix();  // = v e^{r sigma3} v^dagger
    double hi, lo;
    Matrix2 vm;
    detail::hermitian_eigen(gg, hi, lo, vm);
    if (hi <= 1.0 + 1e-12) {  // g in SU(2) within tolerance
        f.u = SU2Element::from_pair(g.matrix().a11, g.matrix().a21);
        f.v = SU2Element();
        f.r = 0;
        return f;
    }
    double r = std::log(hi);
    // u = g v e^{-r sigma3/2}
    Matrix2 boost_inv{std::exp(Complex(-r / 2, 0)), 0, 0, std::exp(Complex(r / 2, 0))};
    Matrix2 um = g.matrix() * vm * boost_inv;
    // Gauge: rotate both by e^{i theta sigma3} so the reference entry of v is
    // real non-negative.
    Complex ref = (std::abs(vm.a11) > 1e-8) ? vm.a11 : vm.a21;
    Complex phase = (std::abs(ref) > 0) ? std::conj(ref) / std::abs(ref) : Complex(1);
    // Right multiplication by diag(phase, conj(phase)).
    auto apply = [&](Matrix2& m) {
        m.a11 *= phase;
        m.a21 *= phase;
        m.a12 *= std::conj(phase);
        m.a22 *= std::conj(phase);
    };
    apply(vm);
    apply(um);
    f.u = SU2Element::from_pair(um.a11, um.a21);
    f.v = SU2Element::from_pair(vm.a11, vm.a21);
    f.r = r;
    return f;
}

struct GaussFactors {
    Complex mu_plus;   // upper unipotent parameter
    Complex delta;     // (2,2) entry of g; diagonal factor is diag(1/delta, delta)
    Complex mu_minus;  // lower unipotent parameter
};

// g = [[1, mu+],[0,1]] diag(1/delta, delta) [[1,0],[mu-,1]]; needs g22 != 0.
inline GaussFactors gauss_decompose(const SL2CElement& g) {
    const Matrix2& m = g.matrix();
    if (std::abs(m.a22) < 1e-12)
        throw std::domain_error("gauss_decompose: vanishing (2,2) entry");
    return GaussFactors{m.a12 / m.a22, m.a22, m.a21 / m.a22};
}

struct IwasawaFactors {
    Complex z;       // upper unipotent parameter
    double lambda;   // positive; diagonal factor diag(1/lambda, lambda)
    SU2Element u;
};

// m = [[1,z],[0,1]] diag(1/lambda, lambda) u, unique with lambda > 0.
inline IwasawaFactors iwasawa_decompose(const SL2CElement& g) {
    const Matrix2& m = g.matrix();
    IwasawaFactors f;
    f.lambda = std::sqrt(std::norm(m.a21) + std::norm(m.a22));
    Complex beta = m.a21 / f.lambda;
    Complex alpha = std::conj(m.a22 / f.lambda);
    f.u = SU2Element::from_pair(alpha, beta);
    // Top row of m u^dagger equals (1/lambda, z lambda); the conjugated u
    // entries are conj(m2x)/lambda, giving lambda^2 in the denominator.
    f.z = (m.a11 * std::conj(m.a21) + m.a12 * std::conj(m.a22)) / (f.lambda * f.lambda);
    return f;
}

// Membership tags for the classical subgroups, each tested by its defining
// identity to 1e-10.
enum class SubgroupTag { SU2, SU11, SL2R, Kplus, Kminus, Zplus, Zminus, D, U1, center };

inline std::set<SubgroupTag> classify_subgroup(const SL2CElement& g) {
    const Matrix2& m = g.matrix();
    const double tol = 1e-10;
    std::set<SubgroupTag> tags;
    if (dist(m.adjoint() * m, Matrix2::identity()) < tol) tags.insert(SubgroupTag::SU2);
    if (dist(m.adjoint() * sigma3() * m, sigma3()) < tol) tags.insert(SubgroupTag::SU11);
    if (dist(m.adjoint() * sigma2() * m, sigma2()) < tol) tags.insert(SubgroupTag::SL2R);
    bool lower_zero = std::abs(m.a21) < tol, upper_zero = std::abs(m.a12) < tol;
    if (lower_zero) tags.insert(SubgroupTag::Kplus);
    if (upper_zero) tags.insert(SubgroupTag::Kminus);
    if (lower_zero && std::abs(m.a11 - 1.0) < tol && std::abs(m.a22 - 1.0) < tol)
        tags.insert(SubgroupTag::Zplus);
    if (upper_zero && std::abs(m.a11 - 1.0) < tol && std::abs(m.a22 - 1.0) < tol)
        tags.insert(SubgroupTag::Zminus);
    if (lower_zero && upper_zero) tags.insert(SubgroupTag::D);
    if (lower_zero && upper_zero && std::abs(std::abs(m.a11) - 1.0) < tol &&
        std::abs(m.a22 - std::conj(m.a11)) < tol)
        tags.insert(SubgroupTag::U1);
    if (dist(m, Matrix2::identity()) < tol ||
        dist(m, Complex(-1) * Matrix2::identity()) < tol)
        tags.insert(SubgroupTag::center);
    return tags;
}

// Haar density in Cartan coordinates: d mu = (1/4pi) sinh^2(r) dr du dv with
// du, dv normalized SU(2) Haar measures.
inline double cartan_haar_weight(double r) {
    if (r < 0) throw std::domain_error("cartan_haar_weight: negative rapidity");
    double s = std::sinh(r);
    return s * s / (4 * kPi);
}

// Uniformly random SL2(C) element for tests: complex Gaussian entries
// projected onto det = 1.
inline SL2CElement random_sl2c(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    while (true) {
        Matrix2 m{Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)),
                  Complex(n(rng), n(rng))};
        if (std::abs(m.det()) > 1e-6) return SL2CElement::project(m);
    }
}

}  // namespace foamkit
