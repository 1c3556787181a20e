#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "foamkit/half_int.hpp"
#include "foamkit/quadrature.hpp"
#include "foamkit/sl2c.hpp"
#include "foamkit/special_functions.hpp"
#include "foamkit/wigner.hpp"

namespace foamkit {

// Label (p, k) of a unitary principal-series representation: p real and k a
// half-integer. (p, k) and (-p, -k) label unitarily equivalent
// representations; no canonical choice is imposed here.
struct PrincipalLabel {
    double p = 0;
    HalfInt k;
};

// Three independent evaluation routes for the reduced boost matrix.
enum class BoostMethod { integral2, hypergeometric, ruhl };

// Coefficients entering the boost-generator matrix elements.
struct GeneratorCoeffs {
    Complex alpha_j;  // purely imaginary for real p; vanishes at j = |k|
    double gamma_j;   // k p / (j (j+1))
};

inline GeneratorCoeffs generator_coeffs(const PrincipalLabel& label, HalfInt j) {
    GeneratorCoeffs c{Complex(0), 0.0};
    double jd = j.to_double(), kd = label.k.to_double(), p = label.p;
    if (j.twice() > 0) {
        c.gamma_j = kd * p / (jd * (jd + 1));
        double inside = (jd * jd - kd * kd) * (jd * jd + p * p) /
                        (jd * jd * (4 * jd * jd - 1));
        c.alpha_j = Complex(0, std::sqrt(std::max(0.0, inside)));
    }
    return c;
}

// Canonical basis function on SU(2): sqrt((2j+1)/pi) D^j_{-k,m}(u).
inline Complex phi_basis(const PrincipalLabel& label, HalfInt j, HalfInt m,
                         const SU2Element& u) {
    if (j < abs(label.k) || !same_parity(j, label.k))
        throw std::invalid_argument("phi_basis: j must be >= |k| with matching parity");
    if (!HalfInt::magnetic_ok(j, m)) throw std::invalid_argument("phi_basis: invalid m");
    return std::sqrt(j.dim() / kPi) * wigner_D_entry(j, -label.k, m, u.matrix());
}

namespace detail {

inline double fact_d(int n) { return std::exp(ln_factorial(n)); }

// Reduced boost matrix by the t-integral on [0,1] obtained from the
// plane realization (kernel [1-(1-e^{-2r})t]^{ip-1-l}). Requires r >= 0.
inline Complex boost_d_integral2(const PrincipalLabel& lab, HalfInt j, HalfInt l, HalfInt m,
                                 double r) {
    double p = lab.p;
    HalfInt k = lab.k;
    int jk = (j - k).to_int(), jpk = (j + k).to_int();
    int lk = (l - k).to_int(), lpk = (l + k).to_int();
    int jm = (j + m).to_int(), jmm = (j - m).to_int();
    int lm = (l + m).to_int(), lmm = (l - m).to_int();
    int km = (k - m).to_int();  // t-exponent offset
    double lnpref = 0.5 * (std::log((double)j.dim() * l.dim()) + ln_factorial(jk) +
                           ln_factorial(jpk) + ln_factorial(lk) + ln_factorial(lpk) -
                           ln_factorial(jm) - ln_factorial(jmm) - ln_factorial(lm) -
                           ln_factorial(lmm));
    double z = 1.0 - std::exp(-2 * r);  // in [0,1)
    Complex kernel_pow = Complex(-1 - l.to_double(), p);
    // The t-integral depends on n1, n2 only through s = n1 + n2.
    std::map<int, Complex> integral_by_s;
    auto integral = [&](int s) {
        auto it = integral_by_s.find(s);
        if (it != integral_by_s.end()) return it->second;
        int tpow = s + km;
        int upow = (j + l).to_int() - s - km;
        auto f = [&](double t) -> Complex {
            double base = 1.0 - z * t;
            return std::exp(kernel_pow * std::log(base)) * std::pow(t, tpow) *
                   std::pow(1.0 - t, upow);
        };
        // The kernel varies on the scale 1 - z t ~ e^{-2r} near t = 1; a
        // geometric grid of panels halving toward t = 1 keeps it smooth and
        // non-oscillatory on every panel.
        int npanel = std::min(120, (int)std::ceil(2 * r / std::log(2.0)) + 5);
        Complex val(0);
        double a = 0, leftover = 0;
        for (int i = 1; i <= npanel; ++i) {
            double b = (i == npanel) ? 1.0 : 1.0 - std::pow(0.5, i);
            Complex whole = integrate_gl(f, a, b, 15);
            val += foamkit::detail::adaptive_step(f, a, b, whole, 1e-12, 12, leftover);
            a = b;
        }
        if (leftover > 1e-9 * (1 + std::abs(val))) throw QuadratureError(leftover);
        integral_by_s.emplace(s, val);
        return val;
    };
    int n1lo = std::max(0, -km), n1hi = std::min(jm, jk);
    int n2lo = std::max(0, -km), n2hi = std::min(lm, lk);
    int base_phase = (j + l).to_int() + m.twice();
    Complex sum(0);
    for (int n1 = n1lo; n1 <= n1hi; ++n1) {
        double c1 = binomial_d(jm, n1) * binomial_d(jmm, jk - n1);
        if (c1 == 0) continue;
        for (int n2 = n2lo; n2 <= n2hi; ++n2) {
            double c2 = binomial_d(lm, n2) * binomial_d(lmm, lk - n2);
            if (c2 == 0) continue;
            int sgn = ((base_phase - n1 - n2) % 2 == 0) ? 1 : -1;
            Complex efac = std::exp(Complex(-1 - 2 * n2 - km, p) * r);
            sum += (sgn * c1 * c2) * efac * integral(n1 + n2);
        }
    }
    return std::exp(lnpref) * sum;
}

// Reduced boost matrix through the Gauss hypergeometric function at
// argument 1 - e^{-2r}. Requires r >= 0.
inline Complex boost_d_hypergeometric(const PrincipalLabel& lab, HalfInt j, HalfInt l,
                                      HalfInt m, double r) {
    double p = lab.p;
    HalfInt k = lab.k;
    int jk = (j - k).to_int(), jpk = (j + k).to_int();
    int lk = (l - k).to_int(), lpk = (l + k).to_int();
    int jm = (j + m).to_int(), jmm = (j - m).to_int();
    int lm = (l + m).to_int(), lmm = (l - m).to_int();
    int mk = (m + k).to_int();
    int jl = (j + l).to_int();
    double lnpref = 0.5 * (std::log((double)j.dim() * l.dim()) + ln_factorial(jk) +
                           ln_factorial(jpk) + ln_factorial(lk) + ln_factorial(lpk) -
                           ln_factorial(jm) - ln_factorial(jmm) - ln_factorial(lm) -
                           ln_factorial(lmm)) -
                    ln_factorial(jl + 1);
    double z = 1.0 - std::exp(-2 * r);
    Complex b = Complex(j.to_double() + 1, p);   // j + ip + 1
    Complex c = Complex(jl + 2, 0);
    int n1lo = std::max(0, mk), n1hi = std::min(jm, jpk);
    int n2lo = std::max(0, mk), n2hi = std::min(lm, lpk);
    Complex sum(0);
    for (int n1 = n1lo; n1 <= n1hi; ++n1) {
        double c1 = binomial_d(jm, n1) * binomial_d(jmm, n1 - mk);
        if (c1 == 0) continue;
        for (int n2 = n2lo; n2 <= n2hi; ++n2) {
            double c2 = binomial_d(lm, n2) * binomial_d(lmm, n2 - mk);
            if (c2 == 0) continue;
            int sgn = ((n1 + n2) % 2 == 0) ? 1 : -1;
            double facs = fact_d(jl - n1 - n2 + mk) * fact_d(n1 + n2 - mk);
            Complex efac = std::exp(Complex(mk - 1 - 2 * n1, -p) * r);
            Complex f = hyp2f1(Complex(n1 + n2 - mk + 1, 0), b, c, Complex(z, 0));
            sum += (sgn * c1 * c2 * facs) * efac * f;
        }
    }
    return std::exp(lnpref) * sum;
}

// Reduced boost matrix as a single t-integral over a pair of rotation
// matrices (the Ruhl form). Requires r >= 0.
inline Complex boost_d_ruhl(const PrincipalLabel& lab, HalfInt j, HalfInt l, HalfInt m,
                            double r) {
    double p = lab.p;
    HalfInt k = lab.k;
    double pref = std::sqrt((double)j.dim() * l.dim());
    Complex power = Complex(-1, p);
    // Substitution t = sin^2(theta) removes the half-integer-power endpoint
    // singularities carried by the rotation matrices (cos(beta/2) = sqrt(t)).
    Complex integral = integrate_adaptive(
        [&](double theta) -> Complex {
            double st = std::sin(theta), ct = std::cos(theta);
            double t = st * st;
            double ep = std::exp(r), em = std::exp(-r);
            double base = (1 - t) * ep + t * em;
            double c1 = std::clamp(2 * t - 1, -1.0, 1.0);
            double c2 = std::clamp((t * em - (1 - t) * ep) / (t * em + (1 - t) * ep), -1.0, 1.0);
            return (2 * st * ct) * std::exp(power * std::log(base)) *
                   wigner_d_entry(j, -k, m, std::acos(c1)) *
                   wigner_d_entry(l, -k, m, std::acos(c2));
        },
        0.0, kPi / 2, 1e-11);
    return pref * integral;
}

}  // namespace detail

// Reduced boost matrix element d^{(p,k)}_{jlm}(r): the (j,m),(l,m) matrix
// element of the pure boost e^{r sigma3/2}. Negative r is routed through the
// symmetry d_{jlm}(r) = conj(d_{ljm}(-r)). Memoized.
inline Complex boost_d(const PrincipalLabel& label, HalfInt j, HalfInt l, HalfInt m, double r,
                       BoostMethod method = BoostMethod::integral2) {
    HalfInt k = label.k;
    if (j < abs(k) || l < abs(k) || !same_parity(j, k) || !same_parity(l, k))
        throw std::invalid_argument("boost_d: spins must be >= |k| with matching parity");
    if (!HalfInt::magnetic_ok(j, m) || !HalfInt::magnetic_ok(l, m))
        throw std::invalid_argument("boost_d: invalid magnetic index");
    if (r < 0) return std::conj(boost_d(label, l, j, m, -r, method));

    using Key = std::array<std::int64_t, 7>;
    Key key{k.twice(), j.twice(), l.twice(), m.twice(),
            (std::int64_t)std::bit_cast<std::uint64_t>(label.p),
            (std::int64_t)std::bit_cast<std::uint64_t>(r), (std::int64_t)method};
    static std::map<Key, Complex> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Complex val;
    switch (method) {
        case BoostMethod::integral2: val = detail::boost_d_integral2(label, j, l, m, r); break;
        case BoostMethod::hypergeometric:
            val = detail::boost_d_hypergeometric(label, j, l, m, r);
            break;
        case BoostMethod::ruhl: val = detail::boost_d_ruhl(label, j, l, m, r); break;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, val);
    return val;
}

// Full representation matrix element <p,k;j,m| g |p,k;l,n> computed through
// the Cartan factorization g = u e^{r sigma3/2} v^{-1} and a finite sum over
// the shared magnetic index.
inline Complex big_D(const PrincipalLabel& label, HalfInt j, HalfInt m, HalfInt l, HalfInt n,
                     const SL2CElement& g, BoostMethod method = BoostMethod::integral2) {
    HalfInt k = label.k;
    if (j < abs(k) || l < abs(k) || !same_parity(j, k) || !same_parity(l, k))
        throw std::invalid_argument("big_D: spins must be >= |k| with matching parity");
    CartanFactors f = cartan_decompose(g);
    HalfInt qmax = min(j, l);
    Matrix2 vinv = f.v.matrix().adjoint();
    Complex sum(0);
    for (int t = -qmax.twice(); t <= qmax.twice(); t += 2) {
        HalfInt q = HalfInt::from_twice(t);
        sum += wigner_D_entry(j, m, q, f.u.matrix()) * boost_d(label, j, l, q, f.r, method) *
               wigner_D_entry(l, q, n, vinv);
    }
    return sum;
}

enum class Generator { J3, Jplus, Jminus, K3, Kplus, Kminus };

struct GeneratorTerm {
    HalfInt j, m;
    Complex coeff;
};

// Nonzero matrix elements of a rotation or boost generator acting on the
// canonical basis state |p,k;j,m>. Rotations stay at the same j; boosts also
// reach j-1 and j+1.
inline std::vector<GeneratorTerm> generator_action(const PrincipalLabel& label, Generator which,
                                                   HalfInt j, HalfInt m) {
    if (j < abs(label.k) || !same_parity(j, label.k) || !HalfInt::magnetic_ok(j, m))
        throw std::invalid_argument("generator_action: invalid (j, m)");
    double jd = j.to_double(), md = m.to_double();
    GeneratorCoeffs cj = generator_coeffs(label, j);
    GeneratorCoeffs cj1 = generator_coeffs(label, j + HalfInt(1));
    std::vector<GeneratorTerm> out;
    auto push = [&](HalfInt jp, HalfInt mp, Complex c) {
        if (std::abs(c) > 0) out.push_back({jp, mp, c});
    };
    const HalfInt one(1);
    switch (which) {
        case Generator::J3: push(j, m, md); break;
        case Generator::Jplus:
            push(j, m + one, std::sqrt((jd + md + 1) * (jd - md)));
            break;
        case Generator::Jminus:
            push(j, m - one, std::sqrt((jd + md) * (jd - md + 1)));
            break;
        case Generator::K3:
            push(j - one, m, cj.alpha_j * std::sqrt(std::max(0.0, jd * jd - md * md)));
            push(j, m, cj.gamma_j * md);
            push(j + one, m, -cj1.alpha_j * std::sqrt((jd + 1) * (jd + 1) - md * md));
            break;
        case Generator::Kplus:
            push(j - one, m + one,
                 cj.alpha_j * std::sqrt(std::max(0.0, (jd - md) * (jd - md - 1))));
            push(j, m + one, cj.gamma_j * std::sqrt(std::max(0.0, (jd - md) * (jd + md + 1))));
            push(j + one, m + one, cj1.alpha_j * std::sqrt((jd + md + 1) * (jd + md + 2)));
            break;
        case Generator::Kminus:
            push(j - one, m - one,
                 -cj.alpha_j * std::sqrt(std::max(0.0, (jd + md) * (jd + md - 1))));
            push(j, m - one, cj.gamma_j * std::sqrt(std::max(0.0, (jd + md) * (jd - md + 1))));
            push(j + one, m - one, -cj1.alpha_j * std::sqrt((jd - md + 1) * (jd - md + 2)));
            break;
    }
    return out;
}

// Eigenvalues of the two Casimir operators: (K^2 - J^2, K.J).
inline std::pair<Complex, Complex> casimir_eigenvalues(const PrincipalLabel& label) {
    double p = label.p, k = label.k.to_double();
    return {Complex(p * p - k * k + 1, 0), Complex(p * k, 0)};
}

}  // namespace foamkit
