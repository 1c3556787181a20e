#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>

#include "foamkit/recoupling.hpp"
#include "foamkit/special_functions.hpp"

namespace foamkit {

// Parameter pack of the chi coefficient: the nu/mu combinations of the three
// representation labels, the reality phase kappa, and the unit phases N_p^j.
struct ChiParams {
    Complex nu1, nu2, nu3;
    double mu1, mu2, mu3;
    Complex kappa;
    Complex N1, N2, N3;
};

namespace detail {

inline Complex unit_phase(Complex lngamma) {
    return std::exp(Complex(0, std::imag(lngamma)));
}

}  // namespace detail

inline ChiParams chi_params(double p1, double p2, double p3, HalfInt k1, HalfInt k2,
                            HalfInt k3, HalfInt j1, HalfInt j2, HalfInt j3) {
    ChiParams c;
    c.nu1 = Complex(0.5, 0.5 * (p1 - p2 - p3));
    c.nu2 = Complex(0.5, 0.5 * (-p1 + p2 - p3));
    c.nu3 = Complex(0.5, 0.5 * (p1 + p2 + p3));
    c.mu1 = 0.5 * (-k1 + k2 + k3).to_double();
    c.mu2 = 0.5 * (k1 - k2 + k3).to_double();
    c.mu3 = 0.5 * (-k1 - k2 - k3).to_double();
    c.kappa = detail::unit_phase(
        ln_gamma_complex(c.nu1 + c.mu1) + ln_gamma_complex(c.nu2 + c.mu2) +
        ln_gamma_complex(c.nu3 + c.mu3) +
        ln_gamma_complex(c.nu1 + c.nu2 + c.nu3 + c.mu1 + c.mu2 + c.mu3 - 1.0));
    c.N1 = detail::unit_phase(ln_gamma_complex(Complex(1 + j1.to_double(), p1)));
    c.N2 = detail::unit_phase(ln_gamma_complex(Complex(1 + j2.to_double(), p2)));
    c.N3 = detail::unit_phase(ln_gamma_complex(Complex(1 + j3.to_double(), p3)));
    return c;
}

// Phase relating the normalization of chi (in which the Clebsch-Gordan
// coefficients are real) to the basis in which the boost matrix elements
// boost_d/big_D of this library are expressed.  The two bases differ by a
// per-spin phase i^j * Gamma(1+j+ip)/|Gamma(1+j+ip)| on each leg; a
// Clebsch-Gordan coefficient in the boost basis is conj(this) * chi * C^{SU(2)}.
inline Complex chi_boost_dressing(double p1, double p2, double p3, HalfInt j1, HalfInt j2,
                                  HalfInt j3) {
    auto N = [](double p, HalfInt j) {
        return detail::unit_phase(ln_gamma_complex(Complex(1 + j.to_double(), p)));
    };
    return std::exp(Complex(0, kPi * 0.5 * (j1 + j2 + j3).to_double())) *
           std::conj(N(p1, j1) * N(p2, j2)) * N(p3, j3);
}

namespace detail {

// chi assembled either in log-space (production) or with every Gamma factor
// multiplied in direct space (small-spin cross-check).
inline Complex chi_impl(double p1, double p2, double p3, HalfInt k1, HalfInt k2, HalfInt k3,
                        HalfInt j1, HalfInt j2, HalfInt j3, bool log_space) {
    if (j1 < abs(k1) || j2 < abs(k2) || j3 < abs(k3) || !same_parity(j1, k1) ||
        !same_parity(j2, k2) || !same_parity(j3, k3))
        throw std::invalid_argument("chi: spins must be >= |k| with matching parity");
    if (!triangle_ok(j1, j2, j3)) return Complex(0);
    HalfInt ksum = k1 + k2 + k3;
    if (!ksum.is_integer() || ksum.negative()) return Complex(0);

    ChiParams c = chi_params(p1, p2, p3, k1, k2, k3, j1, j2, j3);
    auto lg = [&](Complex z) { return ln_gamma_complex(z); };

    // Sign convention chosen so that the coefficients come out real (the
    // non-compact analog of Condon-Shortley); the half-integer exponents are
    // genuine complex phases.
    double phase_exp = 1.5 * (j1 + j2 + j3).to_double() +
                       0.5 * (k1 + k2 + k3).to_double() - (k1 + k2).to_double();
    Complex pref = c.kappa * std::exp(Complex(0, kPi * phase_exp)) *
                   std::conj(c.N1 * c.N2) * c.N3;
    pref *= std::sqrt((double)j1.dim() * j2.dim() * j3.dim()) / (4 * std::sqrt(2 * kPi));
    double lnfrac = 0.5 * (ln_factorial((j1 - k1).to_int()) + ln_factorial((j2 + k2).to_int()) -
                           ln_factorial((j1 + k1).to_int()) - ln_factorial((j2 - k2).to_int()));
    Complex gpre_ln = lg(1.0 - c.nu3 + c.mu3) + lg(1.0 - c.nu3 - c.mu3);
    if (log_space) {
        pref *= std::exp(Complex(lnfrac, 0) + gpre_ln);
    } else {
        pref *= std::exp(lnfrac) * gamma_complex(1.0 - c.nu3 + c.mu3) *
                gamma_complex(1.0 - c.nu3 - c.mu3);
    }

    Complex total(0), comp(0);  // Kahan-compensated accumulation
    auto add = [&](Complex x) {
        Complex y = x - comp;
        Complex t = total + y;
        comp = (t - total) - y;
        total = t;
    };

    for (int tn = -j1.twice(); tn <= j1.twice(); tn += 2) {
        HalfInt n = HalfInt::from_twice(tn);
        if (!HalfInt::magnetic_ok(j2, k3 - n)) continue;
        ExactValue cg = clebsch_gordan(j1, n, j2, k3 - n, j3, k3);
        if (cg.is_zero()) continue;
        double nfrac =
            0.5 * (ln_factorial((j1 - n).to_int()) + ln_factorial((j2 + k3 - n).to_int()) -
                   ln_factorial((j1 + n).to_int()) - ln_factorial((j2 - k3 + n).to_int()));
        double outer = cg.to_double() * std::exp(nfrac);

        // Bounds are exactly the validity range of the factorials below.
        int l1lo = max(k1, n).twice(), l1hi = j1.twice();
        int l2lo = max(-k2, n - k3).twice(), l2hi = j2.twice();
        for (int tl1 = l1lo; tl1 <= l1hi; tl1 += 2) {
            HalfInt l1 = HalfInt::from_twice(tl1);
            for (int tl2 = l2lo; tl2 <= l2hi; tl2 += 2) {
                HalfInt l2 = HalfInt::from_twice(tl2);
                double lnfac = ln_factorial((j1 + l1).to_int()) +
                               ln_factorial((j2 + l2).to_int()) -
                               ln_factorial((j1 - l1).to_int()) -
                               ln_factorial((l1 - k1).to_int()) -
                               ln_factorial((l1 - n).to_int()) -
                               ln_factorial((j2 - l2).to_int()) -
                               ln_factorial((l2 + k2).to_int()) -
                               ln_factorial((l2 - n + k3).to_int());
                int sgn = parity_sign(l1 - k1 + l2 + k2);
                Complex a1 = 2.0 - c.nu1 - c.nu2 - c.nu3 + c.mu1 + l1.to_double() +
                             l2.to_double() - n.to_double();
                Complex a2 = 1.0 - c.nu1 + c.mu3 + l1.to_double();
                Complex a3 = 1.0 - c.nu2 - c.mu3 + l2.to_double();
                Complex b1 = 2.0 - c.nu1 - c.nu2 + l1.to_double() + l2.to_double();
                Complex b2 = 1.0 - c.nu3 + c.mu1 - n.to_double();
                Complex b3 = 2.0 - c.nu1 - c.nu3 + l1.to_double();
                Complex b4 = 2.0 - c.nu3 - c.nu2 + l2.to_double();
                Complex term;
                if (log_space) {
                    term = (double)sgn * std::exp(Complex(lnfac, 0) + lg(a1) + lg(a2) + lg(a3) -
                                                  lg(b1) - lg(b2) - lg(b3) - lg(b4));
                } else {
                    term = (double)sgn * std::exp(lnfac) * gamma_complex(a1) *
                           gamma_complex(a2) * gamma_complex(a3) /
                           (gamma_complex(b1) * gamma_complex(b2) * gamma_complex(b3) *
                            gamma_complex(b4));
                }
                add(outer * term);
            }
        }
    }
    return pref * total;
}

}  // namespace detail

// Magnetic-independent part of the SL2(C) Clebsch-Gordan coefficient.
// Memoized; zero on failed selection rules (triangle, or k1+k2+k3 not a
// non-negative integer).
inline Complex chi(double p1, double p2, double p3, HalfInt k1, HalfInt k2, HalfInt k3,
                   HalfInt j1, HalfInt j2, HalfInt j3) {
    using Key = std::array<std::int64_t, 9>;
    Key key{(std::int64_t)std::bit_cast<std::uint64_t>(p1),
            (std::int64_t)std::bit_cast<std::uint64_t>(p2),
            (std::int64_t)std::bit_cast<std::uint64_t>(p3),
            k1.twice(), k2.twice(), k3.twice(), j1.twice(), j2.twice(), j3.twice()};
    static std::map<Key, Complex> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Complex val = detail::chi_impl(p1, p2, p3, k1, k2, k3, j1, j2, j3, true);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, val);
    return val;
}

// Full SL2(C) Clebsch-Gordan coefficient at fixed magnetic indices:
// chi times the SU(2) coefficient.
inline Complex sl2c_cg(double p1, HalfInt k1, HalfInt j1, HalfInt m1,
                       double p2, HalfInt k2, HalfInt j2, HalfInt m2,
                       double p3, HalfInt k3, HalfInt j3, HalfInt m3) {
    ExactValue cg = clebsch_gordan(j1, m1, j2, m2, j3, m3);
    if (cg.is_zero()) return Complex(0);
    return chi(p1, p2, p3, k1, k2, k3, j1, j2, j3) * cg.to_double();
}

// 3-valent SL2(C) vertex of the graphical calculus:
// (-1)^{2j1 - j2 + j3 - m3} C^{(p3,k3) j3, -m3}_{(p1,k1) j1 m1, (p2,k2) j2 m2}.
// The exponent can be half-odd, giving a genuine complex phase.
inline Complex sl2c_three_jm(double p1, HalfInt k1, HalfInt j1, HalfInt m1,
                             double p2, HalfInt k2, HalfInt j2, HalfInt m2,
                             double p3, HalfInt k3, HalfInt j3, HalfInt m3) {
    double e = (j1 + j1 - j2 + j3 - m3).to_double();
    Complex phase = std::exp(Complex(0, kPi * e));
    return phase * sl2c_cg(p1, k1, j1, m1, p2, k2, j2, m2, p3, k3, j3, -m3);
}

}  // namespace foamkit
