#pragma once

#include <cmath>
#include <stdexcept>

#include "foamkit/quadrature.hpp"

namespace foamkit {

// Log-gamma for complex argument: Lanczos approximation (g = 7) on
// Re z >= 1/2, reflection formula elsewhere. Accurate to ~1e-13 relative.
inline Complex ln_gamma_complex(Complex z) {
    static const double g = 7.0;
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                   -1259.1392167224028,  771.32342877765313,
                                   -176.61502916214059,  12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (std::real(z) < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z); poles at non-positive integers.
        if (std::abs(std::imag(z)) < 1e-13 &&
            std::abs(std::real(z) - std::round(std::real(z))) < 1e-13)
            throw std::domain_error("ln_gamma_complex: pole of Gamma");
        Complex spz = std::sin(kPi * z);
        // Use log(sin) with unwinding to keep the branch continuous enough
        // for ratios; for our use sites only exponentials of differences
        // matter, so the principal branch suffices.
        return std::log(kPi) - std::log(spz) - ln_gamma_complex(1.0 - z);
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + Complex(i, 0));
    Complex t = z + g + 0.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline Complex gamma_complex(Complex z) { return std::exp(ln_gamma_complex(z)); }

namespace detail {

inline bool near_nonpositive_int(Complex z, double tol = 1e-9) {
    double re = std::real(z);
    return std::abs(std::imag(z)) < tol && re < 0.5 && std::abs(re - std::round(re)) < tol;
}

// Power series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n for |z| <= 1/2.
inline Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z) {
    Complex term(1), sum(1);
    for (int n = 0; n < 600; ++n) {
        term *= (a + Complex(n)) * (b + Complex(n)) / ((c + Complex(n)) * Complex(n + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-16 * (1 + std::abs(sum))) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

}  // namespace detail

// Gauss hypergeometric function on the principal branch, for z real in
// (-infinity, 1). Power series for |z| <= 1/2; the z -> 1-z linear
// transformation for 1/2 < z < 1 when its Gamma factors are regular,
// otherwise Euler's integral (needs Re c > Re b > 0, which holds at every
// use site in this library).
inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z) {
    if (detail::near_nonpositive_int(c))
        throw std::domain_error("hyp2f1: c is a non-positive integer");
    if (std::abs(z) <= 0.5) return detail::hyp2f1_series(a, b, c, z);
    if (!(std::abs(std::imag(z)) < 1e-14 && std::real(z) < 1.0))
        throw std::domain_error("hyp2f1: argument outside supported region");
    Complex cab = c - a - b;
    bool cab_near_integer = std::abs(std::imag(cab)) +
                                std::abs(std::real(cab) - std::round(std::real(cab))) <
                            1e-6;  // both Gamma(+-cab) factors stay regular otherwise
    if (std::real(z) > 0.5 && !cab_near_integer) {
        // F(a,b,c;z) = G1 F(a,b,a+b-c+1;1-z) + G2 (1-z)^{c-a-b} F(c-a,c-b,c-a-b+1;1-z).
        Complex w = 1.0 - z;
        Complex g1 = std::exp(ln_gamma_complex(c) + ln_gamma_complex(cab) -
                              ln_gamma_complex(c - a) - ln_gamma_complex(c - b));
        Complex g2 = std::exp(ln_gamma_complex(c) + ln_gamma_complex(-cab) -
                              ln_gamma_complex(a) + std::log(w) * cab - ln_gamma_complex(b));
        return g1 * detail::hyp2f1_series(a, b, a + b - c + 1.0, w) +
               g2 * detail::hyp2f1_series(c - a, c - b, cab + 1.0, w);
    }
    // Euler integral fallback.
    if (!(std::real(c) > std::real(b) && std::real(b) > 0))
        throw std::domain_error("hyp2f1: integral fallback needs Re c > Re b > 0");
    Complex pref = std::exp(ln_gamma_complex(c) - ln_gamma_complex(b) - ln_gamma_complex(c - b));
    Complex integral = integrate_adaptive(
        [&](double t) -> Complex {
            if (t <= 0 || t >= 1) return Complex(0);
            return std::exp((b - 1.0) * std::log(t) + (c - b - 1.0) * std::log1p(-t) -
                            a * std::log(1.0 - z * t));
        },
        0.0, 1.0, 1e-12);
    return pref * integral;
}

}  // namespace foamkit
