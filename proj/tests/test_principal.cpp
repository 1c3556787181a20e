#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "foamkit/principal.hpp"

using namespace foamkit;

namespace {

// Haar quadrature over SU(2) in Euler angles: uniform grids in alpha and
// gamma, Gauss-Legendre in cos(beta). Exact for band-limited integrands.
template <class F>
Complex haar_quadrature_su2(const F& f, int na = 16, int ng = 8, int nb = 12) {
    const QuadratureRule& q = gauss_legendre(nb);
    Complex sum(0);
    for (int ia = 0; ia < na; ++ia)
        for (int ig = 0; ig < ng; ++ig)
            for (int ib = 0; ib < nb; ++ib) {
                EulerAngles e;
                e.alpha = 2 * kPi * ia / na;
                e.gamma = 4 * kPi * ig / ng;
                e.beta = std::acos(q.nodes[ib]);
                sum += q.weights[ib] * f(su2_from_euler(e));
            }
    return sum / (2.0 * na * ng);
}

// High-precision reference power series for the Gauss hypergeometric
// function, converging (slowly) for all |z| < 1.
Complex hyp2f1_reference(Complex a, Complex b, Complex c, Complex z) {
    Complex term(1), sum(1);
    for (int n = 0; n < 200000; ++n) {
        term *= (a + Complex(n)) * (b + Complex(n)) / ((c + Complex(n)) * Complex(n + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > 4) break;
    }
    return sum;
}

double rel_err(Complex a, Complex b) {
    return std::abs(a - b) / std::max(1e-12, std::max(std::abs(a), std::abs(b)));
}

// Dense matrix of a generator on the truncated block j in {|k|, ..., jmax}.
struct Block {
    std::vector<std::pair<HalfInt, HalfInt>> basis;  // (j, m)
    std::map<std::pair<int, int>, int> index;        // (2j, 2m) -> position

    Block(HalfInt k, HalfInt jmax) {
        for (int tj = abs(k).twice(); tj <= jmax.twice(); tj += 2) {
            HalfInt j = HalfInt::from_twice(tj);
            for (int tm = -tj; tm <= tj; tm += 2) {
                index[{tj, tm}] = (int)basis.size();
                basis.push_back({j, HalfInt::from_twice(tm)});
            }
        }
    }
    int find(HalfInt j, HalfInt m) const {
        auto it = index.find({j.twice(), m.twice()});
        return it == index.end() ? -1 : it->second;
    }
};

CMat generator_matrix(const PrincipalLabel& lab, Generator which, const Block& blk) {
    int n = (int)blk.basis.size();
    CMat out(n, n);
    for (int c = 0; c < n; ++c) {
        auto [j, m] = blk.basis[c];
        for (const GeneratorTerm& t : generator_action(lab, which, j, m)) {
            int r = blk.find(t.j, t.m);
            if (r >= 0) out.at(r, c) += t.coeff;
        }
    }
    return out;
}

CMat lincomb(Complex ca, const CMat& a, Complex cb, const CMat& b) {
    CMat out(a.rows, a.cols);
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = ca * a.a[i] + cb * b.a[i];
    return out;
}

CMat commutator(const CMat& a, const CMat& b) { return lincomb(1, a * b, -1, b * a); }

// Largest deviation |(x - y)_{rc}| over columns whose j stays strictly
// inside the truncation.
double max_dev_interior(const CMat& x, const CMat& y, const Block& blk, HalfInt jmax) {
    double worst = 0;
    for (int c = 0; c < x.cols; ++c) {
        if (blk.basis[c].first.twice() > jmax.twice() - 2) continue;
        for (int r = 0; r < x.rows; ++r)
            worst = std::max(worst, std::abs(x.at(r, c) - y.at(r, c)));
    }
    return worst;
}

}  // namespace

TEST_CASE("log-gamma for complex arguments") {
    CHECK(std::abs(std::exp(ln_gamma_complex(Complex(1, 0))) - 1.0) < 1e-13);
    CHECK(std::abs(std::exp(ln_gamma_complex(Complex(0.5, 0))) - std::sqrt(kPi)) < 1e-13);
    CHECK(std::abs(std::exp(ln_gamma_complex(Complex(5, 0))) - 24.0) < 1e-11);
    // Recurrence Gamma(z+1) = z Gamma(z) across the complex plane, including
    // the reflection region Re z < 1/2.
    for (Complex z : {Complex(0.3, 1.7), Complex(-1.4, 0.6), Complex(2.5, -3.0),
                      Complex(0.1, -0.2), Complex(-0.7, 2.2)}) {
        Complex lhs = ln_gamma_complex(z + 1.0);
        Complex rhs = std::log(z) + ln_gamma_complex(z);
        CHECK(std::abs(std::exp(lhs) - std::exp(rhs)) < 1e-12 * std::abs(std::exp(lhs)));
    }
    // |Gamma(iy)|^2 = pi / (y sinh(pi y)).
    double y = 1.3;
    double mod2 = std::norm(std::exp(ln_gamma_complex(Complex(0, y))));
    CHECK(mod2 == doctest::Approx(kPi / (y * std::sinh(kPi * y))).epsilon(1e-12));
    CHECK_THROWS_AS(ln_gamma_complex(Complex(-2, 0)), std::domain_error);
}

TEST_CASE("Gauss hypergeometric function") {
    CHECK(std::abs(hyp2f1(Complex(0.7, 0.1), Complex(2, 0), Complex(3, 0), Complex(0)) -
                   Complex(1)) < 1e-15);
    // 2F1(1,1,2;z) = -ln(1-z)/z, both on the series branch and beyond.
    for (double z : {0.3, 0.45, 0.8, -2.0}) {
        Complex got = hyp2f1(Complex(1), Complex(1), Complex(2), Complex(z));
        Complex want = -std::log(1.0 - z) / z;
        CHECK(rel_err(got, want) < 1e-11);
    }
    // Complex parameters against the long reference series, on both the
    // transformation branch and the integral fallback (c-a-b integer).
    Complex b(1.5, 0.8), c(4, 0);
    for (double z : {0.6, 0.85}) {
        Complex a1(2.0, 0);  // c-a-b = 0.5 - 0.8i: linear transformation path
        CHECK(rel_err(hyp2f1(a1, b, c, Complex(z)), hyp2f1_reference(a1, b, c, Complex(z))) <
              1e-9);
        Complex a2(2.5, -0.8);  // c-a-b = 0: integral fallback path
        CHECK(rel_err(hyp2f1(a2, b, c, Complex(z)), hyp2f1_reference(a2, b, c, Complex(z))) <
              1e-9);
    }
    CHECK_THROWS_AS(hyp2f1(Complex(1), Complex(1), Complex(-2, 0), Complex(0.3)),
                    std::domain_error);
}

TEST_CASE("canonical basis functions on SU(2)") {
    std::mt19937_64 rng(17);
    PrincipalLabel l00{1.1, HalfInt(0)};
    for (int i = 0; i < 5; ++i) {
        Complex v = phi_basis(l00, HalfInt(0), HalfInt(0), haar_sample_su2(rng));
        CHECK(std::abs(v - Complex(1 / std::sqrt(kPi))) < 1e-13);
    }

    // Covariance phi(e^{i theta s3} u) = e^{-2 i theta k} phi(u).
    PrincipalLabel lk{0.7, HalfInt::from_twice(1)};
    double theta = kPi / 3;
    Matrix2 phase{std::exp(Complex(0, theta)), 0, 0, std::exp(Complex(0, -theta))};
    for (int i = 0; i < 20; ++i) {
        SU2Element u = haar_sample_su2(rng);
        HalfInt j = (i % 2) ? HalfInt::from_twice(1) : HalfInt::from_twice(3);
        HalfInt m = HalfInt::from_twice(1);
        SU2Element pu(phase * u.matrix());
        Complex lhs = phi_basis(lk, j, m, pu);
        Complex rhs = std::exp(Complex(0, -2 * theta * lk.k.to_double())) *
                      phi_basis(lk, j, m, u);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }

    // Orthogonality: integral of conj(phi_jm) phi_ln over SU(2) is delta/pi.
    std::vector<std::pair<HalfInt, HalfInt>> states = {
        {HalfInt::from_twice(1), HalfInt::from_twice(1)},
        {HalfInt::from_twice(1), HalfInt::from_twice(-1)},
        {HalfInt::from_twice(3), HalfInt::from_twice(1)},
        {HalfInt::from_twice(3), HalfInt::from_twice(3)}};
    for (auto& s1 : states)
        for (auto& s2 : states) {
            Complex got = haar_quadrature_su2([&](const SU2Element& u) {
                return std::conj(phi_basis(lk, s1.first, s1.second, u)) *
                       phi_basis(lk, s2.first, s2.second, u);
            });
            double want = (s1 == s2) ? 1.0 / kPi : 0.0;
            CHECK(std::abs(got - Complex(want)) < 1e-10);
        }

    CHECK_THROWS_AS(phi_basis(lk, HalfInt(0), HalfInt(0), SU2Element()),
                    std::invalid_argument);
}

TEST_CASE("reduced boost matrix: identity, cross-method agreement, symmetries") {
    std::vector<PrincipalLabel> labels = {{0.6, HalfInt::from_twice(1)},
                                          {1.3, HalfInt(0)},
                                          {0.35, HalfInt(1)},
                                          {2.0, HalfInt::from_twice(-1)}};
    std::vector<BoostMethod> methods = {BoostMethod::integral2, BoostMethod::hypergeometric,
                                        BoostMethod::ruhl};

    for (const auto& lab : labels) {
        HalfInt kk = abs(lab.k);
        // r = 0 is the identity: delta_{jl}.
        for (int tj = kk.twice(); tj <= kk.twice() + 4; tj += 2)
            for (int tl = kk.twice(); tl <= kk.twice() + 4; tl += 2) {
                HalfInt j = HalfInt::from_twice(tj), l = HalfInt::from_twice(tl);
                HalfInt m = min(j, l);
                for (BoostMethod meth : methods) {
                    Complex v = boost_d(lab, j, l, m, 0.0, meth);
                    CHECK(std::abs(v - Complex(tj == tl ? 1.0 : 0.0)) < 1e-9);
                }
            }
        // Cross-method agreement over spins <= 5/2 and |r| <= 4.
        for (double r : {0.5, 1.0, 2.7, 4.0})
            for (int tj = kk.twice(); tj <= 5; tj += 2)
                for (int tl = kk.twice(); tl <= 5; tl += 2) {
                    HalfInt j = HalfInt::from_twice(tj), l = HalfInt::from_twice(tl);
                    for (int tm = -std::min(tj, tl); tm <= std::min(tj, tl); tm += 2) {
                        HalfInt m = HalfInt::from_twice(tm);
                        Complex a = boost_d(lab, j, l, m, r, BoostMethod::integral2);
                        Complex b = boost_d(lab, j, l, m, r, BoostMethod::hypergeometric);
                        Complex c = boost_d(lab, j, l, m, r, BoostMethod::ruhl);
                        CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(a)));
                        CHECK(std::abs(a - c) < 1e-6 * std::max(1.0, std::abs(a)));
                    }
                }
    }

    // Example pinned by the cross-method oracle.
    PrincipalLabel ex{0.6, HalfInt::from_twice(1)};
    Complex i2 = boost_d(ex, half(), half(), half(), 1.0, BoostMethod::integral2);
    Complex ru = boost_d(ex, half(), half(), half(), 1.0, BoostMethod::ruhl);
    CHECK(std::abs(i2 - ru) < 1e-6);

    // Symmetry suite: d^{(p,k)}_{jlm}(r) = d^{(-p,k)}_{ljm}(-r)
    //   = d^{(p,-k)}_{jl,-m}(r) = (-1)^{j-l} d^{(-p,-k)}_{ljm}(r)
    //   = conj(d^{(p,k)}_{ljm}(-r)).
    PrincipalLabel pk{0.9, HalfInt::from_twice(1)};
    PrincipalLabel mpk{-0.9, HalfInt::from_twice(1)};
    PrincipalLabel pmk{0.9, HalfInt::from_twice(-1)};
    PrincipalLabel mpmk{-0.9, HalfInt::from_twice(-1)};
    for (double r : {0.4, 1.6})
        for (int tj = 1; tj <= 5; tj += 2)
            for (int tl = 1; tl <= 5; tl += 2)
                for (int tm = -std::min(tj, tl); tm <= std::min(tj, tl); tm += 2) {
                    HalfInt j = HalfInt::from_twice(tj), l = HalfInt::from_twice(tl);
                    HalfInt m = HalfInt::from_twice(tm);
                    Complex base = boost_d(pk, j, l, m, r);
                    CHECK(std::abs(base - boost_d(mpk, l, j, m, -r)) < 1e-8);
                    CHECK(std::abs(base - boost_d(pmk, j, l, -m, r)) < 1e-8);
                    double sgn = ((tj - tl) / 2 % 2 == 0) ? 1.0 : -1.0;
                    CHECK(std::abs(base - sgn * boost_d(mpmk, l, j, m, r)) < 1e-8);
                    CHECK(std::abs(base - std::conj(boost_d(pk, l, j, m, -r))) < 1e-8);
                }

    // Envelope: |d_{jjm}| <= 1 with a monotone tail beyond r = 5.
    double prev = 2.0;
    for (double r : {5.0, 6.0, 7.0, 8.0}) {
        double v = std::abs(boost_d(pk, half(), half(), half(), r));
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v < prev);
        prev = v;
    }

    CHECK_THROWS_AS(boost_d(pk, HalfInt(1), HalfInt(1), HalfInt(0), 1.0),
                    std::invalid_argument);  // parity mismatch with k = 1/2
}

TEST_CASE("full representation matrices") {
    PrincipalLabel lab{0.8, HalfInt::from_twice(1)};
    HalfInt jh = half(), j3 = HalfInt::from_twice(3);

    // Identity element.
    for (HalfInt j : {jh, j3})
        for (HalfInt l : {jh, j3}) {
            HalfInt m = half(), n = half();
            Complex v = big_D(lab, j, m, l, n, SL2CElement());
            double want = (j == l) ? 1.0 : 0.0;
            CHECK(std::abs(v - Complex(want)) < 1e-9);
        }

    // SU(2) elements reduce to delta_{jl} times the rotation matrix.
    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
        SU2Element u = haar_sample_su2(rng);
        SL2CElement g = SL2CElement::from_su2(u);
        Complex diag = big_D(lab, j3, half(), j3, HalfInt::from_twice(-1), g);
        Complex want = wigner_D_entry(j3, half(), HalfInt::from_twice(-1), u.matrix());
        CHECK(std::abs(diag - want) < 1e-10);
        Complex off = big_D(lab, j3, half(), jh, half(), g);
        CHECK(std::abs(off) < 1e-10);
    }

    // Pure boosts reproduce the reduced matrix on matching indices.
    double r = 1.3;
    Matrix2 bm{std::exp(Complex(r / 2, 0)), 0, 0, std::exp(Complex(-r / 2, 0))};
    SL2CElement boost(bm);
    for (HalfInt j : {jh, j3})
        for (HalfInt l : {jh, j3}) {
            Complex v = big_D(lab, j, half(), l, half(), boost);
            CHECK(std::abs(v - boost_d(lab, j, l, half(), r)) < 1e-8);
            Complex mixed = big_D(lab, j, half(), l, HalfInt::from_twice(-1), boost);
            CHECK(std::abs(mixed) < 1e-9);
        }
}

TEST_CASE("generator matrix elements: examples") {
    PrincipalLabel lab{1.2, HalfInt(1)};

    auto j3terms = generator_action(lab, Generator::J3, HalfInt(2), HalfInt(1));
    REQUIRE(j3terms.size() == 1);
    CHECK(j3terms[0].j == HalfInt(2));
    CHECK(j3terms[0].m == HalfInt(1));
    CHECK(std::abs(j3terms[0].coeff - Complex(1)) < 1e-15);

    // K3 on the top magnetic state m = j: the j-1 term vanishes and two
    // terms remain, gamma_j j at (j, j) and -alpha_{j+1} sqrt(2j+1) at (j+1, j).
    HalfInt j(2);
    auto k3 = generator_action(lab, Generator::K3, j, j);
    REQUIRE(k3.size() == 2);
    GeneratorCoeffs cj = generator_coeffs(lab, j);
    GeneratorCoeffs cj1 = generator_coeffs(lab, j + HalfInt(1));
    CHECK(k3[0].j == j);
    CHECK(std::abs(k3[0].coeff - Complex(cj.gamma_j * j.to_double())) < 1e-14);
    CHECK(k3[1].j == j + HalfInt(1));
    CHECK(std::abs(k3[1].coeff + cj1.alpha_j * std::sqrt(2 * j.to_double() + 1)) < 1e-14);

    // K+ at the lowest spin j = |k|: alpha_j = 0, so no j-1 term appears.
    auto kp = generator_action(lab, Generator::Kplus, HalfInt(1), HalfInt(0));
    for (const auto& t : kp) CHECK(t.j >= HalfInt(1));
    CHECK(std::abs(generator_coeffs(lab, HalfInt(1)).alpha_j) < 1e-15);
}

TEST_CASE("commutation relations and Casimirs on truncated blocks") {
    for (const PrincipalLabel& lab :
         {PrincipalLabel{1.2, HalfInt(1)}, PrincipalLabel{0.7, half()},
          PrincipalLabel{0.9, HalfInt(0)}}) {
        HalfInt jmax = abs(lab.k) + HalfInt(6);
        Block blk(lab.k, jmax);
        CMat J3 = generator_matrix(lab, Generator::J3, blk);
        CMat Jp = generator_matrix(lab, Generator::Jplus, blk);
        CMat Jm = generator_matrix(lab, Generator::Jminus, blk);
        CMat K3 = generator_matrix(lab, Generator::K3, blk);
        CMat Kp = generator_matrix(lab, Generator::Kplus, blk);
        CMat Km = generator_matrix(lab, Generator::Kminus, blk);
        Complex ih(0, 0.5), mih(0, -0.5);
        CMat J1 = lincomb(0.5, Jp, 0.5, Jm), J2 = lincomb(mih, Jp, ih, Jm);
        CMat K1 = lincomb(0.5, Kp, 0.5, Km), K2 = lincomb(mih, Kp, ih, Km);
        std::vector<CMat> J{J1, J2, J3}, K{K1, K2, K3};
        Complex i1(0, 1);

        for (int a = 0; a < 3; ++a) {
            int b = (a + 1) % 3, c = (a + 2) % 3;
            // [J_a, J_b] = i J_c ; [K_a, K_b] = -i J_c.
            CHECK(max_dev_interior(commutator(J[a], J[b]), lincomb(i1, J[c], 0, J[c]), blk,
                                   jmax) < 1e-10);
            CHECK(max_dev_interior(commutator(K[a], K[b]), lincomb(-i1, J[c], 0, J[c]), blk,
                                   jmax) < 1e-10);
            // [J_a, K_b] = i K_c and [J_a, K_c] = -i K_b.
            CHECK(max_dev_interior(commutator(J[a], K[b]), lincomb(i1, K[c], 0, K[c]), blk,
                                   jmax) < 1e-10);
            CHECK(max_dev_interior(commutator(J[a], K[c]), lincomb(-i1, K[b], 0, K[b]), blk,
                                   jmax) < 1e-10);
            // [J_a, K_a] = 0.
            CHECK(max_dev_interior(commutator(J[a], K[a]),
                                   CMat((int)blk.basis.size(), (int)blk.basis.size()), blk,
                                   jmax) < 1e-10);
        }

        // Casimirs: K^2 - J^2 and K.J act as scalars on interior columns.
        int n = (int)blk.basis.size();
        CMat C1(n, n), C2(n, n);
        for (int a = 0; a < 3; ++a) {
            C1 = lincomb(1, C1, 1, lincomb(1, K[a] * K[a], -1, J[a] * J[a]));
            C2 = lincomb(1, C2, 1, K[a] * J[a]);
        }
        auto [c1, c2] = casimir_eigenvalues(lab);
        CMat S1(n, n), S2(n, n);
        for (int d = 0; d < n; ++d) {
            S1.at(d, d) = c1;
            S2.at(d, d) = c2;
        }
        CHECK(max_dev_interior(C1, S1, blk, jmax - HalfInt(1)) < 1e-10);
        CHECK(max_dev_interior(C2, S2, blk, jmax - HalfInt(1)) < 1e-10);

        // (p,k) and (-p,-k) share the same Casimir pair.
        PrincipalLabel flip{-lab.p, -lab.k};
        auto [f1, f2] = casimir_eigenvalues(flip);
        CHECK(std::abs(f1 - c1) < 1e-15);
        CHECK(std::abs(f2 - c2) < 1e-15);
    }
}

TEST_CASE("orthogonality of representation matrices by Monte-Carlo") {
    // At fixed (p,k), the group integral of conj(D)D is diagonal in all
    // discrete indices, with an index-independent diagonal (the continuous
    // delta(p-p') factor is excluded by construction: the radial cutoff R
    // makes the diagonal proportional to R).
    PrincipalLabel lab{0.8, HalfInt::from_twice(1)};
    const double R = 28.0;
    const int nr = 112, nuv = 1500;
    HalfInt jh = half(), j3 = HalfInt::from_twice(3);
    struct Tuple {
        HalfInt j, m, l, n;
    };
    std::vector<Tuple> tuples = {{jh, jh, jh, jh},
                                 {j3, j3, j3, j3},
                                 {jh, jh, jh, -jh},
                                 {j3, jh, jh, jh}};
    std::vector<Complex> acc(tuples.size() * tuples.size(), Complex(0));

    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Complex> vals(tuples.size());
    long long count = 0;
    for (int ir = 0; ir < nr; ++ir) {
        double r = R * (ir + 0.5) / nr;  // stratified radial grid, reusing the memo
        double w = R * cartan_haar_weight(r);
        for (int s = 0; s < nuv; ++s) {
            SU2Element u = haar_sample_su2(rng);
            SU2Element v = haar_sample_su2(rng);
            Matrix2 vinv = v.matrix().adjoint();
            for (size_t t = 0; t < tuples.size(); ++t) {
                const Tuple& tp = tuples[t];
                Complex sum(0);
                for (int tq = -min(tp.j, tp.l).twice(); tq <= min(tp.j, tp.l).twice(); tq += 2) {
                    HalfInt q = HalfInt::from_twice(tq);
                    sum += wigner_D_entry(tp.j, tp.m, q, u.matrix()) *
                           boost_d(lab, tp.j, tp.l, q, r, BoostMethod::ruhl) *
                           wigner_D_entry(tp.l, q, tp.n, vinv);
                }
                vals[t] = sum;
            }
            for (size_t t1 = 0; t1 < tuples.size(); ++t1)
                for (size_t t2 = 0; t2 < tuples.size(); ++t2)
                    acc[t1 * tuples.size() + t2] += w * std::conj(vals[t1]) * vals[t2];
            ++count;
        }
    }
    for (Complex& x : acc) x /= (double)count;

    double d0 = std::real(acc[0]);
    double d1 = std::real(acc[1 * tuples.size() + 1]);
    CHECK(d0 > 0);
    // Diagonal entries agree across index tuples within 5%.
    CHECK(std::abs(d1 - d0) < 0.05 * d0);
    // Off-diagonal (distinct discrete indices) entries vanish at the 5% level.
    for (size_t t1 = 0; t1 < tuples.size(); ++t1)
        for (size_t t2 = 0; t2 < tuples.size(); ++t2)
            if (t1 != t2) CHECK(std::abs(acc[t1 * tuples.size() + t2]) < 0.05 * d0);
}
