// Acceptance gate: exercises the end-to-end contracts of the library and the
// command-line tool. Prints one PASS/FAIL line per criterion (tolerances are
// pinned below) and exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foamkit/network_format.hpp"
#include "foamkit/principal.hpp"
#include "foamkit/recoupling.hpp"
#include "foamkit/sl2c_recoupling.hpp"
#include "foamkit/spin_network.hpp"
#include "foamkit/vertex.hpp"
#include "foamkit/wigner.hpp"

using namespace foamkit;

namespace {

HalfInt H(int twice) { return HalfInt::from_twice(twice); }

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;  // fills a detail string
};

// ---------------------------------------------------------------------------
// 1. Wigner matrix orthogonality under Euler-angle quadrature.
bool wigner_orthogonality(std::string& detail) {
    const double tol = 1e-8;
    const int na = 24, ng = 24, nb = 16;
    const QuadratureRule& q = gauss_legendre(nb);
    // Pre-evaluate every D^j at each grid point; basis entries (j, m, n).
    struct Entry {
        HalfInt j, m, n;
    };
    std::vector<Entry> basis;
    for (int tj = 0; tj <= 4; ++tj)
        for (int tm = -tj; tm <= tj; tm += 2)
            for (int tn = -tj; tn <= tj; tn += 2) basis.push_back({H(tj), H(tm), H(tn)});
    int nbasis = (int)basis.size();
    std::vector<std::vector<Complex>> gram((size_t)nbasis,
                                           std::vector<Complex>((size_t)nbasis, Complex(0)));
    for (int ia = 0; ia < na; ++ia)
        for (int ig = 0; ig < ng; ++ig)
            for (int ib = 0; ib < nb; ++ib) {
                EulerAngles e{2 * kPi * ia / na, std::acos(q.nodes[(size_t)ib]),
                              4 * kPi * ig / ng};
                SU2Element u = su2_from_euler(e);
                std::vector<CMat> D;
                for (int tj = 0; tj <= 4; ++tj) D.push_back(wigner_D(H(tj), u));
                std::vector<Complex> val((size_t)nbasis);
                for (int b = 0; b < nbasis; ++b) {
                    const Entry& en = basis[(size_t)b];
                    val[(size_t)b] = D[(size_t)en.j.twice()].at(mag_index(en.j, en.m),
                                                                mag_index(en.j, en.n));
                }
                double w = q.weights[(size_t)ib];
                for (int r = 0; r < nbasis; ++r)
                    for (int c = r; c < nbasis; ++c)
                        gram[(size_t)r][(size_t)c] +=
                            w * std::conj(val[(size_t)r]) * val[(size_t)c];
            }
    double worst = 0;
    for (int r = 0; r < nbasis; ++r)
        for (int c = r; c < nbasis; ++c) {
            Complex got = gram[(size_t)r][(size_t)c] / (2.0 * na * ng);
            const Entry &a = basis[(size_t)r], &b = basis[(size_t)c];
            double expect = (a.j == b.j && a.m == b.m && a.n == b.n)
                                ? 1.0 / a.j.dim()
                                : 0.0;
            worst = std::max(worst, std::abs(got - Complex(expect)));
        }
    detail = "max deviation " + std::to_string(worst) + " (tol 1e-8), spins <= 2";
    return worst < tol;
}

// ---------------------------------------------------------------------------
// 2. 3jm orthogonality for all spins <= 3; 6j symmetry group on random keys.
bool threejm_orthogonality_and_sixj_symmetries(std::string& detail) {
    const double tol3 = 1e-12, tol6 = 1e-14;
    double worst3 = 0;
    for (int t1 = 0; t1 <= 6; ++t1)
        for (int t2 = 0; t2 <= 6; ++t2)
            for (int t3 = std::abs(t1 - t2); t3 <= std::min(t1 + t2, 6); t3 += 2)
                for (int t3b = std::abs(t1 - t2); t3b <= std::min(t1 + t2, 6); t3b += 2) {
                    HalfInt j1 = H(t1), j2 = H(t2), j3 = H(t3), j3b = H(t3b);
                    for (int tm3 = -std::min(t3, t3b); tm3 <= std::min(t3, t3b); tm3 += 2) {
                        HalfInt m3 = H(tm3);
                        double sum = 0;
                        for (int tm1 = -t1; tm1 <= t1; tm1 += 2) {
                            HalfInt m1 = H(tm1), m2 = -m1 - m3;
                            if (!HalfInt::magnetic_ok(j2, m2)) continue;
                            sum += three_jm_d(j1, m1, j2, m2, j3, m3) *
                                   three_jm_d(j1, m1, j2, m2, j3b, m3);
                        }
                        double expect = (t3 == t3b) ? 1.0 / j3.dim() : 0.0;
                        worst3 = std::max(worst3, std::abs(sum - expect));
                    }
                }
    std::mt19937_64 rng(71001);
    std::uniform_int_distribution<int> spin(0, 8);
    double worst6 = 0;
    int keys = 0;
    while (keys < 500) {
        HalfInt a = H(spin(rng)), b = H(spin(rng)), e = H(spin(rng));
        HalfInt d = H(spin(rng)), c = H(spin(rng)), f = H(spin(rng));
        if (!triangle_ok(a, b, e) || !triangle_ok(d, c, e) ||
            !triangle_ok(a, c, f) || !triangle_ok(d, b, f))
            continue;
        double base = six_j(a, b, e, d, c, f);
        // column permutations
        double dev = std::abs(base - six_j(b, a, e, c, d, f));
        dev = std::max(dev, std::abs(base - six_j(e, b, a, f, c, d)));
        dev = std::max(dev, std::abs(base - six_j(a, e, b, d, f, c)));
        // swap upper/lower rows in two columns
        dev = std::max(dev, std::abs(base - six_j(d, c, e, a, b, f)));
        dev = std::max(dev, std::abs(base - six_j(a, c, f, d, b, e)));
        dev = std::max(dev, std::abs(base - six_j(d, b, f, a, c, e)));
        worst6 = std::max(worst6, dev);
        ++keys;
    }
    detail = "3jm max deviation " + std::to_string(worst3) + " (tol 1e-12); 6j symmetry " +
             std::to_string(worst6) + " on 500 keys (tol 1e-14)";
    return worst3 < tol3 && worst6 < tol6;
}

// ---------------------------------------------------------------------------
// 3. Semiclassical 6j estimate at large equilateral spins.
bool equilateral_asymptotics(std::string& detail) {
    std::vector<int> bases{20, 50, 100};
    std::vector<double> devs;
    bool envelope_ok = true;
    for (int base : bases) {
        // Pick the sampled spin with the largest |estimate| (an oscillation
        // extremum) from a small window above the base spin.
        double best = -1, best_exact = 0, best_est = 0;
        for (int j = base; j < base + 5; ++j) {
            HalfInt s = HalfInt(j);
            double est = ponzano_regge_estimate(s, s, s, s, s, s);
            double exact = six_j(s, s, s, s, s, s);
            // amplitude envelope 1/sqrt(12 pi V): estimate = envelope * cos
            double edge = j + 0.5;
            double vol = std::sqrt(2.0) / 12.0 * edge * edge * edge;
            double env = 1.0 / std::sqrt(12.0 * kPi * vol);
            if (std::abs(exact) > env * 1.10) envelope_ok = false;
            if (std::abs(est) > best) {
                best = std::abs(est);
                best_exact = exact;
                best_est = est;
            }
        }
        devs.push_back(std::abs(best_exact - best_est) / std::abs(best_est));
    }
    bool decreasing = devs[0] > devs[1] && devs[1] > devs[2];
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "extremum deviations %.3g / %.3g / %.3g at j = 20/50/100 "
                  "(<= 0.1 at 100), envelope %s",
                  devs[0], devs[1], devs[2], envelope_ok ? "held" : "violated");
    detail = buf;
    return envelope_ok && decreasing && devs[2] <= 0.10;
}

// ---------------------------------------------------------------------------
// 4. Boost matrix elements: method agreement, identity at r = 0, symmetries.
bool boost_cross_validation(std::string& detail) {
    struct Case {
        double gamma;
        int tk;
    };
    std::vector<Case> cases{{0.2, 1}, {1.2, 1}, {1.2, 2}};
    double worst_pair = 0, worst_id = 0, worst_sym = 0;
    for (const Case& c : cases) {
        HalfInt k = H(c.tk);
        PrincipalLabel lab{c.gamma * k.to_double(), k};
        PrincipalLabel mpk{-lab.p, lab.k}, pmk{lab.p, -lab.k}, mpmk{-lab.p, -lab.k};
        for (int tj = c.tk; tj <= c.tk + 4; tj += 2)
            for (int tl = c.tk; tl <= c.tk + 4; tl += 2) {
                HalfInt j = H(tj), l = H(tl);
                // identity at r = 0
                for (int tm = -std::min(tj, tl); tm <= std::min(tj, tl); tm += 2)
                    worst_id = std::max(
                        worst_id, std::abs(boost_d(lab, j, l, H(tm), 0.0) -
                                           Complex(tj == tl ? 1.0 : 0.0)));
                for (double r : {0.1, 0.5, 1.0, 2.0, 4.0})
                    for (int tm = -std::min(tj, tl); tm <= std::min(tj, tl); tm += 2) {
                        HalfInt m = H(tm);
                        Complex a = boost_d(lab, j, l, m, r, BoostMethod::integral2);
                        Complex b = boost_d(lab, j, l, m, r, BoostMethod::hypergeometric);
                        Complex cc = boost_d(lab, j, l, m, r, BoostMethod::ruhl);
                        double scale = std::max(1e-12, std::abs(a));
                        worst_pair = std::max(worst_pair, std::abs(a - b) / scale);
                        worst_pair = std::max(worst_pair, std::abs(a - cc) / scale);
                        worst_pair = std::max(worst_pair, std::abs(b - cc) / scale);
                        // symmetry relations
                        Complex base = a;
                        worst_sym =
                            std::max(worst_sym, std::abs(base - boost_d(mpk, l, j, m, -r)));
                        worst_sym =
                            std::max(worst_sym, std::abs(base - boost_d(pmk, j, l, -m, r)));
                        double sgn = ((tj - tl) / 2 % 2 == 0) ? 1.0 : -1.0;
                        worst_sym = std::max(
                            worst_sym, std::abs(base - sgn * boost_d(mpmk, l, j, m, r)));
                        worst_sym = std::max(
                            worst_sym,
                            std::abs(base - std::conj(boost_d(lab, l, j, m, -r))));
                    }
            }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "pairwise %.2e (tol 1e-6), identity %.2e (tol 1e-12), symmetry %.2e "
                  "(tol 1e-8)",
                  worst_pair, worst_id, worst_sym);
    detail = buf;
    return worst_pair < 1e-6 && worst_id < 1e-12 && worst_sym < 1e-8;
}

// ---------------------------------------------------------------------------
// 5. Generator algebra and Casimirs on a truncated block.
struct Block {
    std::vector<std::pair<HalfInt, HalfInt>> basis;
    std::map<std::pair<int, int>, int> index;
    Block(HalfInt k, HalfInt jmax) {
        for (int tj = abs(k).twice(); tj <= jmax.twice(); tj += 2) {
            for (int tm = -tj; tm <= tj; tm += 2) {
                index[{tj, tm}] = (int)basis.size();
                basis.push_back({H(tj), H(tm)});
            }
        }
    }
    int find(HalfInt j, HalfInt m) const {
        auto it = index.find({j.twice(), m.twice()});
        return it == index.end() ? -1 : it->second;
    }
};

bool generator_casimir_block(std::string& detail) {
    const double tol = 1e-10;
    PrincipalLabel lab{1.5, HalfInt(1)};
    HalfInt jmax = abs(lab.k) + HalfInt(6);
    Block blk(lab.k, jmax);
    int n = (int)blk.basis.size();
    auto matrix = [&](Generator which) {
        CMat out(n, n);
        for (int c = 0; c < n; ++c) {
            auto [j, m] = blk.basis[(size_t)c];
            for (const GeneratorTerm& t : generator_action(lab, which, j, m)) {
                int r = blk.find(t.j, t.m);
                if (r >= 0) out.at(r, c) += t.coeff;
            }
        }
        return out;
    };
    auto lincomb = [&](Complex ca, const CMat& a, Complex cb, const CMat& b) {
        CMat out(a.rows, a.cols);
        for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = ca * a.a[i] + cb * b.a[i];
        return out;
    };
    CMat Jp = matrix(Generator::Jplus), Jm = matrix(Generator::Jminus);
    CMat Kp = matrix(Generator::Kplus), Km = matrix(Generator::Kminus);
    Complex ih(0, 0.5), mih(0, -0.5);
    std::array<CMat, 3> J{lincomb(0.5, Jp, 0.5, Jm), lincomb(mih, Jp, ih, Jm),
                          matrix(Generator::J3)};
    std::array<CMat, 3> K{lincomb(0.5, Kp, 0.5, Km), lincomb(mih, Kp, ih, Km),
                          matrix(Generator::K3)};
    auto comm = [&](const CMat& a, const CMat& b) { return lincomb(1, a * b, -1, b * a); };
    auto interior_dev = [&](const CMat& x, const CMat& y) {
        double worst = 0;
        for (int c = 0; c < x.cols; ++c) {
            if (blk.basis[(size_t)c].first.twice() > jmax.twice() - 2) continue;
            for (int r = 0; r < x.rows; ++r)
                worst = std::max(worst, std::abs(x.at(r, c) - y.at(r, c)));
        }
        return worst;
    };
    Complex i1(0, 1);
    CMat zero(n, n);
    double worst = 0;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        worst = std::max(worst, interior_dev(comm(J[a], J[b]), lincomb(i1, J[c], 0, J[c])));
        worst = std::max(worst, interior_dev(comm(K[a], K[b]), lincomb(-i1, J[c], 0, J[c])));
        worst = std::max(worst, interior_dev(comm(J[a], K[b]), lincomb(i1, K[c], 0, K[c])));
        worst = std::max(worst, interior_dev(comm(J[a], K[c]), lincomb(-i1, K[b], 0, K[b])));
        worst = std::max(worst, interior_dev(comm(J[a], K[a]), zero));
    }
    // Casimir scalars p^2 - k^2 + 1 and p k on interior columns.
    CMat c1 = lincomb(1, K[0] * K[0], 1, K[1] * K[1]);
    c1 = lincomb(1, c1, 1, K[2] * K[2]);
    c1 = lincomb(1, c1, -1, J[0] * J[0]);
    c1 = lincomb(1, c1, -1, J[1] * J[1]);
    c1 = lincomb(1, c1, -1, J[2] * J[2]);
    CMat c2 = lincomb(1, K[0] * J[0], 1, K[1] * J[1]);
    c2 = lincomb(1, c2, 1, K[2] * J[2]);
    double p = lab.p, kk = lab.k.to_double();
    CMat id1(n, n), id2(n, n);
    for (int d = 0; d < n; ++d) {
        id1.at(d, d) = Complex(p * p - kk * kk + 1.0);
        id2.at(d, d) = Complex(p * kk);
    }
    worst = std::max(worst, interior_dev(c1, id1));
    worst = std::max(worst, interior_dev(c2, id2));
    detail = "max interior deviation " + std::to_string(worst) + " (tol 1e-10)";
    return worst < tol;
}

// ---------------------------------------------------------------------------
// 6. Reality of the Lorentz Clebsch-Gordan reduced coefficients.
bool lorentz_cg_reality(std::string& detail) {
    std::mt19937_64 rng(71006);
    std::uniform_real_distribution<double> pdist(0.1, 2.0);
    std::uniform_int_distribution<int> kdist(0, 2);
    double worst_im = 0, worst_mod = 0;
    int checked = 0;
    while (checked < 200) {
        double p1 = pdist(rng), p2 = pdist(rng), p3 = pdist(rng);
        HalfInt k1 = H(kdist(rng)), k2 = H(kdist(rng)), k3 = H(kdist(rng));
        if (!(k1 + k2 + k3).is_integer()) continue;
        if ((k1 + k2 + k3).twice() % 4 != 0) continue;  // even integer sum
        // admissible j labels: j >= |k| with matching parity, j3 in triangle
        HalfInt j1 = abs(k1) + HalfInt(kdist(rng)), j2 = abs(k2) + HalfInt(kdist(rng));
        bool found = false;
        HalfInt j3 = abs(k3);
        for (int t3 = abs(k3).twice(); t3 <= 6 && !found; t3 += 2)
            if (triangle_ok(j1, j2, H(t3))) {
                j3 = H(t3);
                found = true;
            }
        if (!found) continue;
        Complex v = chi(p1, p2, p3, k1, k2, k3, j1, j2, j3);
        if (std::abs(v) < 1e-12) continue;
        worst_im = std::max(worst_im, std::abs(v.imag()) / std::abs(v));
        Complex kappa = chi_boost_dressing(p1, p2, p3, j1, j2, j3);
        worst_mod = std::max(worst_mod, std::abs(std::abs(kappa) - 1.0));
        ++checked;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "|Im|/|value| %.2e (tol 1e-8), phase modulus deviation %.2e (tol 1e-12)",
                  worst_im, worst_mod);
    detail = buf;
    return worst_im < 1e-8 && worst_mod < 1e-12;
}

// ---------------------------------------------------------------------------
// 7. Gauge invariance of the spin-network wavefunction.
SpinNetwork random_network(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> shape(0, 3);
    std::uniform_int_distribution<int> spin(1, 3);
    for (;;) {
        SpinNetwork sn;
        switch (shape(rng)) {
            case 0: {  // loop
                sn.graph.node_count = 1;
                sn.graph.links.push_back({0, 0});
                sn.spins.push_back(H(spin(rng)));
                sn.graph.default_ordering();
                sn.intertwiners = {H(0)};
                break;
            }
            case 1: {  // theta graph
                sn.graph.node_count = 2;
                for (int i = 0; i < 3; ++i) {
                    sn.graph.links.push_back({1, 0});
                    sn.spins.push_back(H(spin(rng)));
                }
                sn.graph.default_ordering();
                sn.intertwiners = {H(0), H(0)};
                break;
            }
            case 2: {  // two 4-valent nodes
                std::array<HalfInt, 4> js;
                for (auto& j : js) j = H(spin(rng));
                HalfInt lo, hi;
                if (!four_jm_range(js[0], js[1], js[2], js[3], lo, hi)) continue;
                std::uniform_int_distribution<int> pick(0, (hi - lo).to_int());
                sn.graph.node_count = 2;
                for (int i = 0; i < 4; ++i) {
                    sn.graph.links.push_back({1, 0});
                    sn.spins.push_back(js[(size_t)i]);
                }
                sn.graph.default_ordering();
                sn.intertwiners = {lo + HalfInt(pick(rng)), lo + HalfInt(pick(rng))};
                break;
            }
            default: {  // 4-node ring with both diagonals
                sn.graph.node_count = 4;
                for (int i = 0; i < 4; ++i) {
                    sn.graph.links.push_back({i, (i + 1) % 4});
                    sn.spins.push_back(H(spin(rng)));
                }
                sn.graph.links.push_back({0, 2});
                sn.spins.push_back(H(spin(rng)));
                sn.graph.links.push_back({1, 3});
                sn.spins.push_back(H(spin(rng)));
                sn.graph.default_ordering();
                sn.intertwiners.assign(4, H(0));
                break;
            }
        }
        if (validate_spin_network(sn).valid()) return sn;
    }
}

bool gauge_invariance(std::string& detail) {
    const double tol = 1e-10;
    std::mt19937_64 rng(71007);
    double worst = 0;
    int networks = 0;
    while (networks < 100) {
        SpinNetwork sn = random_network(rng);
        std::vector<SU2Element> g;
        for (std::size_t i = 0; i < sn.graph.links.size(); ++i)
            g.push_back(haar_sample_su2(rng));
        Complex base = wavefunction_eval(sn, g);
        if (std::abs(base) < 1e-8) continue;
        for (int orbit = 0; orbit < 100; ++orbit) {
            std::vector<SU2Element> u;
            for (int n = 0; n < sn.graph.node_count; ++n) u.push_back(haar_sample_su2(rng));
            Complex v = wavefunction_eval(sn, gauge_transform(sn, g, u));
            worst = std::max(worst, std::abs(v - base) / std::abs(base));
        }
        ++networks;
    }
    detail = "100 networks x 100 orbits, worst relative change " + std::to_string(worst) +
             " (tol 1e-10)";
    return worst < tol;
}

// ---------------------------------------------------------------------------
// 8. BF reduction of the Lorentzian vertex to the SU(2) value.
bool bf_reduction(std::string& detail) {
    const double tol = 1e-10;
    double worst = 0;
    {
        std::array<HalfInt, 10> links;
        std::array<HalfInt, 5> inter;
        links.fill(H(1));
        for (auto& i : inter) i = H(0);
        SpinNetwork vg = canonical_vertex_graph(links, inter);
        double og = ooguri_vertex(vg);
        double bf = eprl_vertex(vg, 1.2, 1, 0, /*bf_reduction=*/true).amplitude;
        worst = std::max(worst, std::abs(bf - og) / (1.0 + std::abs(og)));
    }
    {
        // mixed-spin graph
        std::array<HalfInt, 10> links{H(2), H(1), H(1), H(2), H(1), H(2),
                                      H(1), H(1), H(2), H(1)};
        std::array<HalfInt, 5> inter{};
        auto link_index = [](int a, int b) {
            static const int base[4] = {0, 4, 7, 9};
            return base[a] + (b - a - 1);
        };
        for (int a = 0; a < 5; ++a) {
            std::vector<HalfInt> js;
            for (int b = 0; b < 5; ++b)
                if (b != a)
                    js.push_back(links[(size_t)link_index(std::min(a, b), std::max(a, b))]);
            HalfInt lo, hi;
            if (!four_jm_range(js[0], js[1], js[2], js[3], lo, hi)) {
                detail = "mixed test graph inadmissible";
                return false;
            }
            inter[(size_t)a] = lo;
        }
        SpinNetwork vg = canonical_vertex_graph(links, inter);
        double og = ooguri_vertex(vg);
        double bf = eprl_vertex(vg, 1.2, 1, 0, true).amplitude;
        worst = std::max(worst, std::abs(bf - og) / (1.0 + std::abs(og)));
    }
    detail = "worst deviation from the SU(2) value " + std::to_string(worst) + " (tol 1e-10)";
    return worst < tol;
}

// ---------------------------------------------------------------------------
// 9. Shell convergence and fixed-node independence of the Lorentzian vertex.
bool eprl_convergence(std::string& detail) {
    std::array<HalfInt, 10> links;
    std::array<HalfInt, 5> inter;
    links.fill(H(1));
    for (auto& i : inter) i = H(0);
    SpinNetwork vg = canonical_vertex_graph(links, inter);
    const double gamma = 1.2;
    const int shells = 3;
    std::vector<double> amps;
    EprlResult ref;
    for (int fixed = 0; fixed < 5; ++fixed) {
        EprlResult r = eprl_vertex(vg, gamma, shells, fixed);
        if (fixed == 0) ref = r;
        amps.push_back(r.amplitude);
    }
    double inc =
        std::abs(ref.shell_sums[3] - ref.shell_sums[2]) / std::abs(ref.shell_sums[3]);
    double spread = *std::max_element(amps.begin(), amps.end()) -
                    *std::min_element(amps.begin(), amps.end());
    double last_inc_abs = std::abs(ref.shell_sums[3] - ref.shell_sums[2]);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "relative increment %.3g at shell 3 (tol 1e-2), fixed-node spread %.3g "
                  "vs increment %.3g",
                  inc, spread, last_inc_abs);
    detail = buf;
    return inc <= 1e-2 && spread <= last_inc_abs;
}

// ---------------------------------------------------------------------------
// 10. Command-line determinism and parser round-trip.
std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool cli_determinism(std::string& detail) {
    const char* cli = std::getenv("FOAMKIT_CLI");
    const char* data = std::getenv("FOAMKIT_DATA");
    if (!cli || !data) {
        detail = "FOAMKIT_CLI / FOAMKIT_DATA not set";
        return false;
    }
    // parser round-trip over the corpus
    int docs = 0;
    for (const auto& entry : std::filesystem::directory_iterator(data)) {
        if (entry.path().extension() != ".sn") continue;
        NetworkDocument doc = parse_network_document(read_file(entry.path()));
        std::string canon = serialize_network_document(doc);
        if (serialize_network_document(parse_network_document(canon)) != canon) {
            detail = "round-trip failed for " + entry.path().filename().string();
            return false;
        }
        ++docs;
    }
    if (docs < 20) {
        detail = "corpus has only " + std::to_string(docs) + " documents";
        return false;
    }
    // cold vs warm vertex runs through the persistent cache
    auto tmp = std::filesystem::temp_directory_path() / "foamkit_acceptance";
    std::filesystem::remove_all(tmp);
    std::filesystem::create_directories(tmp);
    std::string graph = (std::filesystem::path(data) / "simplex_half.sn").string();
    auto run = [&](const std::string& out) {
        std::string cmd = std::string(cli) + " vertex --graph " + graph +
                          " --gamma 1.2 --shells 1 --cache-dir " + (tmp / "cache").string() +
                          " > " + (tmp / out).string() + " 2>/dev/null";
        return std::system(cmd.c_str());
    };
    if (run("cold.json") != 0 || run("warm.json") != 0) {
        detail = "vertex subcommand failed";
        return false;
    }
    std::string cold = read_file(tmp / "cold.json"), warm = read_file(tmp / "warm.json");
    if (cold.empty() || cold != warm) {
        detail = "cold and warm outputs differ";
        return false;
    }
    detail = std::to_string(docs) + " documents round-tripped; cold and warm vertex " +
             "outputs byte-identical (" + std::to_string(cold.size()) + " bytes)";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "Wigner matrix orthogonality", wigner_orthogonality},
        {2, "3jm orthogonality and 6j symmetries", threejm_orthogonality_and_sixj_symmetries},
        {3, "semiclassical 6j estimate at large spins", equilateral_asymptotics},
        {4, "boost matrix cross-validation", boost_cross_validation},
        {5, "generator algebra and Casimirs", generator_casimir_block},
        {6, "Lorentz Clebsch-Gordan reality", lorentz_cg_reality},
        {7, "spin-network gauge invariance", gauge_invariance},
        {8, "BF reduction of the Lorentzian vertex", bf_reduction},
        {9, "vertex shell convergence and fixed-node independence", eprl_convergence},
        {10, "command-line determinism and parser round-trip", cli_determinism},
    };
    int failures = 0;
    for (auto& c : criteria) {
        std::string det;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(det);
        } catch (const std::exception& e) {
            det = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        std::printf("%s %2d %-52s [%6.1fs] %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), secs, det.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
