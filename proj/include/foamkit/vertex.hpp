#pragma once

#include <functional>
#include <map>

#include "foamkit/contraction.hpp"
#include "foamkit/principal.hpp"
#include "foamkit/quadrature.hpp"
#include "foamkit/spin_network.hpp"

namespace foamkit {

// Builds the canonical 4-simplex vertex graph: complete graph on 5 nodes,
// links in the order (j12 j13 j14 j15 j23 j24 j25 j34 j35 j45) with j_ab
// oriented b -> a, node orderings listing neighbours in increasing order.
// Matches the reducedGraph 15j argument convention.
inline SpinNetwork canonical_vertex_graph(const std::array<HalfInt, 10>& links,
                                          const std::array<HalfInt, 5>& inter) {
    SpinNetwork sn;
    sn.graph.node_count = 5;
    int li = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) {
            sn.graph.links.push_back({b, a});
            sn.spins.push_back(links[(size_t)li]);
            ++li;
        }
    auto link_index = [](int a, int b) {  // a < b
        static const int base[4] = {0, 4, 7, 9};
        return base[a] + (b - a - 1);
    };
    sn.graph.ordering.assign(5, {});
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            if (b != a)
                sn.graph.ordering[(size_t)a].push_back(
                    link_index(std::min(a, b), std::max(a, b)));
    for (int a = 0; a < 5; ++a) sn.intertwiners.push_back(inter[(size_t)a]);
    return sn;
}

// SU(2) BF vertex amplitude: the network wavefunction at the identity
// assignment, equal to the 15j symbol of the matching convention.
inline double ooguri_vertex(const SpinNetwork& vg) {
    if (vg.graph.node_count != 5 || vg.graph.links.size() != 10)
        throw std::invalid_argument("ooguri_vertex: need 5 nodes and 10 links");
    for (int v : vg.graph.valences())
        if (v != 4) throw std::invalid_argument("ooguri_vertex: all nodes must be 4-valent");
    std::vector<SU2Element> id(10);
    Complex val = wavefunction_eval(vg, id);
    if (std::abs(std::imag(val)) > 1e-10 * (1.0 + std::abs(val)))
        throw std::logic_error("ooguri_vertex: non-real contraction");
    return std::real(val);
}

struct B4Options {
    double rmax = 18.0;    // boost_d fast path requires r < 19
    int min_panels = 24;
    int max_panels = 192;
    int gl_order = 8;
    double tol = 1e-8;     // relative self-convergence target under refinement
};

// Booster function: the rapidity integral coupling an SU(2) intertwiner iota
// on spins j1..j4 to an intertwiner kappa on l1..l4 through four boost matrix
// elements of the gamma-simple representations (p, k) = (gamma j, j):
//   B4 = Int_0^inf dr sinh^2(r)/(4 pi) sum_m (4jm)^{iota}_{j,m}
//        [prod_f d^{(gamma j_f, j_f)}_{j_f l_f m_f}(r)] (4jm)^{kappa}_{l,m}.
inline double booster_b4(const std::array<HalfInt, 4>& j, const std::array<HalfInt, 4>& l,
                         HalfInt iota, HalfInt kappa, double gamma,
                         const B4Options& opt = {}) {
    for (int f = 0; f < 4; ++f)
        if (l[(size_t)f] < j[(size_t)f])
            throw std::invalid_argument("booster_b4: requires l >= j on every face");
    // A spin-0 face carries the trivial representation (unit factor), not the
    // (p, k) = (0, 0) endpoint of the principal series. With every face
    // trivial the redundant group integral is dropped entirely.
    std::vector<int> active;
    for (int f = 0; f < 4; ++f)
        if (j[(size_t)f].twice() != 0 || l[(size_t)f].twice() != 0) active.push_back(f);
    if (active.empty()) return iota == kappa ? 1.0 : 0.0;
    // Magnetic coefficients: the boost elements are diagonal in m, bounded by j.
    struct MTerm {
        std::array<HalfInt, 4> m;
        double coeff;
    };
    std::vector<MTerm> terms;
    for (int t1 = -j[0].twice(); t1 <= j[0].twice(); t1 += 2)
        for (int t2 = -j[1].twice(); t2 <= j[1].twice(); t2 += 2)
            for (int t3 = -j[2].twice(); t3 <= j[2].twice(); t3 += 2) {
                HalfInt m1 = HalfInt::from_twice(t1), m2 = HalfInt::from_twice(t2),
                        m3 = HalfInt::from_twice(t3);
                HalfInt m4 = -(m1 + m2 + m3);
                if (!HalfInt::magnetic_ok(j[3], m4)) continue;
                double wj = four_jm(j[0], j[1], j[2], j[3], m1, m2, m3, m4, iota);
                if (wj == 0) continue;
                double wl = four_jm(l[0], l[1], l[2], l[3], m1, m2, m3, m4, kappa);
                if (wl == 0) continue;
                terms.push_back({{m1, m2, m3, m4}, wj * wl});
            }
    if (terms.empty()) return 0.0;

    std::array<PrincipalLabel, 4> lab;
    for (int f = 0; f < 4; ++f) lab[(size_t)f] = {gamma * j[(size_t)f].to_double(), j[(size_t)f]};
    // boost_d carries a per-spin Gamma-function phase in its row/column bases;
    // stripping it and adding i^(l - j) per face moves each matrix element into
    // the basis where conj(d_{j l, m}) = (-1)^(j - l) d_{j l, -m}, under which
    // the magnetic sum pairs m with -m and the booster is real. The combined
    // phase is 1 on diagonal (l = j) blocks, so those values are unchanged.
    auto row_phase = [](double p, HalfInt s) {
        return std::exp(Complex(0, std::imag(ln_gamma_complex(Complex(1 + s.to_double(), p)))));
    };
    Complex dress(1.0);
    for (int f : active)
        dress *= std::pow(Complex(0, 1), (l[(size_t)f] - j[(size_t)f]).to_int()) *
                 row_phase(lab[(size_t)f].p, j[(size_t)f]) *
                 std::conj(row_phase(lab[(size_t)f].p, l[(size_t)f]));
    auto integrand = [&](double r) -> Complex {
        if (r == 0) return Complex(0);
        Complex s(0);
        for (const auto& t : terms) {
            Complex prod(t.coeff);
            for (int f : active)
                prod *= boost_d(lab[(size_t)f], j[(size_t)f], l[(size_t)f], t.m[(size_t)f], r,
                                BoostMethod::hypergeometric);
            s += prod;
        }
        return cartan_haar_weight(r) * dress * s;
    };
    auto quad = [&](int panels) {
        Complex acc(0);
        double h = opt.rmax / panels;
        for (int p = 0; p < panels; ++p)
            acc += integrate_gl(integrand, p * h, (p + 1) * h, opt.gl_order);
        return acc;
    };
    Complex prev = quad(opt.min_panels);
    Complex cur = prev;
    for (int panels = 2 * opt.min_panels; panels <= opt.max_panels; panels *= 2) {
        cur = quad(panels);
        // Absolute floor keeps values compatible with zero from spinning forever.
        if (std::abs(cur - prev) <= opt.tol * std::abs(cur) + 1e-13) {
            prev = cur;
            break;
        }
        prev = cur;
        if (2 * panels > opt.max_panels)
            throw std::runtime_error("booster_b4: quadrature did not converge");
    }
    if (std::abs(std::imag(cur)) > 1e-8 * (1.0 + std::abs(cur)))
        throw std::logic_error("booster_b4: non-real booster value");
    return std::real(cur);
}

struct EprlResult {
    double amplitude = 0;             // value at the requested shell count
    std::vector<double> shell_sums;   // partial amplitudes for shells 0..requested
};

namespace detail {

// Per-node dressed tensor data for the EPRL contraction: a block per local
// assignment of face spins l, on the combined (l, m) link indices.
struct CombinedAxis {
    std::vector<HalfInt> ls;      // admissible face spins, ascending
    std::vector<int> offsets;     // block offsets into the combined index
    int dim = 0;

    void build(HalfInt j, int shells) {
        ls.clear();
        offsets.clear();
        dim = 0;
        for (int d = 0; d <= shells; ++d) {
            HalfInt l = j + HalfInt(d);
            ls.push_back(l);
            offsets.push_back(dim);
            dim += l.dim();
        }
    }
};

}  // namespace detail

// EPRL vertex amplitude of a 5-node/10-link vertex graph by the booster
// decomposition: one rapidity integral per non-fixed edge, auxiliary face
// spins l_f summed over [j_f, j_f + shell] on the six faces not touching the
// fixed node (faces at the fixed node keep l = j), auxiliary intertwiners
// kappa_e summed with weight (2 kappa + 1) on the non-fixed edges.
// shell_sums[s] reports the amplitude at shell truncation s.
// When bf_reduction is set, boosters are replaced by the r = 0 orthogonality
// kernel delta_{iota kappa} delta_{jl} / (2 iota + 1), reducing the amplitude
// to the SU(2) BF value.
// An optional booster provider replaces the direct booster_b4 call (same
// argument order plus gamma); callers use it to route values through a
// persistent cache.
using B4Provider = std::function<double(const std::array<HalfInt, 4>&,
                                        const std::array<HalfInt, 4>&, HalfInt, HalfInt,
                                        double)>;

inline EprlResult eprl_vertex(const SpinNetwork& vg, double gamma, int shells,
                              int fixed_node = 0, bool bf_reduction = false,
                              const B4Options& quad = {}, const B4Provider& provider = {}) {
    if (vg.graph.node_count != 5 || vg.graph.links.size() != 10)
        throw std::invalid_argument("eprl_vertex: need 5 nodes and 10 links");
    auto rep = validate_spin_network(vg);
    if (!rep.valid())
        throw std::invalid_argument("eprl_vertex: invalid graph: " + rep.problems[0]);
    if (fixed_node < 0 || fixed_node >= 5)
        throw std::invalid_argument("eprl_vertex: fixed node out of range");
    if (shells < 0) throw std::invalid_argument("eprl_vertex: negative shell count");

    // Memoized booster per (edge-local labels).
    std::map<std::array<int, 10>, double> b4cache;
    auto b4 = [&](const std::array<HalfInt, 4>& j, const std::array<HalfInt, 4>& l,
                  HalfInt iota, HalfInt kappa) {
        if (bf_reduction) {
            for (int f = 0; f < 4; ++f)
                if (j[(size_t)f] != l[(size_t)f]) return 0.0;
            if (iota != kappa) return 0.0;
            return 1.0 / iota.dim();
        }
        std::array<int, 10> key{j[0].twice(), j[1].twice(), j[2].twice(), j[3].twice(),
                                l[0].twice(), l[1].twice(), l[2].twice(), l[3].twice(),
                                iota.twice(), kappa.twice()};
        auto it = b4cache.find(key);
        if (it != b4cache.end()) return it->second;
        double v = provider ? provider(j, l, iota, kappa, gamma)
                            : booster_b4(j, l, iota, kappa, gamma, quad);
        b4cache.emplace(key, v);
        return v;
    };

    EprlResult res;
    for (int shell = 0; shell <= shells; ++shell) {
        // Combined (l, m) axis per link; links at the fixed node stay at l = j.
        std::vector<detail::CombinedAxis> axis(10);
        for (int li = 0; li < 10; ++li) {
            const auto& lk = vg.graph.links[(size_t)li];
            bool at_fixed = (lk.src == fixed_node || lk.dst == fixed_node);
            axis[(size_t)li].build(vg.spins[(size_t)li], at_fixed ? 0 : shell);
        }
        std::vector<detail::AxTensor> parts;
        for (int n = 0; n < 5; ++n) {
            const auto& slots = vg.graph.ordering[(size_t)n];
            detail::AxTensor t;
            for (int li : slots) {
                t.axes.push_back(li);
                t.dims.push_back(axis[(size_t)li].dim);
            }
            t.data.assign(t.size(), Complex(0));
            std::array<HalfInt, 4> js;
            for (int i = 0; i < 4; ++i) js[(size_t)i] = vg.spins[(size_t)slots[(size_t)i]];
            int nblocks[4];
            for (int i = 0; i < 4; ++i)
                nblocks[i] = (int)axis[(size_t)slots[(size_t)i]].ls.size();
            // One block per local face-spin assignment.
            for (int b0 = 0; b0 < nblocks[0]; ++b0)
                for (int b1 = 0; b1 < nblocks[1]; ++b1)
                    for (int b2 = 0; b2 < nblocks[2]; ++b2)
                        for (int b3 = 0; b3 < nblocks[3]; ++b3) {
                            int bb[4] = {b0, b1, b2, b3};
                            std::array<HalfInt, 4> ls;
                            int off[4];
                            for (int i = 0; i < 4; ++i) {
                                const auto& ax = axis[(size_t)slots[(size_t)i]];
                                ls[(size_t)i] = ax.ls[(size_t)bb[i]];
                                off[i] = ax.offsets[(size_t)bb[i]];
                            }
                            HalfInt klo, khi;
                            if (!four_jm_range(ls[0], ls[1], ls[2], ls[3], klo, khi)) continue;
                            // Dressed intertwiner weights on this block.
                            std::vector<std::pair<HalfInt, double>> kw;
                            if (n == fixed_node) {
                                HalfInt iota = vg.intertwiners[(size_t)n];
                                if (iota >= klo && iota <= khi && same_parity(iota, klo))
                                    kw.push_back({iota, 1.0});
                            } else {
                                HalfInt iota = vg.intertwiners[(size_t)n];
                                for (int tk = klo.twice(); tk <= khi.twice(); tk += 2) {
                                    HalfInt kappa = HalfInt::from_twice(tk);
                                    double w = kappa.dim() * b4(js, ls, iota, kappa);
                                    if (w != 0) kw.push_back({kappa, w});
                                }
                            }
                            if (kw.empty()) continue;
                            // Fill the block: sum_kappa w * 4jm(l, m, kappa), with the
                            // metric phase and index flip on source attachments.
                            int d[4];
                            for (int i = 0; i < 4; ++i) d[i] = ls[(size_t)i].dim();
                            bool tail[4];
                            {
                                std::vector<int> seen;
                                for (int i = 0; i < 4; ++i) {
                                    int li = slots[(size_t)i];
                                    int occ = (int)std::count(seen.begin(), seen.end(), li);
                                    seen.push_back(li);
                                    tail[i] = !detail::attachment_is_head(vg.graph, n, li, occ);
                                }
                            }
                            for (int x0 = 0; x0 < d[0]; ++x0)
                                for (int x1 = 0; x1 < d[1]; ++x1)
                                    for (int x2 = 0; x2 < d[2]; ++x2)
                                        for (int x3 = 0; x3 < d[3]; ++x3) {
                                            int xs[4] = {x0, x1, x2, x3};
                                            std::array<HalfInt, 4> m;
                                            double phase = 1.0;
                                            for (int i = 0; i < 4; ++i) {
                                                HalfInt mi = mag_of_index(ls[(size_t)i], xs[i]);
                                                if (tail[i]) {
                                                    phase *= parity_sign(ls[(size_t)i] - mi);
                                                    mi = -mi;
                                                }
                                                m[(size_t)i] = mi;
                                            }
                                            double val = 0;
                                            for (const auto& [kappa, w] : kw) {
                                                double f = four_jm(ls[0], ls[1], ls[2], ls[3],
                                                                   m[0], m[1], m[2], m[3], kappa);
                                                if (f != 0) val += w * f;
                                            }
                                            if (val == 0) continue;
                                            std::size_t flat =
                                                (((std::size_t)(off[0] + x0) * (std::size_t)t.dims[1] +
                                                  (std::size_t)(off[1] + x1)) *
                                                     (std::size_t)t.dims[2] +
                                                 (std::size_t)(off[2] + x2)) *
                                                    (std::size_t)t.dims[3] +
                                                (std::size_t)(off[3] + x3);
                                            t.data[flat] = Complex(phase * val);
                                        }
                        }
            parts.push_back(std::move(t));
        }
        // Contract: links carry a plain delta between their two attachments.
        while (parts.size() > 1) {
            int bi = 0, bj = 1, best = -1;
            for (int i = 0; i < (int)parts.size(); ++i)
                for (int j2 = i + 1; j2 < (int)parts.size(); ++j2) {
                    int s = 0;
                    for (int ax : parts[(size_t)i].axes)
                        if (std::find(parts[(size_t)j2].axes.begin(),
                                      parts[(size_t)j2].axes.end(),
                                      ax) != parts[(size_t)j2].axes.end())
                            ++s;
                    if (s > best) {
                        best = s;
                        bi = i;
                        bj = j2;
                    }
                }
            detail::AxTensor merged = detail::contract(parts[(size_t)bi], parts[(size_t)bj]);
            parts.erase(parts.begin() + bj);
            parts[(size_t)bi] = std::move(merged);
        }
        res.shell_sums.push_back(std::real(parts[0].data[0]));
    }
    res.amplitude = res.shell_sums.back();
    return res;
}

// Oriented labelled 2-complex. A face lists its bounding edges as a cyclic
// chain; consecutive edges of the chain share the vertex the face passes
// through. An edge endpoint of -1 marks a boundary (dangling) attachment.
struct SpinFoam {
    struct Edge {
        int src = -1;
        int dst = -1;
        HalfInt intertwiner;
    };
    struct Face {
        HalfInt spin;
        std::vector<int> edges;  // cyclic chain of edge ids
    };
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;
};

inline ValidationReport validate_spin_foam(const SpinFoam& foam) {
    ValidationReport rep;
    for (int e = 0; e < (int)foam.edges.size(); ++e) {
        const auto& ed = foam.edges[(size_t)e];
        if (ed.src < -1 || ed.src >= foam.vertex_count || ed.dst < -1 ||
            ed.dst >= foam.vertex_count || (ed.src < 0 && ed.dst < 0))
            rep.problems.push_back("edge " + std::to_string(e) + " has an undeclared vertex");
    }
    if (!rep.valid()) return rep;
    for (int f = 0; f < (int)foam.faces.size(); ++f) {
        const auto& fc = foam.faces[(size_t)f];
        std::string tag = "face " + std::to_string(f) + ": ";
        if (fc.edges.size() < 2) {
            rep.problems.push_back(tag + "needs at least two edges");
            continue;
        }
        for (std::size_t i = 0; i < fc.edges.size(); ++i) {
            int e1 = fc.edges[i], e2 = fc.edges[(i + 1) % fc.edges.size()];
            if (e1 < 0 || e1 >= (int)foam.edges.size() || e2 < 0 ||
                e2 >= (int)foam.edges.size()) {
                rep.problems.push_back(tag + "references an undeclared edge");
                break;
            }
            if (fc.edges.size() == 2 && i == 1) break;  // two-edge face: one shared pair
            const auto& a = foam.edges[(size_t)e1];
            const auto& b = foam.edges[(size_t)e2];
            bool share = (a.src >= 0 && (a.src == b.src || a.src == b.dst)) ||
                         (a.dst >= 0 && (a.dst == b.src || a.dst == b.dst));
            if (!share)
                rep.problems.push_back(tag + "consecutive edges share no vertex");
        }
    }
    return rep;
}

// Extracts the vertex graph at foam vertex v: one node per incident edge,
// one link per face passage through v.
inline SpinNetwork vertex_graph(const SpinFoam& foam, int v) {
    std::vector<int> local_of(foam.edges.size(), -1);
    SpinNetwork sn;
    for (int e = 0; e < (int)foam.edges.size(); ++e)
        if (foam.edges[(size_t)e].src == v || foam.edges[(size_t)e].dst == v) {
            local_of[(size_t)e] = sn.graph.node_count;
            ++sn.graph.node_count;
            sn.intertwiners.push_back(foam.edges[(size_t)e].intertwiner);
        }
    for (const auto& fc : foam.faces) {
        std::size_t npairs = fc.edges.size() == 2 ? 1 : fc.edges.size();
        for (std::size_t i = 0; i < npairs; ++i) {
            int e1 = fc.edges[i], e2 = fc.edges[(i + 1) % fc.edges.size()];
            const auto& a = foam.edges[(size_t)e1];
            const auto& b = foam.edges[(size_t)e2];
            bool shared_at_v = (a.src == v || a.dst == v) && (b.src == v || b.dst == v);
            if (!shared_at_v) continue;
            int n1 = local_of[(size_t)e1], n2 = local_of[(size_t)e2];
            // Orient from the higher local node to the lower one.
            sn.graph.links.push_back({std::max(n1, n2), std::min(n1, n2)});
            sn.spins.push_back(fc.spin);
        }
    }
    sn.graph.default_ordering();
    return sn;
}

// Spin-foam amplitude: face and edge dimension factors times the product of
// the EPRL vertex amplitudes of every vertex graph.
inline double foam_amplitude(const SpinFoam& foam, const GeometrySpec& geo, int shells,
                             const B4Options& quad = {}, const B4Provider& provider = {}) {
    auto rep = validate_spin_foam(foam);
    if (!rep.valid())
        throw std::invalid_argument("foam_amplitude: invalid foam: " + rep.problems[0]);
    double amp = 1.0;
    for (const auto& fc : foam.faces) amp *= fc.spin.dim();
    for (const auto& ed : foam.edges) amp *= ed.intertwiner.dim();
    for (int v = 0; v < foam.vertex_count; ++v) {
        SpinNetwork vg = vertex_graph(foam, v);
        amp *= eprl_vertex(vg, geo.gamma, shells, 0, false, quad, provider).amplitude;
    }
    return amp;
}

// Relative probability of boundary data against a reference family.
inline double transition_probability(const std::vector<Complex>& amplitudes,
                                     const std::vector<Complex>& reference) {
    double num = 0, den = 0;
    for (const auto& a : amplitudes) num += std::norm(a);
    for (const auto& s : reference) den += std::norm(s);
    if (den == 0)
        throw std::domain_error("transition_probability: reference family has zero norm");
    return num / den;
}

}  // namespace foamkit
