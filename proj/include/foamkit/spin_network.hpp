#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "foamkit/recoupling.hpp"
#include "foamkit/su2.hpp"
#include "foamkit/wigner.hpp"

namespace foamkit {

// Directed graph with a cyclic ordering of the link attachments at each node.
// A self-loop appears twice in its node's ordering: head attachment first.
struct DirectedGraph {
    struct Link {
        int src = -1;
        int dst = -1;
    };
    int node_count = 0;
    std::vector<Link> links;
    std::vector<std::vector<int>> ordering;  // per node, incident link ids

    // Number of attachments (valence) implied by the links alone.
    std::vector<int> valences() const {
        std::vector<int> v((size_t)node_count, 0);
        for (const auto& l : links) {
            ++v[(size_t)l.src];
            ++v[(size_t)l.dst];
        }
        return v;
    }

    // Fills ordering with the incident links in id order (self-loops twice).
    void default_ordering() {
        ordering.assign((size_t)node_count, {});
        for (int li = 0; li < (int)links.size(); ++li) {
            ordering[(size_t)links[(size_t)li].dst].push_back(li);
            if (links[(size_t)li].src != links[(size_t)li].dst)
                ordering[(size_t)links[(size_t)li].src].push_back(li);
            else
                ordering[(size_t)links[(size_t)li].dst].push_back(li);
        }
    }
};

struct SpinNetwork {
    DirectedGraph graph;
    std::vector<HalfInt> spins;         // per link
    std::vector<HalfInt> intertwiners;  // per node; meaningful at 4-valent nodes
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool valid() const { return problems.empty(); }
};

namespace detail {

// Attachment role of occurrence `occ` of link `li` at node `n`:
// true when the index enters as the head (+m) index.
inline bool attachment_is_head(const DirectedGraph& g, int n, int li, int occ) {
    const auto& l = g.links[(size_t)li];
    if (l.src == l.dst) return occ == 0;  // self-loop: head attachment listed first
    return l.dst == n;
}

}  // namespace detail

// Checks structural consistency and the admissibility of every node label.
inline ValidationReport validate_spin_network(const SpinNetwork& sn) {
    ValidationReport rep;
    const auto& g = sn.graph;
    auto bad = [&](const std::string& s) { rep.problems.push_back(s); };
    if ((int)sn.spins.size() != (int)g.links.size()) bad("spin list does not match link list");
    if ((int)sn.intertwiners.size() != g.node_count)
        bad("intertwiner list does not match node list");
    if ((int)g.ordering.size() != g.node_count) bad("ordering list does not match node list");
    for (int li = 0; li < (int)g.links.size(); ++li) {
        const auto& l = g.links[(size_t)li];
        if (l.src < 0 || l.src >= g.node_count || l.dst < 0 || l.dst >= g.node_count)
            bad("link " + std::to_string(li) + " has an undeclared endpoint");
    }
    if (!rep.valid()) return rep;

    auto val = g.valences();
    for (int n = 0; n < g.node_count; ++n) {
        std::string tag = "node " + std::to_string(n) + ": ";
        // The ordering must be a permutation of the incident attachments.
        std::vector<int> expect, got = g.ordering[(size_t)n];
        for (int li = 0; li < (int)g.links.size(); ++li) {
            if (g.links[(size_t)li].dst == n) expect.push_back(li);
            if (g.links[(size_t)li].src == n) expect.push_back(li);
        }
        std::sort(expect.begin(), expect.end());
        std::sort(got.begin(), got.end());
        if (expect != got) {
            bad(tag + "ordering is not a permutation of the incident links");
            continue;
        }
        std::vector<HalfInt> js;
        for (int li : g.ordering[(size_t)n]) js.push_back(sn.spins[(size_t)li]);
        switch (val[(size_t)n]) {
            case 1:
                if (js[0].twice() != 0) bad(tag + "1-valent node requires spin 0");
                break;
            case 2:
                if (js[0] != js[1]) bad(tag + "2-valent node requires equal spins");
                break;
            case 3:
                if (!same_parity(js[0] + js[1], js[2]) || !triangle_ok(js[0], js[1], js[2]))
                    bad(tag + "3-valent spins violate the coupling rules");
                break;
            case 4: {
                HalfInt lo, hi;
                if (!four_jm_range(js[0], js[1], js[2], js[3], lo, hi)) {
                    bad(tag + "empty intertwiner range");
                } else {
                    HalfInt iota = sn.intertwiners[(size_t)n];
                    if (iota < lo || iota > hi || !same_parity(iota, lo))
                        bad(tag + "intertwiner outside the admissible range");
                }
                break;
            }
            default:
                bad(tag + "valence " + std::to_string(val[(size_t)n]) + " unsupported");
        }
    }
    return rep;
}

namespace detail {

// Dense complex tensor with labelled axes (axis label = link id).
struct AxTensor {
    std::vector<int> axes;
    std::vector<int> dims;
    std::vector<Complex> data{Complex(1)};

    std::size_t size() const {
        std::size_t s = 1;
        for (int d : dims) s *= (std::size_t)d;
        return s;
    }
};

// Traces every repeated axis label (self-loop closure).
inline AxTensor trace_repeated(const AxTensor& t) {
    int p = -1, q = -1;
    for (int i = 0; i < (int)t.axes.size() && p < 0; ++i)
        for (int j = i + 1; j < (int)t.axes.size(); ++j)
            if (t.axes[(size_t)i] == t.axes[(size_t)j]) {
                p = i;
                q = j;
                break;
            }
    if (p < 0) return t;
    AxTensor r;
    for (int i = 0; i < (int)t.axes.size(); ++i)
        if (i != p && i != q) {
            r.axes.push_back(t.axes[(size_t)i]);
            r.dims.push_back(t.dims[(size_t)i]);
        }
    r.data.assign(r.size(), Complex(0));
    int n = (int)t.axes.size();
    std::vector<int> idx((size_t)n, 0);
    std::size_t flat = 0;
    std::vector<std::size_t> stride((size_t)n, 1);
    for (int i = n - 2; i >= 0; --i)
        stride[(size_t)i] = stride[(size_t)i + 1] * (std::size_t)t.dims[(size_t)i + 1];
    // Iterate over the full tensor, accumulating the diagonal p == q entries.
    for (;;) {
        if (idx[(size_t)p] == idx[(size_t)q]) {
            std::size_t out = 0;
            for (int i = 0, k = 0; i < n; ++i) {
                if (i == p || i == q) continue;
                out = out * (std::size_t)r.dims[(size_t)k] + (std::size_t)idx[(size_t)i];
                ++k;
            }
            r.data[out] += t.data[flat];
        }
        int i = n - 1;
        for (; i >= 0; --i) {
            if (++idx[(size_t)i] < t.dims[(size_t)i]) {
                flat += stride[(size_t)i];
                break;
            }
            flat -= stride[(size_t)i] * (std::size_t)(t.dims[(size_t)i] - 1);
            idx[(size_t)i] = 0;
        }
        if (i < 0) break;
    }
    return trace_repeated(r);
}

// Contracts all shared axis labels between a and b (plain index matching).
inline AxTensor contract(const AxTensor& a, const AxTensor& b) {
    std::vector<int> shared;
    for (int ax : a.axes)
        if (std::find(b.axes.begin(), b.axes.end(), ax) != b.axes.end()) shared.push_back(ax);
    AxTensor r;
    std::vector<int> afree, bfree, apos, bpos, asharedpos, bsharedpos;
    for (int i = 0; i < (int)a.axes.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), a.axes[(size_t)i]) == shared.end()) {
            afree.push_back(i);
            r.axes.push_back(a.axes[(size_t)i]);
            r.dims.push_back(a.dims[(size_t)i]);
        }
    }
    for (int i = 0; i < (int)b.axes.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), b.axes[(size_t)i]) == shared.end()) {
            bfree.push_back(i);
            r.axes.push_back(b.axes[(size_t)i]);
            r.dims.push_back(b.dims[(size_t)i]);
        }
    }
    for (int ax : shared) {
        int ia = (int)(std::find(a.axes.begin(), a.axes.end(), ax) - a.axes.begin());
        int ib = (int)(std::find(b.axes.begin(), b.axes.end(), ax) - b.axes.begin());
        if (a.dims[(size_t)ia] != b.dims[(size_t)ib])
            throw std::logic_error("contract: mismatched axis dimensions");
        asharedpos.push_back(ia);
        bsharedpos.push_back(ib);
    }
    r.data.assign(r.size(), Complex(0));

    auto strides = [](const AxTensor& t) {
        std::vector<std::size_t> s(t.dims.size(), 1);
        for (int i = (int)t.dims.size() - 2; i >= 0; --i)
            s[(size_t)i] = s[(size_t)i + 1] * (std::size_t)t.dims[(size_t)i + 1];
        return s;
    };
    auto sa = strides(a), sb = strides(b);

    std::size_t nfreeA = 1, nfreeB = 1, nsh = 1;
    for (int i : afree) nfreeA *= (std::size_t)a.dims[(size_t)i];
    for (int i : bfree) nfreeB *= (std::size_t)b.dims[(size_t)i];
    for (int i : asharedpos) nsh *= (std::size_t)a.dims[(size_t)i];

    auto offsets = [](const std::vector<int>& pos, const AxTensor& t,
                      const std::vector<std::size_t>& st) {
        std::size_t count = 1;
        for (int i : pos) count *= (std::size_t)t.dims[(size_t)i];
        std::vector<std::size_t> off(count, 0);
        std::size_t rep = 1;
        for (int k = (int)pos.size() - 1; k >= 0; --k) {
            int d = t.dims[(size_t)pos[(size_t)k]];
            std::size_t s = st[(size_t)pos[(size_t)k]];
            for (std::size_t f = 0; f < count; ++f)
                off[f] += s * ((f / rep) % (std::size_t)d);
            rep *= (std::size_t)d;
        }
        return off;
    };
    // Shared offsets must enumerate in the same order on both sides; pair them
    // by the shared-axis list order.
    auto offA_free = offsets(afree, a, sa);
    auto offB_free = offsets(bfree, b, sb);
    // Reverse so the innermost shared axis varies fastest on both sides alike.
    std::vector<int> asp = asharedpos, bsp = bsharedpos;
    auto offA_sh = offsets(asp, a, sa);
    auto offB_sh = offsets(bsp, b, sb);

    for (std::size_t ia = 0; ia < nfreeA; ++ia) {
        for (std::size_t ib = 0; ib < nfreeB; ++ib) {
            Complex acc(0);
            for (std::size_t k = 0; k < nsh; ++k)
                acc += a.data[offA_free[ia] + offA_sh[k]] * b.data[offB_free[ib] + offB_sh[k]];
            r.data[ia * nfreeB + ib] = acc;
        }
    }
    return r;
}

// Node tensor in the stored slot order; every slot carries a head-type (+m)
// index, coordinate idx in [0, 2j] with m = j - idx.
inline AxTensor node_tensor(const SpinNetwork& sn, int n) {
    const auto& slots = sn.graph.ordering[(size_t)n];
    AxTensor t;
    std::vector<HalfInt> js;
    for (int li : slots) {
        t.axes.push_back(li);
        t.dims.push_back(sn.spins[(size_t)li].dim());
        js.push_back(sn.spins[(size_t)li]);
    }
    t.data.assign(t.size(), Complex(0));
    int v = (int)slots.size();
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        std::vector<int> idx((size_t)v, 0);
        std::size_t rem = flat;
        for (int i = v - 1; i >= 0; --i) {
            idx[(size_t)i] = (int)(rem % (std::size_t)t.dims[(size_t)i]);
            rem /= (std::size_t)t.dims[(size_t)i];
        }
        std::vector<HalfInt> m;
        for (int i = 0; i < v; ++i) m.push_back(mag_of_index(js[(size_t)i], idx[(size_t)i]));
        double val = 0;
        switch (v) {
            case 1:
                val = 1.0;  // spin 0 enforced by validation
                break;
            case 2:
                if ((m[0] + m[1]).twice() == 0) val = parity_sign(js[0] - m[0]);
                break;
            case 3:
                val = three_jm_d(js[0], m[0], js[1], m[1], js[2], m[2]);
                break;
            case 4:
                val = four_jm(js[0], js[1], js[2], js[3], m[0], m[1], m[2], m[3],
                              sn.intertwiners[(size_t)n]);
                break;
            default:
                throw std::invalid_argument("node_tensor: unsupported valence");
        }
        t.data[flat] = Complex(val);
    }
    return t;
}

// Applies the link matrix of g to the source attachment axis of t:
//   new_t(.., mt ..) = sum_a D^j_{mt, -a}(g) (-1)^{j+a} t(.., a ..).
inline AxTensor absorb_link(const AxTensor& t, int axis_pos, HalfInt j, const CMat& D) {
    AxTensor r = t;
    int d = j.dim();
    std::size_t inner = 1, outer = 1;
    for (int i = axis_pos + 1; i < (int)t.dims.size(); ++i) inner *= (std::size_t)t.dims[(size_t)i];
    for (int i = 0; i < axis_pos; ++i) outer *= (std::size_t)t.dims[(size_t)i];
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t in = 0; in < inner; ++in) {
            std::vector<Complex> col((size_t)d);
            for (int x = 0; x < d; ++x)
                col[(size_t)x] = t.data[(o * (std::size_t)d + (std::size_t)x) * inner + in];
            for (int xt = 0; xt < d; ++xt) {
                HalfInt mt = mag_of_index(j, xt);
                Complex acc(0);
                for (int xs = 0; xs < d; ++xs) {
                    HalfInt a = mag_of_index(j, xs);
                    if (!HalfInt::magnetic_ok(j, -a)) continue;
                    double ph = parity_sign(j + a);
                    acc += D.at(mag_index(j, mt), mag_index(j, -a)) * ph * col[(size_t)xs];
                }
                r.data[(o * (std::size_t)d + (std::size_t)xt) * inner + in] = acc;
            }
        }
    return r;
}

}  // namespace detail

// Evaluates the spin-network wavefunction at the given holonomy assignment:
// one Wigner matrix per link, a coupling tensor per node, outgoing links
// entering with lowered index and metric phase, all magnetic indices summed.
inline Complex wavefunction_eval(const SpinNetwork& sn,
                                 const std::vector<SU2Element>& assignment) {
    auto rep = validate_spin_network(sn);
    if (!rep.valid())
        throw std::invalid_argument("wavefunction_eval: invalid network: " + rep.problems[0]);
    if ((int)assignment.size() != (int)sn.graph.links.size())
        throw std::invalid_argument("wavefunction_eval: assignment size mismatch");

    std::vector<detail::AxTensor> parts;
    for (int n = 0; n < sn.graph.node_count; ++n) {
        detail::AxTensor t = detail::node_tensor(sn, n);
        // Absorb each link matrix into its source attachment at this node.
        const auto& slots = sn.graph.ordering[(size_t)n];
        std::vector<int> seen;
        for (int i = 0; i < (int)slots.size(); ++i) {
            int li = slots[(size_t)i];
            int occ = (int)std::count(seen.begin(), seen.end(), li);
            seen.push_back(li);
            if (!detail::attachment_is_head(sn.graph, n, li, occ)) {
                CMat D = wigner_D(sn.spins[(size_t)li], assignment[(size_t)li]);
                t = detail::absorb_link(t, i, sn.spins[(size_t)li], D);
            }
        }
        parts.push_back(detail::trace_repeated(t));
    }
    // Greedy pairwise contraction: merge the pair sharing the most axes.
    while (parts.size() > 1) {
        int bi = 0, bj = 1, best = -1;
        for (int i = 0; i < (int)parts.size(); ++i)
            for (int j = i + 1; j < (int)parts.size(); ++j) {
                int s = 0;
                for (int ax : parts[(size_t)i].axes)
                    if (std::find(parts[(size_t)j].axes.begin(), parts[(size_t)j].axes.end(),
                                  ax) != parts[(size_t)j].axes.end())
                        ++s;
                if (s > best) {
                    best = s;
                    bi = i;
                    bj = j;
                }
            }
        detail::AxTensor merged =
            detail::trace_repeated(detail::contract(parts[(size_t)bi], parts[(size_t)bj]));
        parts.erase(parts.begin() + bj);
        parts[(size_t)bi] = merged;
    }
    if (!parts[0].axes.empty()) throw std::logic_error("wavefunction_eval: open indices remain");
    return parts[0].data[0];
}

// Gauge transform of a holonomy assignment: g_l -> u_{target} g_l u_{source}^{-1}.
inline std::vector<SU2Element> gauge_transform(const SpinNetwork& sn,
                                               const std::vector<SU2Element>& assignment,
                                               const std::vector<SU2Element>& u) {
    std::vector<SU2Element> out;
    for (int li = 0; li < (int)sn.graph.links.size(); ++li) {
        const auto& l = sn.graph.links[(size_t)li];
        out.push_back(u[(size_t)l.dst] * assignment[(size_t)li] * u[(size_t)l.src].inverse());
    }
    return out;
}

// Area prefactor unit and Immirzi parameter.
struct GeometrySpec {
    double gamma = 1.0;
    double lp2 = 1.0;  // the combined area unit multiplying sqrt(j(j+1))
};

inline double area_eigenvalue(HalfInt j, const GeometrySpec& geo) {
    double x = j.to_double();
    return geo.lp2 * std::sqrt(x * (x + 1.0));
}

inline double angle_eigenvalue(HalfInt iota) {
    double x = iota.to_double();
    return x * (x + 1.0);
}

namespace detail {

// Cyclic Jacobi eigensolver for a hermitian matrix; returns eigenvalues
// ascending. Sufficient for the small intertwiner-space matrices here.
inline std::vector<double> jacobi_hermitian(std::vector<std::vector<Complex>> h) {
    int n = (int)h.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(h[(size_t)p][(size_t)q]);
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Complex hpq = h[(size_t)p][(size_t)q];
                if (std::abs(hpq) < 1e-300) continue;
                double app = std::real(h[(size_t)p][(size_t)p]);
                double aqq = std::real(h[(size_t)q][(size_t)q]);
                // Unitary 2x2 rotation diagonalizing the (p,q) block.
                double theta = 0.5 * std::atan2(2.0 * std::abs(hpq), aqq - app);
                Complex phase = hpq / std::abs(hpq);
                double c = std::cos(theta), s = std::sin(theta);
                // Columns: v_p -> c v_p - s conj(phase) v_q ; v_q -> s phase v_p + c v_q
                for (int k = 0; k < n; ++k) {
                    Complex hkp = h[(size_t)k][(size_t)p], hkq = h[(size_t)k][(size_t)q];
                    h[(size_t)k][(size_t)p] = c * hkp - s * std::conj(phase) * hkq;
                    h[(size_t)k][(size_t)q] = s * phase * hkp + c * hkq;
                }
                for (int k = 0; k < n; ++k) {
                    Complex hpk = h[(size_t)p][(size_t)k], hqk = h[(size_t)q][(size_t)k];
                    h[(size_t)p][(size_t)k] = c * hpk - s * phase * hqk;
                    h[(size_t)q][(size_t)k] = s * std::conj(phase) * hpk + c * hqk;
                }
            }
    }
    std::vector<double> eig;
    for (int i = 0; i < n; ++i) eig.push_back(std::real(h[(size_t)i][(size_t)i]));
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Applies the angular-momentum generator (axis 0,1,2 = x,y,z) on tensor leg
// `leg` of a state on the magnetic product basis of spins js.
inline std::vector<Complex> apply_generator(const std::vector<Complex>& v,
                                            const std::vector<HalfInt>& js, int leg, int axis) {
    std::vector<int> dims;
    for (auto j : js) dims.push_back(j.dim());
    std::vector<Complex> out(v.size(), Complex(0));
    std::size_t inner = 1, outer = 1;
    for (int i = leg + 1; i < (int)dims.size(); ++i) inner *= (std::size_t)dims[(size_t)i];
    for (int i = 0; i < leg; ++i) outer *= (std::size_t)dims[(size_t)i];
    HalfInt j = js[(size_t)leg];
    int d = j.dim();
    double jj = j.to_double();
    for (std::size_t o = 0; o < outer; ++o)
        for (int x = 0; x < d; ++x) {
            HalfInt m = mag_of_index(j, x);
            double mm = m.to_double();
            for (std::size_t in = 0; in < inner; ++in) {
                Complex amp = v[(o * (std::size_t)d + (std::size_t)x) * inner + in];
                if (amp == Complex(0)) continue;
                auto put = [&](int xi, Complex c) {
                    out[(o * (std::size_t)d + (std::size_t)xi) * inner + in] += c;
                };
                double cup = std::sqrt(jj * (jj + 1.0) - mm * (mm + 1.0));    // J+ amplitude
                double cdown = std::sqrt(jj * (jj + 1.0) - mm * (mm - 1.0));  // J- amplitude
                switch (axis) {
                    case 0:  // Jx = (J+ + J-)/2
                        if (x > 0) put(x - 1, 0.5 * cup * amp);
                        if (x < d - 1) put(x + 1, 0.5 * cdown * amp);
                        break;
                    case 1:  // Jy = (J+ - J-)/(2i)
                        if (x > 0) put(x - 1, Complex(0, -0.5) * cup * amp);
                        if (x < d - 1) put(x + 1, Complex(0, 0.5) * cdown * amp);
                        break;
                    default:  // Jz
                        put(x, mm * amp);
                }
            }
        }
    return out;
}

}  // namespace detail

// Volume operator data at a 4-valent node: the triple-product matrix
// Q = J1 . (J2 x J3) in the orthonormal intertwiner basis, its eigenvalues,
// and the volume spectrum c_V sqrt(|q|) with c_V = (sqrt(2)/3) lp2^{3/2}.
struct VolumeResult {
    std::vector<HalfInt> basis;               // intertwiner labels
    std::vector<std::vector<Complex>> Q;      // hermitian, traceless
    std::vector<double> q_eigenvalues;        // ascending
    std::vector<double> volumes;              // c_V sqrt(|q|), same order
};

inline VolumeResult volume_matrix(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4,
                                  const GeometrySpec& geo) {
    HalfInt lo, hi;
    if (!four_jm_range(j1, j2, j3, j4, lo, hi))
        throw std::invalid_argument("volume_matrix: empty intertwiner range");
    VolumeResult res;
    for (int t = lo.twice(); t <= hi.twice(); t += 2) res.basis.push_back(HalfInt::from_twice(t));

    std::vector<HalfInt> js{j1, j2, j3, j4};
    std::size_t dim = 1;
    for (auto j : js) dim *= (std::size_t)j.dim();
    // Orthonormal intertwiner vectors sqrt(2 iota + 1) * 4jm on the magnetic basis.
    std::vector<std::vector<Complex>> w;
    for (HalfInt iota : res.basis) {
        std::vector<Complex> v(dim, Complex(0));
        std::vector<int> idx(4, 0);
        for (std::size_t flat = 0; flat < dim; ++flat) {
            std::size_t r = flat;
            for (int i = 3; i >= 0; --i) {
                idx[(size_t)i] = (int)(r % (std::size_t)js[(size_t)i].dim());
                r /= (std::size_t)js[(size_t)i].dim();
            }
            double x = four_jm(js[0], js[1], js[2], js[3], mag_of_index(js[0], idx[0]),
                               mag_of_index(js[1], idx[1]), mag_of_index(js[2], idx[2]),
                               mag_of_index(js[3], idx[3]), iota);
            v[flat] = std::sqrt((double)iota.dim()) * x;
        }
        w.push_back(std::move(v));
    }
    // Q w = sum_{abc} eps_{abc} J1^a J2^b J3^c w.
    static const int eps[6][4] = {{0, 1, 2, 1},  {1, 2, 0, 1}, {2, 0, 1, 1},
                                  {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    std::vector<std::vector<Complex>> Qw;
    for (const auto& v : w) {
        std::vector<Complex> acc(dim, Complex(0));
        for (const auto& e : eps) {
            auto t = detail::apply_generator(v, js, 2, e[2]);
            t = detail::apply_generator(t, js, 1, e[1]);
            t = detail::apply_generator(t, js, 0, e[0]);
            for (std::size_t i = 0; i < dim; ++i) acc[i] += (double)e[3] * t[i];
        }
        Qw.push_back(std::move(acc));
    }
    int n = (int)res.basis.size();
    res.Q.assign((size_t)n, std::vector<Complex>((size_t)n, Complex(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Complex s(0);
            for (std::size_t i = 0; i < dim; ++i)
                s += std::conj(w[(size_t)a][i]) * Qw[(size_t)b][i];
            res.Q[(size_t)a][(size_t)b] = s;
        }
    res.q_eigenvalues = detail::jacobi_hermitian(res.Q);
    double cv = (std::sqrt(2.0) / 3.0) * std::pow(geo.lp2, 1.5);
    for (double q : res.q_eigenvalues) res.volumes.push_back(cv * std::sqrt(std::abs(q)));
    return res;
}

}  // namespace foamkit
