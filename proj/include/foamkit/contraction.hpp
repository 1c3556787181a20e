#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "foamkit/half_int.hpp"
#include "foamkit/recoupling.hpp"

namespace foamkit {

// Closed 3-valent symbol graph. Each edge carries a spin and an orientation;
// its magnetic index enters the head node as +m and the tail node as -m, and
// the closed line contributes the metric phase (-1)^{j-m} to the sum. A node
// is a 3jm symbol over its three slots in order; a "+" node picks up the
// extra phase (-1)^{j1+j2+j3} relative to the default "-" node. Reversing an
// internal edge therefore multiplies the value by (-1)^{2j}.
struct SymbolEdge {
    int src = -1;  // tail node
    int dst = -1;  // head node
    HalfInt j;
};

struct SymbolNode {
    std::array<int, 3> slots{-1, -1, -1};  // edge ids, in 3jm argument order
    int sign = -1;                         // -1 default, +1 adds (-1)^{j1+j2+j3}
};

struct SymbolGraph {
    std::vector<SymbolNode> nodes;
    std::vector<SymbolEdge> edges;
    std::vector<HalfInt> free_loops;  // closed lines with no node: factor 2j+1 each

    int add_node(int sign = -1) {
        nodes.push_back(SymbolNode{{-1, -1, -1}, sign});
        return (int)nodes.size() - 1;
    }
    // Connects tail -> head, filling the next free slot on each node.
    int add_edge(int tail, int head, HalfInt j) {
        edges.push_back(SymbolEdge{tail, head, j});
        int id = (int)edges.size() - 1;
        attach(tail, id);
        attach(head, id);
        return id;
    }

private:
    void attach(int node, int edge) {
        for (auto& s : nodes[(size_t)node].slots)
            if (s < 0) {
                s = edge;
                return;
            }
        throw std::invalid_argument("SymbolGraph: node already 3-valent");
    }
};

namespace detail {

// Dense real tensor over a frontier of edge magnetic indices
// (index idx_e in [0, 2j], m_e = j - idx_e measured at the head).
struct Frontier {
    std::vector<int> edge_ids;
    std::vector<int> dims;
    std::vector<double> data{1.0};

    int pos_of(int edge) const {
        for (size_t i = 0; i < edge_ids.size(); ++i)
            if (edge_ids[i] == edge) return (int)i;
        return -1;
    }
    size_t total() const {
        size_t t = 1;
        for (int d : dims) t *= (size_t)d;
        return t;
    }
};

}  // namespace detail

// Evaluates the closed diagram by sequential node elimination. Every node slot
// must be filled and every edge must close on two distinct nodes.
inline double contract_symbol_graph(const SymbolGraph& g) {
    for (const auto& n : g.nodes)
        for (int s : n.slots)
            if (s < 0) throw std::invalid_argument("contract_symbol_graph: open slot");
    for (const auto& e : g.edges)
        if (e.src < 0 || e.dst < 0 || e.src == e.dst)
            throw std::invalid_argument("contract_symbol_graph: edge must join two distinct nodes");

    const int nn = (int)g.nodes.size();
    // Greedy elimination order: repeatedly take the node adding the fewest new
    // frontier edges. Keeps intermediate tensors small for the graphs at hand.
    std::vector<int> order;
    std::vector<bool> done((size_t)nn, false);
    std::vector<bool> seen(g.edges.size(), false);
    for (int step = 0; step < nn; ++step) {
        int best = -1, best_new = 4;
        for (int n = 0; n < nn; ++n) {
            if (done[(size_t)n]) continue;
            int fresh = 0;
            for (int e : g.nodes[(size_t)n].slots)
                if (!seen[(size_t)e]) ++fresh;
            if (fresh < best_new) {
                best_new = fresh;
                best = n;
            }
        }
        order.push_back(best);
        done[(size_t)best] = true;
        for (int e : g.nodes[(size_t)best].slots) seen[(size_t)e] = true;
    }

    std::vector<int> ends_done(g.edges.size(), 0);
    detail::Frontier f;
    for (int node_id : order) {
        const auto& node = g.nodes[(size_t)node_id];
        const size_t nold = f.edge_ids.size();  // old edges stay a prefix
        // Extend the frontier with this node's not-yet-seen edges.
        for (int e : node.slots)
            if (f.pos_of(e) < 0) {
                f.edge_ids.push_back(e);
                f.dims.push_back(g.edges[(size_t)e].j.dim());
            }
        size_t tot = f.total();
        std::vector<double> next(tot);
        std::vector<int> idx(f.dims.size(), 0);
        // Per-slot data for the 3jm lookup.
        std::array<int, 3> pos;
        std::array<HalfInt, 3> js;
        std::array<int, 3> dir;  // +1 head here, -1 tail here
        for (int s = 0; s < 3; ++s) {
            int e = node.slots[(size_t)s];
            pos[(size_t)s] = f.pos_of(e);
            js[(size_t)s] = g.edges[(size_t)e].j;
            dir[(size_t)s] = g.edges[(size_t)e].dst == node_id ? 1 : -1;
        }
        for (size_t flat = 0; flat < tot; ++flat) {
            // Decode multi-index.
            size_t rest = flat;
            for (int q = (int)f.dims.size() - 1; q >= 0; --q) {
                idx[(size_t)q] = (int)(rest % (size_t)f.dims[(size_t)q]);
                rest /= (size_t)f.dims[(size_t)q];
            }
            // The old tensor spans the first nold frontier axes.
            size_t old_flat = 0;
            for (size_t q = 0; q < nold; ++q)
                old_flat = old_flat * (size_t)f.dims[q] + (size_t)idx[q];
            double base = f.data[old_flat];
            if (base == 0.0) continue;
            HalfInt m[3];
            for (int s = 0; s < 3; ++s) {
                HalfInt mm = js[(size_t)s] - HalfInt(idx[(size_t)pos[(size_t)s]]);
                m[s] = dir[(size_t)s] > 0 ? mm : -mm;
            }
            double w = three_jm_d(js[0], m[0], js[1], m[1], js[2], m[2]);
            if (w == 0.0) continue;
            if (node.sign > 0) w *= parity_sign(js[0] + js[1] + js[2]);
            next[flat] = base * w;
        }
        f.data = std::move(next);

        // Close edges whose both endpoints are now processed: apply the
        // metric phase (-1)^{j-m} = (-1)^{idx} and sum the axis out.
        for (int e : node.slots) ++ends_done[(size_t)e];
        for (int s = 0; s < 3; ++s) {
            int e = node.slots[(size_t)s];
            if (ends_done[(size_t)e] != 2) continue;
            int p = f.pos_of(e);
            int d = f.dims[(size_t)p];
            size_t after = 1;
            for (size_t q = (size_t)p + 1; q < f.dims.size(); ++q) after *= (size_t)f.dims[q];
            size_t before = f.data.size() / ((size_t)d * after);
            std::vector<double> reduced(before * after, 0.0);
            for (size_t b = 0; b < before; ++b)
                for (int k = 0; k < d; ++k) {
                    double ph = (k % 2 == 0) ? 1.0 : -1.0;
                    const double* srcp = f.data.data() + ((b * (size_t)d) + (size_t)k) * after;
                    double* dstp = reduced.data() + b * after;
                    for (size_t a2 = 0; a2 < after; ++a2) dstp[a2] += ph * srcp[a2];
                }
            f.data = std::move(reduced);
            f.edge_ids.erase(f.edge_ids.begin() + p);
            f.dims.erase(f.dims.begin() + p);
        }
    }
    if (f.data.size() != 1) throw std::logic_error("contract_symbol_graph: graph not closed");
    double value = f.data[0];
    for (HalfInt j : g.free_loops) value *= (double)j.dim();
    return value;
}

enum class FifteenJConvention { reducedGraph, ooguri };

// Builds the 15j diagram for the chosen convention.
//
// reducedGraph: the complete graph on five 4-valent intertwiners, each split
// into two 3-valent nodes through an internal spin. Arguments: links[10] in
// the order (j12 j13 j14 j15 j23 j24 j25 j34 j35 j45) where j_ab joins
// intertwiner a to b, then inter[5] = the five internal (intertwiner) spins.
// At intertwiner a the coupling pairs the two lowest-numbered neighbours
// against the two highest. Link j_ab is oriented b -> a for a < b; internal
// lines run from the (pair-34) half-node to the (pair-12) half-node.
//
// ooguri: the pentagonal-ring diagram: ten 3-valent nodes N1..N10 joined in a
// cycle by ring spins l1..l10 (l_i : N_i -> N_{i+1}) with five chords
// j_a : N_a -> N_{a+5}. Arguments: links[10] = l1..l10, inter[5] = j1..j5.
inline SymbolGraph fifteen_j_graph(const std::array<HalfInt, 10>& links,
                                   const std::array<HalfInt, 5>& inter,
                                   FifteenJConvention conv) {
    SymbolGraph g;
    if (conv == FifteenJConvention::reducedGraph) {
        // Half-nodes: A[a] couples the two lowest-numbered neighbours of a,
        // B[a] the two highest. Slot order: (link, link, internal) on A and
        // (internal, link, link) on B, matching the intertwiner definition
        //   sum_m (-1)^{i-m} (j1 j2 i; m1 m2 m)(i j3 j4; -m m3 m4).
        int A[5], B[5];
        for (int a = 0; a < 5; ++a) {
            A[a] = g.add_node();
            B[a] = g.add_node();
        }
        auto link_index = [](int a, int b) {  // a < b, both 0-based
            static const int base[4] = {0, 4, 7, 9};
            return base[a] + (b - a - 1);
        };
        // Pre-create all edges, then fill slots manually in 3jm order.
        std::vector<int> link_edge(10, -1);
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                int li = link_index(a, b);
                // Decide which half-node of each endpoint this link touches:
                // at node a the neighbours in increasing order are
                // {0..4}\{a}; the first two go to A[a], the last two to B[a].
                g.edges.push_back(SymbolEdge{-1, -1, links[(size_t)li]});
                link_edge[(size_t)li] = (int)g.edges.size() - 1;
            }
        std::vector<int> internal_edge(5, -1);
        for (int a = 0; a < 5; ++a) {
            g.edges.push_back(SymbolEdge{B[a], A[a], inter[(size_t)a]});
            internal_edge[(size_t)a] = (int)g.edges.size() - 1;
        }
        // Orientation of links: j_ab (a<b) runs b -> a (head at the lower
        // intertwiner). Fill node slots in 3jm argument order.
        for (int a = 0; a < 5; ++a) {
            std::vector<int> nbrs;
            for (int b = 0; b < 5; ++b)
                if (b != a) nbrs.push_back(b);
            std::array<int, 4> le;
            for (int q = 0; q < 4; ++q) {
                int b = nbrs[(size_t)q];
                int li = link_index(std::min(a, b), std::max(a, b));
                le[(size_t)q] = link_edge[(size_t)li];
                auto& ed = g.edges[(size_t)le[(size_t)q]];
                int half = (q < 2) ? A[a] : B[a];
                if (a < b)
                    ed.dst = half;  // head at the lower-numbered end
                else
                    ed.src = half;
            }
            g.nodes[(size_t)A[a]].slots = {le[0], le[1], internal_edge[(size_t)a]};
            g.nodes[(size_t)B[a]].slots = {internal_edge[(size_t)a], le[2], le[3]};
        }
    } else {
        int N[10];
        for (int i = 0; i < 10; ++i) N[i] = g.add_node();
        std::array<int, 10> ring;
        for (int i = 0; i < 10; ++i)
            ring[(size_t)i] = (int)g.edges.size(),
            g.edges.push_back(SymbolEdge{N[i], N[(i + 1) % 10], links[(size_t)i]});
        std::array<int, 5> chord;
        for (int a = 0; a < 5; ++a)
            chord[(size_t)a] = (int)g.edges.size(),
            g.edges.push_back(SymbolEdge{N[a], N[a + 5], inter[(size_t)a]});
        // Node N_i slots: incoming ring line, outgoing ring line, chord.
        for (int i = 0; i < 10; ++i) {
            int in_ring = ring[(size_t)((i + 9) % 10)];
            int out_ring = ring[(size_t)i];
            int ch = chord[(size_t)(i % 5)];
            g.nodes[(size_t)N[i]].slots = {in_ring, out_ring, ch};
        }
    }
    return g;
}

// 15j symbol in the requested convention, memoized on the raw argument list.
inline double fifteen_j(const std::array<HalfInt, 10>& links,
                        const std::array<HalfInt, 5>& inter, FifteenJConvention conv) {
    using Key = std::array<int, 16>;
    static std::unordered_map<Key, double, detail::ArrayHash<16>> cache;
    static std::mutex mu;
    Key key;
    key[0] = (int)conv;
    for (int i = 0; i < 10; ++i) key[(size_t)(1 + i)] = links[(size_t)i].twice();
    for (int i = 0; i < 5; ++i) key[(size_t)(11 + i)] = inter[(size_t)i].twice();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double v = contract_symbol_graph(fifteen_j_graph(links, inter, conv));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

}  // namespace foamkit
