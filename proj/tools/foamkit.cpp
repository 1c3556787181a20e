// foamkit: command-line front end for SU(2)/SL2(C) recoupling symbols,
// boost matrix elements, spin-network evaluation, and spin-foam amplitudes.
//
// Output is one JSON object per result line with a fixed key order and floats
// printed at 17 significant digits (--table switches to an aligned listing).
// Exit codes: 0 success, 2 validation error, 3 numerical-accuracy failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foamkit/network_format.hpp"
#include "foamkit/sl2c.hpp"
#include "foamkit/sl2c_recoupling.hpp"
#include "foamkit/symbol_cache.hpp"
#include "foamkit/vertex.hpp"

using namespace foamkit;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Cache record kinds.
constexpr std::uint8_t kKindSixJ = 4;
constexpr std::uint8_t kKindBoost = 7;
constexpr std::uint8_t kKindChi = 8;
constexpr std::uint8_t kKindB4 = 9;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Ordered key/value record; values are pre-encoded JSON fragments so the
// byte-level output is fully determined by insertion order.
struct Record {
    std::vector<std::pair<std::string, std::string>> kv;

    void str(const std::string& k, const std::string& v) {
        kv.emplace_back(k, "\"" + json_escape(v) + "\"");
    }
    void num(const std::string& k, double v) { kv.emplace_back(k, fmt17(v)); }
    void integer(const std::string& k, long v) { kv.emplace_back(k, std::to_string(v)); }
    void complex_val(const std::string& k, Complex v) {
        kv.emplace_back(k, "[" + fmt17(v.real()) + "," + fmt17(v.imag()) + "]");
    }
    void raw(const std::string& k, const std::string& jsonText) { kv.emplace_back(k, jsonText); }

    std::string json() const {
        std::string out = "{";
        for (std::size_t i = 0; i < kv.size(); ++i) {
            if (i) out += ",";
            out += "\"" + json_escape(kv[i].first) + "\":" + kv[i].second;
        }
        return out + "}";
    }
    std::string table() const {
        std::size_t w = 0;
        for (const auto& [k, v] : kv) w = std::max(w, k.size());
        std::string out;
        for (const auto& [k, v] : kv)
            out += k + std::string(w - k.size() + 2, ' ') + v + "\n";
        return out;
    }
};

struct Output {
    bool table = false;
    void emit(const Record& r) const { std::cout << (table ? r.table() : r.json() + "\n"); }
};

std::vector<HalfInt> parse_spins(const std::string& csv, std::size_t expect,
                                 const std::string& what) {
    std::vector<HalfInt> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_spin_literal(item));
    if (out.size() != expect)
        throw std::invalid_argument(what + ": expected " + std::to_string(expect) +
                                    " comma-separated spins, got " + std::to_string(out.size()));
    return out;
}

std::vector<double> parse_doubles(const std::string& csv, std::size_t expect,
                                  const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.size() != expect)
        throw std::invalid_argument(what + ": expected " + std::to_string(expect) +
                                    " comma-separated numbers, got " +
                                    std::to_string(out.size()));
    return out;
}

std::string spin_list_json(const std::vector<HalfInt>& js) {
    std::string out = "[";
    for (std::size_t i = 0; i < js.size(); ++i) {
        if (i) out += ",";
        out += "\"" + spin_literal(js[i]) + "\"";
    }
    return out + "]";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BoostMethod parse_method(const std::string& s) {
    if (s == "integral2") return BoostMethod::integral2;
    if (s == "hypergeometric") return BoostMethod::hypergeometric;
    if (s == "ruhl") return BoostMethod::ruhl;
    throw std::invalid_argument("unknown boost method '" + s + "'");
}

// Shared CLI state: output mode, optional cache, quadrature tolerance.
struct Context {
    Output out;
    std::string cache_dir;
    double tol = 1e-8;

    std::optional<SymbolCache>& cache() {
        if (!cache_opened_ && !cache_dir.empty()) {
            cache_.emplace(cache_dir);
            cache_opened_ = true;
            for (const auto& w : cache_->warnings()) std::cerr << "warning: " << w << "\n";
        }
        return cache_;
    }

    // Looks up `key`; on miss computes, stores, and returns. Bit-identical
    // doubles on re-read make warm runs byte-identical to cold ones.
    template <class F>
    Complex cached(const CacheKey& key, F&& compute) {
        auto& c = cache();
        if (c) {
            if (auto hit = c->lookup(key)) return *hit;
        }
        Complex v = compute();
        if (c) c->store(key, v);
        return v;
    }

private:
    std::optional<SymbolCache> cache_;
    bool cache_opened_ = false;
};

SpinNetwork load_network(const std::string& path, NetworkDocument* doc_out = nullptr) {
    NetworkDocument doc = parse_network_document(read_file(path));
    SpinNetwork sn = document_to_network(doc);
    auto rep = validate_spin_network(sn);
    if (!rep.valid()) {
        std::string msg = "invalid network '" + doc.name + "':";
        for (const auto& p : rep.problems) msg += "\n  " + p;
        throw std::invalid_argument(msg);
    }
    if (doc_out) *doc_out = doc;
    return sn;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SU(2)/SL2(C) recoupling symbols, boosts, and spin-foam amplitudes"};
    app.require_subcommand(1);

    Context ctx;
    if (const char* env = std::getenv("FOAMKIT_CACHE_DIR")) ctx.cache_dir = env;
    bool want_json = false;
    app.add_flag("--json", want_json, "JSON-lines output (default)");
    app.add_flag("--table", ctx.out.table, "aligned table output instead of JSON");
    app.add_option("--cache-dir", ctx.cache_dir,
                   "symbol cache directory (default: env FOAMKIT_CACHE_DIR)");
    app.add_option("--tol", ctx.tol, "quadrature self-convergence tolerance")
        ->capture_default_str();

    // ---- symbol ----------------------------------------------------------
    auto* symbol = app.add_subcommand("symbol", "recoupling symbols");
    symbol->require_subcommand(1);
    struct SymbolArgs {
        std::string j, m, iota, inter, convention = "reducedGraph";
    } sa;

    auto* cg = symbol->add_subcommand("cg", "Clebsch-Gordan coefficient <j1 m1 j2 m2|j m>");
    cg->add_option("--j", sa.j, "j1,j2,j")->required();
    cg->add_option("--m", sa.m, "m1,m2 (m = m1+m2)")->required();
    auto* w3j = symbol->add_subcommand("w3j", "Wigner 3jm symbol");
    w3j->add_option("--j", sa.j, "j1,j2,j3")->required();
    w3j->add_option("--m", sa.m, "m1,m2,m3")->required();
    auto* w4j = symbol->add_subcommand("w4j", "4jm symbol in the (12)(34) channel");
    w4j->add_option("--j", sa.j, "j1,j2,j3,j4")->required();
    w4j->add_option("--m", sa.m, "m1,m2,m3,m4")->required();
    w4j->add_option("--iota", sa.iota, "channel spin")->required();
    auto* w6j = symbol->add_subcommand("w6j", "Wigner 6j symbol");
    w6j->add_option("--j", sa.j, "j1,j2,j3,j4,j5,j6")->required();
    auto* w9j = symbol->add_subcommand("w9j", "Wigner 9j symbol");
    w9j->add_option("--j", sa.j, "nine spins, row-major")->required();
    auto* w15j = symbol->add_subcommand("w15j", "15j symbol of the 4-simplex graph");
    w15j->add_option("--j", sa.j, "j12,j13,j14,j15,j23,j24,j25,j34,j35,j45")->required();
    w15j->add_option("--inter", sa.inter, "five intertwiners")->required();
    w15j->add_option("--convention", sa.convention, "reducedGraph|ooguri")
        ->capture_default_str();

    // ---- wigner ----------------------------------------------------------
    auto* wigner = app.add_subcommand("wigner", "Wigner D matrix from Euler angles");
    struct WignerArgs {
        std::string j;
        double alpha = 0, beta = 0, gamma = 0;
    } wa;
    wigner->add_option("--j", wa.j, "spin")->required();
    wigner->add_option("--alpha", wa.alpha, "Euler angle alpha")->capture_default_str();
    wigner->add_option("--beta", wa.beta, "Euler angle beta")->capture_default_str();
    wigner->add_option("--gamma", wa.gamma, "Euler angle gamma")->capture_default_str();

    // ---- decompose -------------------------------------------------------
    auto* decompose = app.add_subcommand("decompose", "SL2(C) matrix decompositions");
    struct DecomposeArgs {
        std::string kind, matrix;
    } da;
    decompose->add_option("kind", da.kind, "polar|cartan|gauss|iwasawa")->required();
    decompose
        ->add_option("--matrix", da.matrix,
                     "a11re,a11im,a12re,a12im,a21re,a21im,a22re,a22im")
        ->required();

    // ---- boost -----------------------------------------------------------
    auto* boost = app.add_subcommand("boost", "principal-series boost matrix element");
    struct BoostArgs {
        double p = 0, r = 0;
        std::string k, j, l, m, method = "hypergeometric";
    } ba;
    boost->add_option("--p", ba.p, "continuous label")->required();
    boost->add_option("--k", ba.k, "discrete label")->required();
    boost->add_option("--j", ba.j, "row spin")->required();
    boost->add_option("--l", ba.l, "column spin")->required();
    boost->add_option("--m", ba.m, "magnetic index")->required();
    boost->add_option("--r", ba.r, "rapidity")->required();
    boost->add_option("--method", ba.method, "integral2|hypergeometric|ruhl")
        ->capture_default_str();

    // ---- chi -------------------------------------------------------------
    auto* chi_cmd = app.add_subcommand("chi", "SL2(C) Clebsch-Gordan reduced coefficient");
    struct ChiArgs {
        std::string p, k, j;
    } ca;
    chi_cmd->add_option("--p", ca.p, "p1,p2,p3")->required();
    chi_cmd->add_option("--k", ca.k, "k1,k2,k3")->required();
    chi_cmd->add_option("--j", ca.j, "j1,j2,j3")->required();

    // ---- eval ------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate a spin-network wavefunction");
    struct EvalArgs {
        std::string graph;
    } ea;
    eval->add_option("--graph", ea.graph, "network file")->required();

    // ---- vertex ----------------------------------------------------------
    auto* vertex = app.add_subcommand("vertex", "EPRL vertex amplitude of a 4-simplex graph");
    struct VertexArgs {
        std::string graph, fixed_node;
        double gamma = 1.0;
        int shells = 0;
        bool bf = false;
    } va;
    vertex->add_option("--graph", va.graph, "network file with 5 nodes / 10 links")
        ->required();
    vertex->add_option("--gamma", va.gamma, "Immirzi parameter")->capture_default_str();
    vertex->add_option("--shells", va.shells, "shell truncation Delta l")
        ->capture_default_str();
    vertex->add_option("--fixed-node", va.fixed_node, "gauge-fixed node id (default: first)");
    vertex->add_flag("--bf", va.bf, "BF reduction: bypass the boost integrals");

    // ---- foam ------------------------------------------------------------
    auto* foam_cmd = app.add_subcommand("foam", "spin-foam amplitude");
    struct FoamArgs {
        std::string foam;
        double gamma = 1.0, lp2 = 1.0;
        int shells = 0;
    } fa;
    foam_cmd->add_option("--foam", fa.foam, "foam file")->required();
    foam_cmd->add_option("--gamma", fa.gamma, "Immirzi parameter")->capture_default_str();
    foam_cmd->add_option("--lp2", fa.lp2, "area unit")->capture_default_str();
    foam_cmd->add_option("--shells", fa.shells, "shell truncation")->capture_default_str();

    // ---- cache -----------------------------------------------------------
    auto* cache_cmd = app.add_subcommand("cache", "symbol cache maintenance");
    cache_cmd->require_subcommand(1);
    auto* cache_stats = cache_cmd->add_subcommand("stats", "record counts per kind");
    auto* cache_clear = cache_cmd->add_subcommand("clear", "delete all cached records");

    // Let global flags (--cache-dir, --tol, --table, ...) appear after the
    // subcommand as well.
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        B4Options quad;
        quad.tol = ctx.tol;

        if (cg->parsed()) {
            auto j = parse_spins(sa.j, 3, "--j");
            auto m = parse_spins(sa.m, 2, "--m");
            Record r;
            r.str("symbol", "cg");
            r.raw("j", spin_list_json(j));
            r.raw("m", spin_list_json(m));
            r.num("value",
                  clebsch_gordan(j[0], m[0], j[1], m[1], j[2], m[0] + m[1]).to_double());
            ctx.out.emit(r);
        } else if (w3j->parsed()) {
            auto j = parse_spins(sa.j, 3, "--j");
            auto m = parse_spins(sa.m, 3, "--m");
            Record r;
            r.str("symbol", "w3j");
            r.raw("j", spin_list_json(j));
            r.raw("m", spin_list_json(m));
            r.num("value", three_jm_d(j[0], m[0], j[1], m[1], j[2], m[2]));
            ctx.out.emit(r);
        } else if (w4j->parsed()) {
            auto j = parse_spins(sa.j, 4, "--j");
            auto m = parse_spins(sa.m, 4, "--m");
            HalfInt iota = parse_spin_literal(sa.iota);
            Record r;
            r.str("symbol", "w4j");
            r.raw("j", spin_list_json(j));
            r.raw("m", spin_list_json(m));
            r.str("iota", spin_literal(iota));
            r.num("value", four_jm(j[0], j[1], j[2], j[3], m[0], m[1], m[2], m[3], iota));
            ctx.out.emit(r);
        } else if (w6j->parsed()) {
            auto j = parse_spins(sa.j, 6, "--j");
            CacheKey key{kKindSixJ, {}, {}};
            for (auto s : j) key.spins.push_back(s.twice());
            double v = ctx.cached(key, [&] {
                             return Complex(six_j(j[0], j[1], j[2], j[3], j[4], j[5]));
                         }).real();
            Record r;
            r.str("symbol", "w6j");
            r.raw("j", spin_list_json(j));
            r.num("value", v);
            ctx.out.emit(r);
        } else if (w9j->parsed()) {
            auto j = parse_spins(sa.j, 9, "--j");
            Record r;
            r.str("symbol", "w9j");
            r.raw("j", spin_list_json(j));
            r.num("value", nine_j(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]));
            ctx.out.emit(r);
        } else if (w15j->parsed()) {
            auto j = parse_spins(sa.j, 10, "--j");
            auto it = parse_spins(sa.inter, 5, "--inter");
            FifteenJConvention conv;
            if (sa.convention == "reducedGraph")
                conv = FifteenJConvention::reducedGraph;
            else if (sa.convention == "ooguri")
                conv = FifteenJConvention::ooguri;
            else
                throw std::invalid_argument("unknown convention '" + sa.convention + "'");
            std::array<HalfInt, 10> links;
            std::array<HalfInt, 5> inter;
            std::copy(j.begin(), j.end(), links.begin());
            std::copy(it.begin(), it.end(), inter.begin());
            Record r;
            r.str("symbol", "w15j");
            r.raw("j", spin_list_json(j));
            r.raw("inter", spin_list_json(it));
            r.str("convention", sa.convention);
            r.num("value", fifteen_j(links, inter, conv));
            ctx.out.emit(r);
        } else if (wigner->parsed()) {
            HalfInt j = parse_spin_literal(wa.j);
            SU2Element u = su2_from_euler({wa.alpha, wa.beta, wa.gamma});
            CMat D = wigner_D(j, u);
            std::string rows = "[";
            for (int a = 0; a < j.dim(); ++a) {
                if (a) rows += ",";
                rows += "[";
                for (int b = 0; b < j.dim(); ++b) {
                    if (b) rows += ",";
                    Complex v = D.at(a, b);
                    rows += "[" + fmt17(v.real()) + "," + fmt17(v.imag()) + "]";
                }
                rows += "]";
            }
            rows += "]";
            Record r;
            r.str("j", spin_literal(j));
            r.num("alpha", wa.alpha);
            r.num("beta", wa.beta);
            r.num("gamma", wa.gamma);
            r.raw("matrix", rows);
            ctx.out.emit(r);
        } else if (decompose->parsed()) {
            auto v = parse_doubles(da.matrix, 8, "--matrix");
            Matrix2 m{Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]),
                      Complex(v[6], v[7])};
            Record r;
            r.str("kind", da.kind);
            if (da.kind == "polar") {
                PolarFactors f = polar_decompose(m);
                r.complex_val("h11", f.h.a11);
                r.complex_val("h12", f.h.a12);
                r.complex_val("h21", f.h.a21);
                r.complex_val("h22", f.h.a22);
                r.complex_val("u11", f.u.a11);
                r.complex_val("u12", f.u.a12);
                r.complex_val("u21", f.u.a21);
                r.complex_val("u22", f.u.a22);
            } else {
                SL2CElement g = SL2CElement::project(m);
                if (da.kind == "cartan") {
                    CartanFactors f = cartan_decompose(g);
                    r.complex_val("u11", f.u.matrix().a11);
                    r.complex_val("u21", f.u.matrix().a21);
                    r.num("r", f.r);
                    r.complex_val("v11", f.v.matrix().a11);
                    r.complex_val("v21", f.v.matrix().a21);
                } else if (da.kind == "gauss") {
                    GaussFactors f = gauss_decompose(g);
                    r.complex_val("mu_plus", f.mu_plus);
                    r.complex_val("delta", f.delta);
                    r.complex_val("mu_minus", f.mu_minus);
                } else if (da.kind == "iwasawa") {
                    IwasawaFactors f = iwasawa_decompose(g);
                    r.complex_val("z", f.z);
                    r.num("lambda", f.lambda);
                    r.complex_val("u11", f.u.matrix().a11);
                    r.complex_val("u21", f.u.matrix().a21);
                } else {
                    throw std::invalid_argument("unknown decomposition '" + da.kind + "'");
                }
            }
            ctx.out.emit(r);
        } else if (boost->parsed()) {
            PrincipalLabel lab{ba.p, parse_spin_literal(ba.k)};
            HalfInt j = parse_spin_literal(ba.j), l = parse_spin_literal(ba.l),
                    m = parse_spin_literal(ba.m);
            CacheKey key{kKindBoost,
                         {lab.k.twice(), j.twice(), l.twice(), m.twice(),
                          (std::int32_t)(ba.method == "integral2"   ? 0
                                         : ba.method == "hypergeometric" ? 1
                                                                         : 2)},
                         {ba.p, ba.r}};
            Complex v = ctx.cached(
                key, [&] { return boost_d(lab, j, l, m, ba.r, parse_method(ba.method)); });
            Record r;
            r.num("p", ba.p);
            r.str("k", spin_literal(lab.k));
            r.str("j", spin_literal(j));
            r.str("l", spin_literal(l));
            r.str("m", spin_literal(m));
            r.num("r", ba.r);
            r.str("method", ba.method);
            r.complex_val("value", v);
            ctx.out.emit(r);
        } else if (chi_cmd->parsed()) {
            auto p = parse_doubles(ca.p, 3, "--p");
            auto k = parse_spins(ca.k, 3, "--k");
            auto j = parse_spins(ca.j, 3, "--j");
            CacheKey key{kKindChi,
                         {k[0].twice(), k[1].twice(), k[2].twice(), j[0].twice(),
                          j[1].twice(), j[2].twice()},
                         {p[0], p[1], p[2]}};
            Complex v = ctx.cached(key, [&] {
                return chi(p[0], p[1], p[2], k[0], k[1], k[2], j[0], j[1], j[2]);
            });
            Record r;
            r.raw("p", "[" + fmt17(p[0]) + "," + fmt17(p[1]) + "," + fmt17(p[2]) + "]");
            r.raw("k", spin_list_json(k));
            r.raw("j", spin_list_json(j));
            r.complex_val("value", v);
            ctx.out.emit(r);
        } else if (eval->parsed()) {
            NetworkDocument doc;
            SpinNetwork sn = load_network(ea.graph, &doc);
            Complex v =
                wavefunction_eval(sn, std::vector<SU2Element>(sn.graph.links.size()));
            Record r;
            r.str("network", doc.name);
            r.integer("nodes", sn.graph.node_count);
            r.integer("links", (long)sn.graph.links.size());
            r.complex_val("value", v);
            ctx.out.emit(r);
        } else if (vertex->parsed()) {
            NetworkDocument doc;
            SpinNetwork sn = load_network(va.graph, &doc);
            int fixed = 0;
            if (!va.fixed_node.empty()) {
                auto it = std::find(doc.nodes.begin(), doc.nodes.end(), va.fixed_node);
                if (it == doc.nodes.end())
                    throw std::invalid_argument("unknown node '" + va.fixed_node + "'");
                fixed = (int)(it - doc.nodes.begin());
            }
            B4Provider provider;
            if (ctx.cache()) {
                provider = [&](const std::array<HalfInt, 4>& j,
                               const std::array<HalfInt, 4>& l, HalfInt iota, HalfInt kappa,
                               double gamma) {
                    CacheKey key{kKindB4,
                                 {j[0].twice(), j[1].twice(), j[2].twice(), j[3].twice(),
                                  l[0].twice(), l[1].twice(), l[2].twice(), l[3].twice(),
                                  iota.twice(), kappa.twice()},
                                 {gamma, ctx.tol}};
                    return ctx.cached(key, [&] {
                                  return Complex(booster_b4(j, l, iota, kappa, gamma, quad));
                              })
                        .real();
                };
            }
            EprlResult res = eprl_vertex(sn, va.gamma, va.shells, fixed, va.bf, quad, provider);
            Record r;
            r.str("network", doc.name);
            r.num("gamma", va.gamma);
            r.integer("shells", va.shells);
            r.str("fixed_node", doc.nodes[(size_t)fixed]);
            r.integer("bf", va.bf ? 1 : 0);
            r.num("amplitude", res.amplitude);
            std::string sums = "[";
            for (std::size_t i = 0; i < res.shell_sums.size(); ++i) {
                if (i) sums += ",";
                sums += fmt17(res.shell_sums[i]);
            }
            r.raw("shell_sums", sums + "]");
            ctx.out.emit(r);
        } else if (foam_cmd->parsed()) {
            FoamDocument doc = parse_foam_document(read_file(fa.foam));
            SpinFoam foam = document_to_foam(doc);
            auto rep = validate_spin_foam(foam);
            if (!rep.valid()) {
                std::string msg = "invalid foam '" + doc.name + "':";
                for (const auto& p : rep.problems) msg += "\n  " + p;
                throw std::invalid_argument(msg);
            }
            GeometrySpec geo{fa.gamma, fa.lp2};
            double amp = foam_amplitude(foam, geo, fa.shells, quad);
            Record r;
            r.str("foam", doc.name);
            r.num("gamma", fa.gamma);
            r.integer("shells", fa.shells);
            r.num("amplitude", amp);
            ctx.out.emit(r);
        } else if (cache_stats->parsed()) {
            if (ctx.cache_dir.empty())
                throw std::invalid_argument("cache stats: no cache directory configured");
            auto& c = ctx.cache();
            Record r;
            r.str("cache_dir", ctx.cache_dir);
            r.integer("records", (long)c->size());
            std::string per = "{";
            bool first = true;
            for (const auto& [kind, count] : c->stats()) {
                if (!first) per += ",";
                first = false;
                per += "\"" + std::to_string(kind) + "\":" + std::to_string(count);
            }
            r.raw("per_kind", per + "}");
            ctx.out.emit(r);
        } else if (cache_clear->parsed()) {
            if (ctx.cache_dir.empty())
                throw std::invalid_argument("cache clear: no cache directory configured");
            auto& c = ctx.cache();
            long n = (long)c->size();
            c->clear();
            Record r;
            r.str("cache_dir", ctx.cache_dir);
            r.integer("removed", n);
            ctx.out.emit(r);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
