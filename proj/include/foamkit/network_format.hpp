#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "foamkit/spin_network.hpp"
#include "foamkit/vertex.hpp"

namespace foamkit {

// Parse failure with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Line-oriented document for a spin network:
//   network NAME
//   node ID
//   link ID SRC DST spin S
//   order NODE L1 L2 L3 L4
//   intertwiner NODE S
// '#' starts a comment; spins are integers or twice-odd halves written t/2.
struct NetworkDocument {
    struct LinkDecl {
        std::string id, src, dst;
        HalfInt spin;
    };
    std::string name;
    std::vector<std::string> nodes;  // declaration order
    std::vector<LinkDecl> links;     // declaration order
    std::map<std::string, std::vector<std::string>> order;  // node -> incident link ids
    std::map<std::string, HalfInt> intertwiner;             // node -> channel spin
};

// "3/2" -> twice 3; "2" -> twice 4. Throws std::invalid_argument on anything else.
inline HalfInt parse_spin_literal(const std::string& s) {
    auto digits = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit((unsigned char)t[i])) return false;
        return true;
    };
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        if (!digits(s)) throw std::invalid_argument("malformed spin literal '" + s + "'");
        return HalfInt(std::stoi(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || den != "2")
        throw std::invalid_argument("malformed spin literal '" + s + "'");
    return HalfInt::from_twice(std::stoi(num));
}

inline std::string spin_literal(HalfInt j) {
    if (j.is_integer()) return std::to_string(j.to_int());
    return std::to_string(j.twice()) + "/2";
}

inline NetworkDocument parse_network_document(const std::string& text) {
    NetworkDocument doc;
    bool have_name = false;
    std::map<std::string, int> node_line;  // id -> declaring line
    std::map<std::string, int> link_line;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> tok;
        std::vector<int> col;  // 1-based column of each token
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace((unsigned char)line[i])) {
                ++i;
                continue;
            }
            std::size_t b = i;
            while (i < line.size() && !std::isspace((unsigned char)line[i])) ++i;
            tok.push_back(line.substr(b, i - b));
            col.push_back((int)b + 1);
        }
        if (tok.empty()) continue;
        auto fail = [&](int t, const std::string& msg) -> ParseError {
            int c = (t < (int)col.size()) ? col[(size_t)t] : (int)line.size() + 1;
            return ParseError(lineno, c, msg);
        };
        auto want = [&](std::size_t n) {
            if (tok.size() != n)
                throw fail(0, "'" + tok[0] + "' expects " + std::to_string(n - 1) +
                                  " argument(s), got " + std::to_string(tok.size() - 1));
        };
        auto spin_at = [&](int t) {
            try {
                return parse_spin_literal(tok[(size_t)t]);
            } catch (const std::invalid_argument& e) {
                throw fail(t, e.what());
            }
        };
        auto known_node = [&](int t) {
            if (!node_line.count(tok[(size_t)t]))
                throw fail(t, "undeclared node '" + tok[(size_t)t] + "'");
            return tok[(size_t)t];
        };
        const std::string& kw = tok[0];
        if (kw == "network") {
            want(2);
            if (have_name) throw fail(0, "repeated network declaration");
            doc.name = tok[1];
            have_name = true;
        } else if (kw == "node") {
            want(2);
            auto it = node_line.find(tok[1]);
            if (it != node_line.end())
                throw fail(1, "duplicate node '" + tok[1] + "' (first declared on line " +
                                  std::to_string(it->second) + ")");
            node_line[tok[1]] = lineno;
            doc.nodes.push_back(tok[1]);
        } else if (kw == "link") {
            want(6);
            if (tok[4] != "spin") throw fail(4, "expected keyword 'spin'");
            auto it = link_line.find(tok[1]);
            if (it != link_line.end())
                throw fail(1, "duplicate link '" + tok[1] + "' (first declared on line " +
                                  std::to_string(it->second) + ")");
            link_line[tok[1]] = lineno;
            doc.links.push_back({tok[1], known_node(2), known_node(3), spin_at(5)});
        } else if (kw == "order") {
            if (tok.size() < 3) throw fail(0, "'order' expects a node and its link ids");
            std::string n = known_node(1);
            if (doc.order.count(n)) throw fail(1, "repeated order for node '" + n + "'");
            std::vector<std::string> ids;
            for (std::size_t t = 2; t < tok.size(); ++t) {
                if (!link_line.count(tok[t]))
                    throw fail((int)t, "undeclared link '" + tok[t] + "'");
                ids.push_back(tok[t]);
            }
            doc.order[n] = ids;
        } else if (kw == "intertwiner") {
            want(3);
            std::string n = known_node(1);
            if (doc.intertwiner.count(n))
                throw fail(1, "repeated intertwiner for node '" + n + "'");
            doc.intertwiner[n] = spin_at(2);
        } else {
            throw fail(0, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_name) throw ParseError(lineno ? lineno : 1, 1, "missing network declaration");
    return doc;
}

// Canonical text: name, nodes, links in declaration order, then order and
// intertwiner lines sorted by node id. parse(serialize(d)) reproduces d.
inline std::string serialize_network_document(const NetworkDocument& doc) {
    std::ostringstream out;
    out << "network " << doc.name << "\n";
    for (const auto& n : doc.nodes) out << "node " << n << "\n";
    for (const auto& l : doc.links)
        out << "link " << l.id << " " << l.src << " " << l.dst << " spin "
            << spin_literal(l.spin) << "\n";
    for (const auto& [n, ids] : doc.order) {
        out << "order " << n;
        for (const auto& id : ids) out << " " << id;
        out << "\n";
    }
    for (const auto& [n, s] : doc.intertwiner)
        out << "intertwiner " << n << " " << spin_literal(s) << "\n";
    return out.str();
}

// Instantiates the document with nodes and links numbered in declaration
// order. Explicit order lines override the default ordering; each must list
// the node's incident links exactly (self-loops twice, head first by
// position). Missing intertwiners default to 0.
inline SpinNetwork document_to_network(const NetworkDocument& doc) {
    SpinNetwork sn;
    std::map<std::string, int> nidx, lidx;
    for (const auto& n : doc.nodes) nidx[n] = (int)nidx.size();
    sn.graph.node_count = (int)doc.nodes.size();
    for (const auto& l : doc.links) {
        lidx[l.id] = (int)lidx.size();
        sn.graph.links.push_back({nidx.at(l.src), nidx.at(l.dst)});
        sn.spins.push_back(l.spin);
    }
    sn.graph.default_ordering();
    for (const auto& [n, ids] : doc.order) {
        int ni = nidx.at(n);
        std::vector<int> want = sn.graph.ordering[(size_t)ni];  // multiset to match
        std::vector<int> got;
        for (const auto& id : ids) got.push_back(lidx.at(id));
        std::vector<int> a = want, b = got;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw std::invalid_argument("order for node '" + n +
                                        "' is not a permutation of its incident links");
        sn.graph.ordering[(size_t)ni] = got;
    }
    sn.intertwiners.assign((size_t)sn.graph.node_count, HalfInt(0));
    for (const auto& [n, s] : doc.intertwiner) sn.intertwiners[(size_t)nidx.at(n)] = s;
    return sn;
}

// Line-oriented document for a spin foam:
//   foam NAME
//   vertices N
//   edge ID SRC DST intertwiner S    (SRC/DST: vertex number, or '-' for a
//                                     boundary/dangling endpoint)
//   face ID spin S E1 E2 ...         (cyclic chain of edge ids)
// '#' comments and spin literals as in the network format.
struct FoamDocument {
    struct EdgeDecl {
        std::string id;
        int src = -1, dst = -1;  // -1 encodes a boundary endpoint
        HalfInt intertwiner;
    };
    struct FaceDecl {
        std::string id;
        HalfInt spin;
        std::vector<std::string> edges;
    };
    std::string name;
    int vertex_count = 0;
    std::vector<EdgeDecl> edges;
    std::vector<FaceDecl> faces;
};

inline FoamDocument parse_foam_document(const std::string& text) {
    FoamDocument doc;
    bool have_name = false, have_vertices = false;
    std::map<std::string, int> edge_line, face_line;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> tok;
        std::vector<int> col;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace((unsigned char)line[i])) {
                ++i;
                continue;
            }
            std::size_t b = i;
            while (i < line.size() && !std::isspace((unsigned char)line[i])) ++i;
            tok.push_back(line.substr(b, i - b));
            col.push_back((int)b + 1);
        }
        if (tok.empty()) continue;
        auto fail = [&](int t, const std::string& msg) -> ParseError {
            int c = (t < (int)col.size()) ? col[(size_t)t] : (int)line.size() + 1;
            return ParseError(lineno, c, msg);
        };
        auto spin_at = [&](int t) {
            try {
                return parse_spin_literal(tok[(size_t)t]);
            } catch (const std::invalid_argument& e) {
                throw fail(t, e.what());
            }
        };
        auto endpoint = [&](int t) {
            if (tok[(size_t)t] == "-") return -1;
            for (char c : tok[(size_t)t])
                if (!std::isdigit((unsigned char)c))
                    throw fail(t, "malformed vertex '" + tok[(size_t)t] + "'");
            int v = std::stoi(tok[(size_t)t]);
            if (v >= doc.vertex_count)
                throw fail(t, "vertex " + tok[(size_t)t] + " out of range");
            return v;
        };
        const std::string& kw = tok[0];
        if (kw == "foam") {
            if (tok.size() != 2) throw fail(0, "'foam' expects a name");
            if (have_name) throw fail(0, "repeated foam declaration");
            doc.name = tok[1];
            have_name = true;
        } else if (kw == "vertices") {
            if (tok.size() != 2) throw fail(0, "'vertices' expects a count");
            if (have_vertices) throw fail(0, "repeated vertices declaration");
            doc.vertex_count = std::stoi(tok[1]);
            have_vertices = true;
        } else if (kw == "edge") {
            if (tok.size() != 6 || tok[4] != "intertwiner")
                throw fail(0, "expected: edge ID SRC DST intertwiner S");
            auto it = edge_line.find(tok[1]);
            if (it != edge_line.end())
                throw fail(1, "duplicate edge '" + tok[1] + "' (first declared on line " +
                                  std::to_string(it->second) + ")");
            edge_line[tok[1]] = lineno;
            doc.edges.push_back({tok[1], endpoint(2), endpoint(3), spin_at(5)});
        } else if (kw == "face") {
            if (tok.size() < 5 || tok[2] != "spin")
                throw fail(0, "expected: face ID spin S E1 E2 ...");
            auto it = face_line.find(tok[1]);
            if (it != face_line.end())
                throw fail(1, "duplicate face '" + tok[1] + "' (first declared on line " +
                                  std::to_string(it->second) + ")");
            face_line[tok[1]] = lineno;
            FoamDocument::FaceDecl fd;
            fd.id = tok[1];
            fd.spin = spin_at(3);
            for (std::size_t t = 4; t < tok.size(); ++t) {
                if (!edge_line.count(tok[t]))
                    throw fail((int)t, "undeclared edge '" + tok[t] + "'");
                fd.edges.push_back(tok[t]);
            }
            doc.faces.push_back(fd);
        } else {
            throw fail(0, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_name) throw ParseError(lineno ? lineno : 1, 1, "missing foam declaration");
    return doc;
}

inline SpinFoam document_to_foam(const FoamDocument& doc) {
    SpinFoam foam;
    foam.vertex_count = doc.vertex_count;
    std::map<std::string, int> eidx;
    for (const auto& e : doc.edges) {
        eidx[e.id] = (int)eidx.size();
        foam.edges.push_back({e.src, e.dst, e.intertwiner});
    }
    for (const auto& f : doc.faces) {
        SpinFoam::Face fc;
        fc.spin = f.spin;
        for (const auto& id : f.edges) fc.edges.push_back(eidx.at(id));
        foam.faces.push_back(fc);
    }
    return foam;
}

}  // namespace foamkit
