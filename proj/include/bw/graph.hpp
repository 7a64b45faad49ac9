#ifndef BW_GRAPH_HPP
#define BW_GRAPH_HPP

#include "bw/core.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bw {

using Edge = std::pair<int, int>; // normalized: first < second

inline Edge make_edge(int u, int v) {
    if (u == v) throw invalid_parameter("self-loop " + std::to_string(u));
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph over non-negative integer labels.  Vertex and
// edge iteration is always sorted, so every algorithm downstream is
// reproducible run to run.
class Graph {
public:
    Graph() = default;

    void add_vertex(int v) {
        if (v < 0) throw invalid_parameter("negative vertex label");
        auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
        if (it == verts_.end() || *it != v) verts_.insert(it, v);
    }

    void add_edge(int u, int v) {
        Edge e = make_edge(u, v);
        add_vertex(e.first);
        add_vertex(e.second);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e)
            throw invalid_parameter("duplicate edge " + std::to_string(u) + " " +
                                    std::to_string(v));
        edges_.insert(it, e);
    }

    bool has_vertex(int v) const {
        return std::binary_search(verts_.begin(), verts_.end(), v);
    }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
    }

    std::size_t num_vertices() const { return verts_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::vector<int>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (const auto& [a, b] : edges_) {
            if (a == v) out.push_back(b);
            else if (b == v) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t degree(int v) const {
        std::size_t d = 0;
        for (const auto& [a, b] : edges_)
            if (a == v || b == v) ++d;
        return d;
    }

    // Induced subgraph keeping original labels.
    Graph induced(const std::set<int>& keep) const {
        Graph h;
        for (int v : verts_)
            if (keep.count(v)) h.add_vertex(v);
        for (const auto& [a, b] : edges_)
            if (keep.count(a) && keep.count(b)) h.add_edge(a, b);
        return h;
    }

    bool operator==(const Graph& o) const {
        return verts_ == o.verts_ && edges_ == o.edges_;
    }

private:
    std::vector<int> verts_;
    std::vector<Edge> edges_;
};

// Maps the (possibly sparse) labels of a graph to dense indices 0..n-1.
struct Indexer {
    std::vector<int> labels; // sorted

    explicit Indexer(const Graph& g) : labels(g.vertices()) {}

    std::size_t size() const { return labels.size(); }

    int index(int label) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        if (it == labels.end() || *it != label)
            throw invalid_parameter("unknown vertex " + std::to_string(label));
        return static_cast<int>(it - labels.begin());
    }

    int label(std::size_t idx) const { return labels.at(idx); }
};

// Adjacency lists over dense indices.
inline std::vector<std::vector<int>> adjacency(const Graph& g, const Indexer& ix) {
    std::vector<std::vector<int>> adj(ix.size());
    for (const auto& [a, b] : g.edges()) {
        int ia = ix.index(a), ib = ix.index(b);
        adj[ia].push_back(ib);
        adj[ib].push_back(ia);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

inline std::vector<std::set<int>> connected_components(const Graph& g) {
    Indexer ix(g);
    auto adj = adjacency(g, ix);
    std::vector<int> comp(ix.size(), -1);
    int c = 0;
    for (std::size_t s = 0; s < ix.size(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] == -1) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    std::vector<std::set<int>> out(c);
    for (std::size_t i = 0; i < ix.size(); ++i) out[comp[i]].insert(ix.label(i));
    return out;
}

inline bool is_connected(const Graph& g) {
    return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

inline bool is_acyclic(const Graph& g) {
    // A graph is a forest iff every component has |E| = |V| - 1.
    return g.num_edges() + connected_components(g).size() == g.num_vertices();
}

// (A, B) is a separation iff A and B cover the vertex set and no edge joins
// A \ B with B \ A.
inline bool is_separation(const Graph& g, const std::set<int>& A,
                          const std::set<int>& B) {
    for (int v : g.vertices())
        if (!A.count(v) && !B.count(v)) return false;
    for (int v : A)
        if (!g.has_vertex(v)) return false;
    for (int v : B)
        if (!g.has_vertex(v)) return false;
    for (const auto& [u, v] : g.edges()) {
        bool ua = A.count(u) && !B.count(u), vb = B.count(v) && !A.count(v);
        bool ub = B.count(u) && !A.count(u), va = A.count(v) && !B.count(v);
        if ((ua && vb) || (ub && va)) return false;
    }
    return true;
}

inline int separation_order(const std::set<int>& A, const std::set<int>& B) {
    int k = 0;
    for (int v : A)
        if (B.count(v)) ++k;
    return k;
}

// Blocks: maximal 2-connected subgraphs plus bridge K_2's, as induced-labeled
// subgraphs.  Isolated vertices are omitted; the block edge sets partition
// E(g).  Hopcroft-Tarjan via lowpoints with an explicit edge stack.
inline std::vector<Graph> blocks(const Graph& g) {
    Indexer ix(g);
    std::size_t n = ix.size();
    auto adj = adjacency(g, ix);

    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<Edge> estack;
    std::vector<Graph> out;
    int timer = 0;

    auto emit = [&](const Edge& last) {
        Graph b;
        while (true) {
            Edge e = estack.back();
            estack.pop_back();
            b.add_edge(ix.label(e.first), ix.label(e.second));
            if (e == last) break;
        }
        out.push_back(std::move(b));
    };

    // Iterative DFS; child iteration in sorted order for determinism.
    struct Frame { int v; std::size_t next; };
    for (std::size_t s = 0; s < n; ++s) {
        if (disc[s] != -1 || adj[s].empty()) continue;
        std::vector<Frame> st{{static_cast<int>(s), 0}};
        disc[s] = low[s] = timer++;
        while (!st.empty()) {
            auto& f = st.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (disc[w] == -1) {
                    parent[w] = f.v;
                    disc[w] = low[w] = timer++;
                    estack.push_back({f.v, w});
                    st.push_back({w, 0});
                } else if (w != parent[f.v] && disc[w] < disc[f.v]) {
                    estack.push_back({f.v, w});
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v;
                st.pop_back();
                if (!st.empty()) {
                    int p = st.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] >= disc[p]) emit({p, v});
                }
            }
        }
    }
    // Deterministic block order: by smallest (vertex, edge) signature.
    std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) {
        if (a.vertices() != b.vertices()) return a.vertices() < b.vertices();
        return a.edges() < b.edges();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Text format: one edge per line "u v"; isolated vertices as "v <id>";
// lines starting with '#' are comments.  Canonical output lists isolated
// vertices first (ascending), then edges in lexicographic order.

inline Graph parse_graph(std::istream& in) {
    Graph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& msg) {
            throw invalid_parameter("graph parse error, line " +
                                    std::to_string(lineno) + ": " + msg);
        };
        if (tok == "v") {
            long v;
            if (!(ls >> v) || v < 0) fail("expected vertex id after 'v'");
            g.add_vertex(static_cast<int>(v));
        } else {
            long u, v;
            try {
                u = std::stol(tok);
            } catch (...) {
                fail("unexpected token '" + tok + "'");
                return g; // unreachable
            }
            if (!(ls >> v)) fail("expected second endpoint");
            if (u < 0 || v < 0) fail("negative vertex label");
            if (u == v) fail("self-loop");
            if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
                fail("duplicate edge");
            g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
        std::string rest;
        if (ls >> rest) fail("trailing token '" + rest + "'");
    }
    return g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline void write_graph(const Graph& g, std::ostream& out) {
    for (int v : g.vertices())
        if (g.degree(v) == 0) out << "v " << v << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

inline std::string graph_to_string(const Graph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

} // namespace bw

#endif
