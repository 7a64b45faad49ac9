#ifndef BW_DECOMPOSITION_HPP
#define BW_DECOMPOSITION_HPP

#include "bw/graph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace bw {

// ---------------------------------------------------------------------------
// Branch decompositions.
//
// An unrooted tree whose leaves biject with E(G); internal nodes have degree
// exactly three once the tree has at least two nodes.  |E(G)| = 0 is the
// empty tree, |E(G)| = 1 a single node, |E(G)| = 2 one edge joining two
// leaves.

struct BranchDecomposition {
    int node_count = 0;
    std::vector<std::pair<int, int>> tree_edges;      // node ids 0..node_count-1
    std::vector<std::pair<int, Edge>> leaf_map;       // tree node -> graph edge
};

namespace detail {

inline std::vector<std::vector<int>> bd_adjacency(const BranchDecomposition& bd) {
    std::vector<std::vector<int>> adj(bd.node_count);
    for (auto [a, b] : bd.tree_edges) {
        if (a < 0 || b < 0 || a >= bd.node_count || b >= bd.node_count || a == b)
            throw invalid_decomposition("bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

} // namespace detail

// Structural validation: tree-ness, leaf/internal degrees, bijective leaf map.
inline void validate_bd(const Graph& g, const BranchDecomposition& bd) {
    const std::size_t m = g.num_edges();
    if (m == 0) {
        if (bd.node_count != 0 || !bd.tree_edges.empty() || !bd.leaf_map.empty())
            throw invalid_decomposition("edgeless graph requires the empty tree");
        return;
    }
    if (bd.node_count <= 0) throw invalid_decomposition("empty tree for nonempty graph");
    if (bd.tree_edges.size() + 1 != static_cast<std::size_t>(bd.node_count))
        throw invalid_decomposition("node/edge count is not a tree");
    auto adj = detail::bd_adjacency(bd);

    // Connectivity.
    std::vector<char> seen(bd.node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    if (cnt != static_cast<std::size_t>(bd.node_count))
        throw invalid_decomposition("tree is disconnected");

    if (bd.leaf_map.size() != m)
        throw invalid_decomposition("leaf map size differs from |E|");
    std::set<Edge> mapped;
    std::set<int> leaf_nodes;
    for (auto& [node, e] : bd.leaf_map) {
        if (node < 0 || node >= bd.node_count) throw invalid_decomposition("bad leaf node id");
        if (!g.has_edge(e.first, e.second)) throw invalid_decomposition("leaf maps unknown edge");
        if (!mapped.insert(make_edge(e.first, e.second)).second)
            throw invalid_decomposition("edge mapped twice");
        if (!leaf_nodes.insert(node).second)
            throw invalid_decomposition("tree node used by two leaves");
    }
    if (bd.node_count == 1) return; // single node carries the single edge
    for (int v = 0; v < bd.node_count; ++v) {
        std::size_t d = adj[v].size();
        bool is_leaf = leaf_nodes.count(v) > 0;
        if (is_leaf && d != 1) throw invalid_decomposition("leaf of degree != 1");
        if (!is_leaf && d != 3) throw invalid_decomposition("internal node of degree != 3");
    }
}

// Width of a branch decomposition: the maximum over tree edges e of the
// number of graph vertices incident to leaf edges on both sides of e.
// Zero for a single-node tree.
inline int bd_width(const Graph& g, const BranchDecomposition& bd) {
    validate_bd(g, bd);
    if (bd.node_count <= 1) return 0;
    auto adj = detail::bd_adjacency(bd);
    Indexer ix(g);

    std::map<int, std::vector<int>> leaf_vertices; // tree node -> endpoint indices
    for (auto& [node, e] : bd.leaf_map)
        leaf_vertices[node] = {ix.index(e.first), ix.index(e.second)};

    // Root at node 0, gather per-subtree vertex incidence counts.
    std::vector<int> order, parent(bd.node_count, -1);
    std::vector<char> seen(bd.node_count, 0);
    order.reserve(bd.node_count);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : adj[order[i]])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }

    // total incidence count per vertex
    std::vector<int> total(ix.size(), 0);
    for (auto& [node, vv] : leaf_vertices)
        for (int v : vv) ++total[v];

    std::vector<std::vector<int>> sub(bd.node_count, std::vector<int>(ix.size(), 0));
    int width = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (auto lv = leaf_vertices.find(v); lv != leaf_vertices.end())
            for (int x : lv->second) ++sub[v][x];
        if (parent[v] >= 0) {
            int w = 0;
            for (std::size_t x = 0; x < ix.size(); ++x) {
                if (sub[v][x] > 0 && sub[v][x] < total[x]) ++w;
                sub[parent[v]][x] += sub[v][x];
            }
            width = std::max(width, w);
        }
    }
    return width;
}

// ---------------------------------------------------------------------------
// Tree decompositions.

struct TreeDecomposition {
    std::vector<std::set<int>> bags;             // node ids 0..bags.size()-1
    std::vector<std::pair<int, int>> tree_edges;
};

struct TdViolation {
    enum Kind { VertexUncovered, EdgeUncovered, BagsDisconnected, NotATree } kind;
    int vertex = -1; // for VertexUncovered / BagsDisconnected
    Edge edge{-1, -1};

    std::string describe() const {
        switch (kind) {
            case VertexUncovered: return "vertex " + std::to_string(vertex) + " in no bag";
            case EdgeUncovered:
                return "edge " + std::to_string(edge.first) + " " +
                       std::to_string(edge.second) + " in no bag";
            case BagsDisconnected:
                return "bags containing " + std::to_string(vertex) + " are disconnected";
            case NotATree: return "decomposition tree is not a tree";
        }
        return "";
    }
};

namespace detail {

inline std::vector<std::vector<int>> td_adjacency(const TreeDecomposition& td) {
    std::vector<std::vector<int>> adj(td.bags.size());
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(td.bags.size()) ||
            b >= static_cast<int>(td.bags.size()) || a == b)
            throw invalid_decomposition("bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

inline bool td_is_tree(const TreeDecomposition& td) {
    if (td.bags.empty()) return td.tree_edges.empty();
    if (td.tree_edges.size() + 1 != td.bags.size()) return false;
    auto adj = td_adjacency(td);
    std::vector<char> seen(td.bags.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == td.bags.size();
}

} // namespace detail

// Reports every violated tree-decomposition condition with a witness.
inline std::vector<TdViolation> validate_td(const Graph& g, const TreeDecomposition& td) {
    std::vector<TdViolation> out;
    if (!detail::td_is_tree(td)) {
        out.push_back({TdViolation::NotATree, -1, {-1, -1}});
        return out;
    }
    std::set<int> covered;
    for (auto& bag : td.bags) covered.insert(bag.begin(), bag.end());
    for (int v : g.vertices())
        if (!covered.count(v)) out.push_back({TdViolation::VertexUncovered, v, {-1, -1}});
    for (const auto& e : g.edges()) {
        bool ok = false;
        for (auto& bag : td.bags)
            if (bag.count(e.first) && bag.count(e.second)) {
                ok = true;
                break;
            }
        if (!ok) out.push_back({TdViolation::EdgeUncovered, -1, e});
    }
    // Condition: nodes whose bag contains v induce a subtree.
    auto adj = detail::td_adjacency(td);
    for (int v : g.vertices()) {
        std::vector<int> holding;
        for (std::size_t t = 0; t < td.bags.size(); ++t)
            if (td.bags[t].count(v)) holding.push_back(static_cast<int>(t));
        if (holding.size() <= 1) continue;
        std::set<int> hold(holding.begin(), holding.end());
        std::set<int> seen{holding[0]};
        std::vector<int> stack{holding[0]};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int w : adj[t])
                if (hold.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        if (seen.size() != hold.size())
            out.push_back({TdViolation::BagsDisconnected, v, {-1, -1}});
    }
    return out;
}

inline bool td_valid(const Graph& g, const TreeDecomposition& td) {
    return validate_td(g, td).empty();
}

// Torso at node t: the bag's induced subgraph plus a clique on every
// adhesion set with a neighboring bag.
inline Graph torso(const Graph& g, const TreeDecomposition& td, int t) {
    if (t < 0 || t >= static_cast<int>(td.bags.size()))
        throw invalid_parameter("torso: unknown node " + std::to_string(t));
    const auto& bag = td.bags[t];
    Graph h = g.induced(bag);
    for (auto [a, b] : td.tree_edges) {
        int other = -1;
        if (a == t) other = b;
        else if (b == t) other = a;
        else continue;
        std::vector<int> common;
        for (int v : bag)
            if (td.bags[other].count(v)) common.push_back(v);
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j)
                if (!h.has_edge(common[i], common[j])) h.add_edge(common[i], common[j]);
    }
    return h;
}

// Maximum over tree edges of |bag(t) - bag(t')|; 0 for a single node.
inline int adhesion(const TreeDecomposition& td) {
    int best = 0;
    for (auto [a, b] : td.tree_edges) {
        int c = 0;
        for (int v : td.bags[a])
            if (td.bags[b].count(v)) ++c;
        best = std::max(best, c);
    }
    return best;
}

inline TreeDecomposition single_bag_td(const Graph& g) {
    TreeDecomposition td;
    td.bags.push_back(std::set<int>(g.vertices().begin(), g.vertices().end()));
    return td;
}

// ---------------------------------------------------------------------------
// Constructive blow-up decomposition.  Given a branch decomposition of g of
// width w >= 2, builds one for blowup(g, k) of width exactly k*w: each leaf
// (edge uv) becomes a caterpillar over the k^2 copies grouped by the copy of
// u, and each clique K_v hangs next to the first g-edge at v.

inline BranchDecomposition blowup_bd(const Graph& g, const BranchDecomposition& bd,
                                     int k) {
    validate_bd(g, bd);
    if (k < 1) throw invalid_parameter("blowup_bd: k must be positive");
    BranchDecomposition out;
    auto fresh = [&out]() { return out.node_count++; };

    // Builds a caterpillar over the given edges hanging off `attach`; returns
    // nothing (edges/leaves recorded in `out`).  `attach` gains one child.
    // With a single edge the leaf attaches directly.
    auto hang_edges = [&](int attach, const std::vector<Edge>& es) {
        // chain of internal nodes, one leaf each, last internal takes two
        if (es.empty()) throw internal_error("hang_edges: empty");
        int prev = attach;
        for (std::size_t i = 0; i + 1 < es.size(); ++i) {
            bool last_pair = (i + 2 == es.size());
            if (last_pair) {
                int inner = fresh();
                out.tree_edges.push_back({prev, inner});
                int l1 = fresh(), l2 = fresh();
                out.tree_edges.push_back({inner, l1});
                out.tree_edges.push_back({inner, l2});
                out.leaf_map.push_back({l1, es[i]});
                out.leaf_map.push_back({l2, es[i + 1]});
                return;
            }
            int inner = fresh();
            int leaf = fresh();
            out.tree_edges.push_back({prev, inner});
            out.tree_edges.push_back({inner, leaf});
            out.leaf_map.push_back({leaf, es[i]});
            prev = inner;
        }
        // single edge
        int leaf = fresh();
        out.tree_edges.push_back({prev, leaf});
        out.leaf_map.push_back({leaf, es[0]});
    };

    // First g-edge at each vertex (sorted edge order) carries the clique.
    std::map<int, Edge> first_edge;
    for (const auto& e : g.edges()) {
        if (!first_edge.count(e.first)) first_edge[e.first] = e;
        if (!first_edge.count(e.second)) first_edge[e.second] = e;
    }

    if (g.num_edges() == 0) {
        // Only cliques exist.  k = 1: edgeless; k >= 2: per-vertex cliques in
        // one caterpillar per component (they are separate components, any
        // tree shape works; join all cliques on a spine).
        std::vector<Edge> all;
        for (int v : g.vertices())
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    all.push_back(make_edge(v * k + a, v * k + b));
        if (all.empty()) return out;
        if (all.size() == 1) {
            int leaf = fresh();
            out.leaf_map.push_back({leaf, all[0]});
            return out;
        }
        int root = fresh();
        std::vector<Edge> rest(all.begin() + 1, all.end());
        int l0 = fresh();
        out.tree_edges.push_back({root, l0});
        out.leaf_map.push_back({l0, all[0]});
        hang_edges(root, rest);
        // root has degree 2, splice it away
        // (hang_edges gave it exactly one more child)
        // Remove node `root` by merging its two incident edges.
        std::vector<int> nbr;
        std::vector<std::pair<int, int>> kept;
        for (auto e : out.tree_edges) {
            if (e.first == root) nbr.push_back(e.second);
            else if (e.second == root) nbr.push_back(e.first);
            else kept.push_back(e);
        }
        kept.push_back({nbr[0], nbr[1]});
        out.tree_edges = kept;
        return out;
    }

    // Map each original tree node to its replacement subtree root.
    std::vector<int> node_of(bd.node_count, -1);
    for (int v = 0; v < bd.node_count; ++v) node_of[v] = fresh();
    for (auto [a, b] : bd.tree_edges) out.tree_edges.push_back({node_of[a], node_of[b]});

    for (auto& [node, e] : bd.leaf_map) {
        auto [u, v] = e;
        int hub = node_of[node];
        // copies of edge uv grouped by u-copy; plus cliques that live here
        std::vector<std::vector<Edge>> groups;
        for (int a = 0; a < k; ++a) {
            std::vector<Edge> grp;
            for (int b = 0; b < k; ++b) grp.push_back(make_edge(u * k + a, v * k + b));
            groups.push_back(std::move(grp));
        }
        std::vector<Edge> cliques;
        for (int x : {u, v})
            if (first_edge[x] == e && k >= 2)
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b < k; ++b)
                        cliques.push_back(make_edge(x * k + a, x * k + b));
        if (!cliques.empty()) groups.push_back(std::move(cliques));

        // Hang all groups on a spine below `hub`: hub - s1 - s2 - ...; the
        // last spine node takes the last group directly so degrees stay 3.
        if (groups.size() == 1) {
            hang_edges(hub, groups[0]);
            continue;
        }
        int prev = hub;
        for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
            int s = fresh();
            out.tree_edges.push_back({prev, s});
            hang_edges(s, groups[i]);
            prev = s;
        }
        hang_edges(prev, groups.back());
    }

    // A single-node original tree (one graph edge) leaves node_of[0] with
    // whatever children were attached; if it got exactly one child it has
    // degree 1 but is not a leaf -- splice it.
    std::vector<int> deg(out.node_count, 0);
    for (auto [a, b] : out.tree_edges) { ++deg[a]; ++deg[b]; }
    std::set<int> leaves;
    for (auto& [n, e] : out.leaf_map) leaves.insert(n);
    for (int v = 0; v < out.node_count; ++v) {
        if (leaves.count(v) || deg[v] != 2) continue;
        // splice degree-2 internal node
        std::vector<int> nbr;
        std::vector<std::pair<int, int>> kept;
        for (auto e : out.tree_edges) {
            if (e.first == v) nbr.push_back(e.second);
            else if (e.second == v) nbr.push_back(e.first);
            else kept.push_back(e);
        }
        kept.push_back({nbr[0], nbr[1]});
        out.tree_edges = kept;
        --deg[v]; // mark handled; ids stay, node becomes isolated
        deg[v] = -1;
    }
    // Compact away any isolated (spliced) nodes.
    std::vector<int> remap(out.node_count, -1);
    int next = 0;
    std::vector<char> used(out.node_count, 0);
    for (auto [a, b] : out.tree_edges) used[a] = used[b] = 1;
    for (auto& [n, e] : out.leaf_map) used[n] = 1;
    for (int v = 0; v < out.node_count; ++v)
        if (used[v]) remap[v] = next++;
    for (auto& e : out.tree_edges) e = {remap[e.first], remap[e.second]};
    for (auto& [n, e] : out.leaf_map) n = remap[n];
    out.node_count = next;
    return out;
}

// ---------------------------------------------------------------------------
// File formats.
//
// Tree decomposition:   "s td <#bags> <max_bag_size> <n>", bag lines
// "b <id> <v1> <v2> ...", then tree edges "<id1> <id2>".  Ids are 1-based.
// Branch decomposition: "s bd <#tree_nodes>", leaf lines
// "l <tree_node> <u> <v>", then tree edges "<id1> <id2>".

inline void write_td(const TreeDecomposition& td, std::ostream& out) {
    std::size_t maxbag = 0, universe = 0;
    std::set<int> verts;
    for (auto& bag : td.bags) {
        maxbag = std::max(maxbag, bag.size());
        verts.insert(bag.begin(), bag.end());
    }
    universe = verts.size();
    out << "s td " << td.bags.size() << " " << maxbag << " " << universe << "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << (i + 1);
        for (int v : td.bags[i]) out << " " << v;
        out << "\n";
    }
    auto es = td.tree_edges;
    for (auto& e : es)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) out << (a + 1) << " " << (b + 1) << "\n";
}

inline TreeDecomposition parse_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    bool header = false;
    std::size_t nbags = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue; // PACE-style comment
        if (tok == "s") {
            std::string kind;
            std::size_t mb, n;
            if (!(ls >> kind >> nbags >> mb >> n) || kind != "td")
                throw invalid_parameter("bad td header");
            td.bags.assign(nbags, {});
            header = true;
        } else if (tok == "b") {
            if (!header) throw invalid_parameter("bag before header");
            std::size_t id;
            if (!(ls >> id) || id < 1 || id > nbags)
                throw invalid_parameter("bad bag id");
            int v;
            while (ls >> v) td.bags[id - 1].insert(v);
        } else {
            if (!header) throw invalid_parameter("edge before header");
            std::size_t a = std::stoul(tok), b;
            if (!(ls >> b) || a < 1 || b < 1 || a > nbags || b > nbags)
                throw invalid_parameter("bad tree edge");
            td.tree_edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1)});
        }
    }
    if (!header) throw invalid_parameter("missing td header");
    return td;
}

inline void write_bd(const BranchDecomposition& bd, std::ostream& out) {
    out << "s bd " << bd.node_count << "\n";
    auto lm = bd.leaf_map;
    std::sort(lm.begin(), lm.end());
    for (auto& [n, e] : lm) out << "l " << (n + 1) << " " << e.first << " " << e.second << "\n";
    auto es = bd.tree_edges;
    for (auto& e : es)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) out << (a + 1) << " " << (b + 1) << "\n";
}

inline BranchDecomposition parse_bd(std::istream& in) {
    BranchDecomposition bd;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "s") {
            std::string kind;
            if (!(ls >> kind >> bd.node_count) || kind != "bd" || bd.node_count < 0)
                throw invalid_parameter("bad bd header");
            header = true;
        } else if (tok == "l") {
            if (!header) throw invalid_parameter("leaf before header");
            int n, u, v;
            if (!(ls >> n >> u >> v) || n < 1 || n > bd.node_count)
                throw invalid_parameter("bad leaf line");
            bd.leaf_map.push_back({n - 1, make_edge(u, v)});
        } else {
            if (!header) throw invalid_parameter("edge before header");
            int a = std::stoi(tok), b;
            if (!(ls >> b) || a < 1 || b < 1 || a > bd.node_count || b > bd.node_count)
                throw invalid_parameter("bad tree edge");
            bd.tree_edges.push_back({a - 1, b - 1});
        }
    }
    if (!header) throw invalid_parameter("missing bd header");
    return bd;
}

} // namespace bw

#endif
