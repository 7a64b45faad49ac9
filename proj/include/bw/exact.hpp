#ifndef BW_EXACT_HPP
#define BW_EXACT_HPP

#include "bw/decomposition.hpp"
#include "bw/graph.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace bw {

struct BwResult {
    int width = 0;
    BranchDecomposition bd;
};

struct BwOptions {
    // Refuses larger inputs outright; raise explicitly when a caller knows
    // the instance is tractable.
    int edge_budget = 16;
    // Search-node cap across all width decisions of one call.
    std::uint64_t node_cap = 400'000'000ull;
    // Known decomposition used as an upper-bound certificate.  The result is
    // still exact: the engine refutes smaller widths exhaustively.
    std::optional<BranchDecomposition> hint;
};

namespace detail {

// Decision engine for "does g admit a branch decomposition of width <= kd".
// Works over edge bitmasks; a set S is realizable iff its boundary is small
// enough and it splits into two realizable parts.  Splits are enumerated by
// assigning edges to the two sides with pruning on the boundary size both
// sides are already committed to.
class BwEngine {
public:
    BwEngine(const Graph& g, std::uint64_t node_cap)
        : ix_(g), node_cap_(node_cap) {
        n_ = ix_.size();
        m_ = g.num_edges();
        inc_.assign(n_, 0);
        // Sorted edge order groups each vertex's star contiguously, which
        // makes the boundary pruning bite early.
        order_ = g.edges();
        for (std::size_t i = 0; i < order_.size(); ++i) {
            inc_[ix_.index(order_[i].first)] |= 1ull << i;
            inc_[ix_.index(order_[i].second)] |= 1ull << i;
        }
        full_ = m_ == 64 ? ~0ull : (1ull << m_) - 1;
    }

    int boundary_size(std::uint64_t S) const {
        int c = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            std::uint64_t t = inc_[v] & S;
            if (t != 0 && t != inc_[v]) ++c;
        }
        return c;
    }

    bool decide(int kd) {
        kd_ = kd;
        memo_.clear();
        choice_.clear();
        return solve(full_);
    }

    // Call after a successful decide() to obtain the certificate.
    BranchDecomposition extract(const Graph& g) {
        BranchDecomposition bd;
        if (m_ == 0) return bd;
        if (m_ == 1) {
            bd.node_count = 1;
            bd.leaf_map.push_back({0, order_[0]});
            return bd;
        }
        std::uint64_t A = choice_.at(full_), B = full_ ^ A;
        int ra = build(bd, A), rb = build(bd, B);
        bd.tree_edges.push_back({ra, rb});
        validate_bd(g, bd);
        return bd;
    }

    std::size_t edge_count() const { return m_; }
    std::uint64_t nodes() const { return nodes_; }
    std::size_t memo_size() const { return memo_.size(); }

private:
    Indexer ix_;
    std::size_t n_ = 0, m_ = 0;
    std::vector<std::uint64_t> inc_;
    std::vector<Edge> order_;
    std::uint64_t full_ = 0;
    int kd_ = 0;
    std::unordered_map<std::uint64_t, char> memo_;
    std::unordered_map<std::uint64_t, std::uint64_t> choice_;
    std::uint64_t nodes_ = 0, node_cap_;

    int build(BranchDecomposition& bd, std::uint64_t S) {
        if (std::popcount(S) == 1) {
            int id = bd.node_count++;
            bd.leaf_map.push_back({id, order_[std::countr_zero(S)]});
            return id;
        }
        std::uint64_t A = choice_.at(S), B = S ^ A;
        int id = bd.node_count++;
        int ca = build(bd, A), cb = build(bd, B);
        bd.tree_edges.push_back({id, ca});
        bd.tree_edges.push_back({id, cb});
        return id;
    }

    // vertex-disjoint components of the edge set S
    std::vector<std::uint64_t> edge_components(std::uint64_t S) const {
        std::vector<std::uint64_t> parts;
        std::uint64_t left = S;
        while (left) {
            std::uint64_t comp = left & (~left + 1); // lowest remaining edge
            for (;;) {
                std::uint64_t verts = 0;
                std::uint64_t grown = comp;
                std::uint64_t c = comp;
                while (c) {
                    int e = std::countr_zero(c);
                    c &= c - 1;
                    verts |= 1ull << endpoint(e, 0);
                    verts |= 1ull << endpoint(e, 1);
                }
                std::uint64_t v = verts;
                while (v) {
                    int x = std::countr_zero(v);
                    v &= v - 1;
                    grown |= inc_[x] & left;
                }
                if (grown == comp) break;
                comp = grown;
            }
            parts.push_back(comp);
            left &= ~comp;
        }
        return parts;
    }

    bool solve(std::uint64_t S) {
        if (std::popcount(S) == 1) return boundary_size(S) <= kd_;
        if (auto it = memo_.find(S); it != memo_.end()) return it->second == 1;
        if (++nodes_ > node_cap_) throw resource_limit("branchwidth search cap exceeded");
        if (boundary_size(S) > kd_) {
            memo_[S] = 2;
            return false;
        }
        // vertex-disjoint parts stand or fall independently: any two trees
        // joined at their roots never mix boundaries
        auto parts = edge_components(S);
        if (parts.size() > 1) {
            bool ok = true;
            for (std::uint64_t p : parts)
                if (!solve(p)) {
                    ok = false;
                    break;
                }
            if (ok) {
                std::uint64_t rest = S;
                for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
                    choice_[rest] = parts[i];
                    memo_[rest] = 1;
                    rest ^= parts[i];
                }
            }
            memo_[S] = ok ? 1 : 2;
            return ok;
        }
        bool ok = try_splits(S);
        memo_[S] = ok ? 1 : 2;
        return ok;
    }

    // Assign the edges of S to sides A/B, branching on the edge most
    // entangled with the decided region so boundary pruning bites early.
    // aCnt/bCnt track per-vertex incidences already placed on each side,
    // out marks vertices touching E \ S; certA/certB count the boundary
    // vertices each side is already committed to.
    bool try_splits(std::uint64_t S) {
        std::vector<int> aCnt(n_, 0), bCnt(n_, 0);
        std::vector<char> out(n_, 0);
        for (std::size_t v = 0; v < n_; ++v)
            out[v] = (inc_[v] & ~S & full_) != 0;
        int certA = 0, certB = 0;
        std::uint64_t A = 0, B = 0;
        return split_dfs(S, S, A, B, aCnt, bCnt, out, certA, certB);
    }

    // certX contribution of vertex w on side with counts cnt vs. other side.
    bool cert_on(const std::vector<int>& cnt, const std::vector<int>& other,
                 const std::vector<char>& out, int w) const {
        return cnt[w] > 0 && (other[w] > 0 || out[w]);
    }

    // cert deltas of putting edge e on `side` (0 = A, 1 = B), no net mutation
    std::pair<int, int> trial_deltas(int e, int side, std::vector<int>& aCnt,
                                     std::vector<int>& bCnt,
                                     const std::vector<char>& out) {
        auto& cnt = side == 0 ? aCnt : bCnt;
        int u = endpoint(e, 0), v = endpoint(e, 1);
        int dA = 0, dB = 0;
        for (int w : {u, v}) {
            bool a0 = cert_on(aCnt, bCnt, out, w), b0 = cert_on(bCnt, aCnt, out, w);
            ++cnt[w];
            bool a1 = cert_on(aCnt, bCnt, out, w), b1 = cert_on(bCnt, aCnt, out, w);
            dA += static_cast<int>(a1) - static_cast<int>(a0);
            dB += static_cast<int>(b1) - static_cast<int>(b0);
        }
        for (int w : {u, v}) --cnt[w];
        return {dA, dB};
    }

    void apply_edge(int e, int side, std::uint64_t& A, std::uint64_t& B,
                    std::vector<int>& aCnt, std::vector<int>& bCnt,
                    const std::vector<char>& out, int& certA, int& certB) {
        auto& cnt = side == 0 ? aCnt : bCnt;
        int u = endpoint(e, 0), v = endpoint(e, 1);
        for (int w : {u, v}) {
            bool a0 = cert_on(aCnt, bCnt, out, w), b0 = cert_on(bCnt, aCnt, out, w);
            ++cnt[w];
            bool a1 = cert_on(aCnt, bCnt, out, w), b1 = cert_on(bCnt, aCnt, out, w);
            certA += static_cast<int>(a1) - static_cast<int>(a0);
            certB += static_cast<int>(b1) - static_cast<int>(b0);
        }
        (side == 0 ? A : B) |= 1ull << e;
    }

    void undo_edge(int e, int side, std::uint64_t& A, std::uint64_t& B,
                   std::vector<int>& aCnt, std::vector<int>& bCnt,
                   const std::vector<char>& out, int& certA, int& certB) {
        auto& cnt = side == 0 ? aCnt : bCnt;
        int u = endpoint(e, 0), v = endpoint(e, 1);
        (side == 0 ? A : B) &= ~(1ull << e);
        for (int w : {u, v}) {
            bool a1 = cert_on(aCnt, bCnt, out, w), b1 = cert_on(bCnt, aCnt, out, w);
            --cnt[w];
            bool a0 = cert_on(aCnt, bCnt, out, w), b0 = cert_on(bCnt, aCnt, out, w);
            certA -= static_cast<int>(a1) - static_cast<int>(a0);
            certB -= static_cast<int>(b1) - static_cast<int>(b0);
        }
    }

    bool split_dfs(std::uint64_t S, std::uint64_t remaining, std::uint64_t& A,
                   std::uint64_t& B, std::vector<int>& aCnt, std::vector<int>& bCnt,
                   const std::vector<char>& out, int& certA, int& certB) {
        if (certA > kd_ || certB > kd_) return false;
        if (++nodes_ > node_cap_) throw resource_limit("branchwidth search cap exceeded");

        // propagate forced edges: a side is impossible when taking it would
        // push a boundary count over the cap; deltas are at most 2 per edge,
        // so nothing can be forced while both counters are 2 below the cap
        std::vector<std::pair<int, char>> trail;
        bool conflict = false;
        bool changed = true;
        while (changed && !conflict) {
            changed = false;
            if (certA < kd_ - 1 && certB < kd_ - 1) break;
            std::uint64_t r = remaining;
            while (r) {
                int f = std::countr_zero(r);
                r &= r - 1;
                auto [aA, aB] = trial_deltas(f, 0, aCnt, bCnt, out);
                bool canA = certA + aA <= kd_ && certB + aB <= kd_;
                auto [bA, bB] = trial_deltas(f, 1, aCnt, bCnt, out);
                bool canB = certA + bA <= kd_ && certB + bB <= kd_;
                if (!canA && !canB) {
                    conflict = true;
                    break;
                }
                if (canA != canB) {
                    char side = canA ? 0 : 1;
                    apply_edge(f, side, A, B, aCnt, bCnt, out, certA, certB);
                    remaining &= ~(1ull << f);
                    trail.push_back({f, side});
                    changed = true;
                }
            }
        }

        bool found = false;
        if (!conflict) {
            if (remaining == 0) {
                if (A != 0 && B != 0 && solve(A) && solve(B)) {
                    choice_[S] = A;
                    found = true;
                }
            } else {
                // most-constrained edge: prefer committed endpoints
                int e = -1, best = -1;
                std::uint64_t r = remaining;
                while (r) {
                    int cand = std::countr_zero(r);
                    r &= r - 1;
                    int u = endpoint(cand, 0), v = endpoint(cand, 1);
                    int score = 0;
                    for (int w : {u, v}) {
                        if (aCnt[w] > 0 || bCnt[w] > 0) score += 2;
                        else if (out[w]) score += 1;
                    }
                    if (score > best) {
                        best = score;
                        e = cand;
                    }
                    if (best == 4) break;
                }
                for (char side = 0; side < 2 && !found; ++side) {
                    if (A == 0 && B == 0 && side == 1) break; // symmetry
                    apply_edge(e, side, A, B, aCnt, bCnt, out, certA, certB);
                    found = split_dfs(S, remaining & ~(1ull << e), A, B, aCnt, bCnt,
                                      out, certA, certB);
                    if (!found)
                        undo_edge(e, side, A, B, aCnt, bCnt, out, certA, certB);
                }
            }
        }
        if (!found)
            for (auto it = trail.rbegin(); it != trail.rend(); ++it)
                undo_edge(it->first, it->second, A, B, aCnt, bCnt, out, certA, certB);
        return found;
    }

    int endpoint(int e, int which) const {
        const Edge& ed = order_[e];
        return ix_.index(which == 0 ? ed.first : ed.second);
    }
};

} // namespace detail

// Exact branchwidth with an optimal decomposition.  Exponential search with
// memoization and boundary pruning; refuses inputs over the edge budget.
// With a hint decomposition the engine only has to refute smaller widths,
// which keeps dense blow-ups tractable; the result is exact either way.
inline BwResult exact_bw(const Graph& g, const BwOptions& opts = {}) {
    const std::size_t m = g.num_edges();
    if (m > 64) throw resource_limit("exact_bw: more than 64 edges");
    if (m > static_cast<std::size_t>(opts.edge_budget))
        throw resource_limit("exact_bw: edge budget exceeded (" + std::to_string(m) +
                             " > " + std::to_string(opts.edge_budget) + ")");
    BwResult res;
    if (m == 0) return res;
    if (m == 1) {
        res.bd.node_count = 1;
        res.bd.leaf_map.push_back({0, g.edges()[0]});
        return res;
    }

    detail::BwEngine eng(g, opts.node_cap);
    if (opts.hint) {
        int ub = bd_width(g, *opts.hint);
        BranchDecomposition best = *opts.hint;
        int kd = ub - 1;
        while (kd >= 0 && eng.decide(kd)) {
            best = eng.extract(g);
            ub = kd;
            --kd;
        }
        res.width = ub;
        res.bd = best;
        return res;
    }
    for (int kd = 0;; ++kd) {
        if (eng.decide(kd)) {
            res.width = kd;
            res.bd = eng.extract(g);
            return res;
        }
    }
}

// ---------------------------------------------------------------------------
// Exact treewidth via the elimination-order subset DP.

struct TwOptions {
    int vertex_budget = 12;
};

struct TwResult {
    int width = 0;
    std::vector<int> elimination_order; // labels, first eliminated first
};

namespace detail {

inline int q_value(const std::vector<std::uint32_t>& adj, std::uint32_t S, int v) {
    // vertices outside S+{v} reachable from v through S
    std::uint32_t allowed = S | (1u << v);
    std::uint32_t reach = 1u << v, frontier = 1u << v;
    while (frontier) {
        std::uint32_t next = 0;
        while (frontier) {
            int w = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= adj[w];
        }
        next &= allowed & ~reach;
        reach |= next;
        frontier = next;
    }
    std::uint32_t seen = 0;
    std::uint32_t r = reach;
    while (r) {
        int w = std::countr_zero(r);
        r &= r - 1;
        seen |= adj[w];
    }
    return std::popcount(seen & ~allowed);
}

} // namespace detail

inline TwResult exact_tw_full(const Graph& g, const TwOptions& opts = {}) {
    const std::size_t n = g.num_vertices();
    if (n > 25) throw resource_limit("exact_tw: more than 25 vertices");
    if (n > static_cast<std::size_t>(opts.vertex_budget))
        throw resource_limit("exact_tw: vertex budget exceeded (" + std::to_string(n) +
                             " > " + std::to_string(opts.vertex_budget) + ")");
    TwResult res;
    if (n == 0) {
        res.width = -1;
        return res;
    }
    Indexer ix(g);
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [a, b] : g.edges()) {
        adj[ix.index(a)] |= 1u << ix.index(b);
        adj[ix.index(b)] |= 1u << ix.index(a);
    }
    const std::uint32_t fullset = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<int> dp(fullset + 1, 0);
    std::vector<signed char> pick(fullset + 1, -1);
    // dp[0] = -1 sentinel handled implicitly: max(-1, q) = q
    for (std::uint32_t S = 1; S <= fullset; ++S) {
        int best = 1 << 30;
        int bestv = -1;
        std::uint32_t it = S;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            std::uint32_t rest = S & ~(1u << v);
            int cost = std::max(rest ? dp[rest] : -1, detail::q_value(adj, rest, v));
            if (cost < best) {
                best = cost;
                bestv = v;
            }
        }
        dp[S] = best;
        pick[S] = static_cast<signed char>(bestv);
    }
    res.width = dp[fullset];
    // pick[S] is eliminated last among S
    std::vector<int> rev;
    std::uint32_t S = fullset;
    while (S) {
        int v = pick[S];
        rev.push_back(ix.label(v));
        S &= ~(1u << v);
    }
    res.elimination_order.assign(rev.rbegin(), rev.rend());
    return res;
}

inline int exact_tw(const Graph& g, const TwOptions& opts = {}) {
    return exact_tw_full(g, opts).width;
}

// Tree decomposition realized by an elimination order (fill-in simulation);
// with an optimal order its width equals the treewidth.
inline TreeDecomposition td_from_elimination(const Graph& g,
                                             const std::vector<int>& order) {
    if (order.empty()) return TreeDecomposition{};
    std::map<int, std::set<int>> adj;
    for (int v : g.vertices()) adj[v] = {};
    for (const auto& [a, b] : g.edges()) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::map<int, int> position;
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);

    TreeDecomposition td;
    std::vector<std::set<int>> bags;
    for (int v : order) {
        std::set<int> bag = adj[v];
        bag.insert(v);
        bags.push_back(bag);
        for (int a : adj[v])
            for (int b : adj[v])
                if (a != b) adj[a].insert(b);
        for (int a : adj[v]) adj[a].erase(v);
        adj.erase(v);
    }
    td.bags = bags;
    std::vector<int> roots;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int next = -1;
        for (int w : bags[i])
            if (w != order[i] && (next == -1 || position[w] < position[next])) next = w;
        if (next != -1) td.tree_edges.push_back({static_cast<int>(i), position[next]});
        else roots.push_back(static_cast<int>(i));
    }
    // One root per connected component; chain them so the result is a tree.
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        td.tree_edges.push_back({roots[i], roots[i + 1]});
    return td;
}

} // namespace bw

#endif
