#ifndef BW_TANGLE_HPP
#include <bit>
#define BW_TANGLE_HPP

#include "bw/decomposition.hpp"
#include "bw/generators.hpp"
#include "bw/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace bw {

// A separation as label sets, first side = second side's complement partner.
struct Separation {
    std::set<int> A, B;
    int order() const { return separation_order(A, B); }
};

// An orientation of all separations of order < `order`: for each one exactly
// one of (A,B), (B,A) is listed, the listed first component being the side
// the tangle points away from.
struct Tangle {
    int order = 0;
    std::vector<Separation> oriented;

    std::string dump() const {
        std::ostringstream out;
        for (const auto& s : oriented) {
            out << "A:{";
            bool first = true;
            for (int v : s.A) {
                if (!first) out << ",";
                out << v;
                first = false;
            }
            out << "} B:{";
            first = true;
            for (int v : s.B) {
                if (!first) out << ",";
                out << v;
                first = false;
            }
            out << "}\n";
        }
        return out.str();
    }
};

namespace detail {

// Bitmask workspace for separation/tangle computations; capped at 64
// vertices and 64 edges which is far beyond the enumeration budgets.
struct TangleContext {
    Indexer ix;
    std::size_t n, m;
    std::vector<std::uint64_t> adj;       // vertex -> neighbor mask
    std::vector<std::pair<int, int>> ep;  // edge -> endpoint indices
    std::uint64_t fullV, fullE;

    explicit TangleContext(const Graph& g) : ix(g) {
        n = ix.size();
        m = g.num_edges();
        if (n > 64 || m > 64) throw resource_limit("tangle context limited to 64 vertices/edges");
        adj.assign(n, 0);
        for (const auto& [a, b] : g.edges()) {
            int ia = ix.index(a), ib = ix.index(b);
            adj[ia] |= 1ull << ib;
            adj[ib] |= 1ull << ia;
            ep.push_back({ia, ib});
        }
        fullV = n == 64 ? ~0ull : (1ull << n) - 1;
        fullE = m == 64 ? ~0ull : (m == 0 ? 0 : (1ull << m) - 1);
    }

    std::uint64_t induced_edges(std::uint64_t A) const {
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < m; ++i)
            if ((A >> ep[i].first & 1) && (A >> ep[i].second & 1)) e |= 1ull << i;
        return e;
    }

    std::uint64_t mask_of(const std::set<int>& s) const {
        std::uint64_t r = 0;
        for (int v : s) r |= 1ull << ix.index(v);
        return r;
    }

    std::set<int> set_of(std::uint64_t mask) const {
        std::set<int> r;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) r.insert(ix.label(i));
        return r;
    }

    // connected components of the graph minus `removed`, each as a mask,
    // ordered by smallest contained vertex
    std::vector<std::uint64_t> components_without(std::uint64_t removed) const {
        std::vector<std::uint64_t> comps;
        std::uint64_t left = fullV & ~removed;
        while (left) {
            int s = std::countr_zero(left);
            std::uint64_t comp = 1ull << s, frontier = comp;
            while (frontier) {
                std::uint64_t next = 0;
                std::uint64_t f = frontier;
                while (f) {
                    int v = std::countr_zero(f);
                    f &= f - 1;
                    next |= adj[v];
                }
                next &= left & ~comp;
                comp |= next;
                frontier = next;
            }
            comps.push_back(comp);
            left &= ~comp;
        }
        return comps;
    }
};

struct MaskSeparation {
    std::uint64_t A, B;
    int order;
};

// All separations of order < k, one per {(A,B),(B,A)} pair: the component
// holding the smallest vertex outside the separator goes to side A.
inline std::vector<MaskSeparation> enumerate_mask_separations(const TangleContext& ctx,
                                                              int k) {
    std::vector<MaskSeparation> out;
    const std::uint64_t full = ctx.fullV;
    // iterate separators C with |C| < k
    std::vector<std::uint64_t> seps;
    std::uint64_t limit = full;
    for (std::uint64_t C = 0;; ++C) {
        if (std::popcount(C) < k) {
            auto comps = ctx.components_without(C);
            if (comps.empty()) {
                out.push_back({C, C, std::popcount(C)}); // C = V, n < k
            } else {
                std::size_t r = comps.size();
                for (std::uint64_t pick = 0; pick < (1ull << (r - 1)); ++pick) {
                    // comps[0] always on side A
                    std::uint64_t A = C | comps[0], B = C;
                    for (std::size_t i = 1; i < r; ++i) {
                        if (pick >> (i - 1) & 1) A |= comps[i];
                        else B |= comps[i];
                    }
                    out.push_back({A, B, std::popcount(C)});
                }
            }
        }
        if (C == limit) break;
    }
    std::sort(out.begin(), out.end(), [](const MaskSeparation& a, const MaskSeparation& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.A != b.A) return a.A < b.A;
        return a.B < b.B;
    });
    return out;
}

// Incremental checker for the tangle condition: no three chosen small sides
// may cover every vertex and every edge of the graph (sides repeat freely,
// so single and pair covers are rejected too).  Pair unions are only kept
// when some candidate third side could still complete a cover, which keeps
// the state small when most sides are tiny.
struct CoverChecker {
    const TangleContext& ctx;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> singles;
    std::unordered_set<std::uint64_t> pair_keys;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs; // unions of two singles
    std::vector<std::pair<std::size_t, std::size_t>> marks;
    int max_side_v, max_side_e; // over every side that may ever be pushed
    // sides with many induced edges, for exact completion checks
    std::vector<std::pair<std::uint64_t, std::uint64_t>> big_sides;
    int big_threshold;

    explicit CoverChecker(const TangleContext& c)
        : ctx(c),
          max_side_v(static_cast<int>(c.n)),
          max_side_e(static_cast<int>(c.m)),
          big_threshold(static_cast<int>(c.m)) {}

    // tighter completion bounds from the candidate side universe
    void set_universe(const std::vector<std::uint64_t>& sides) {
        max_side_v = 0;
        max_side_e = 0;
        std::vector<std::tuple<int, std::uint64_t, std::uint64_t>> ranked;
        for (std::uint64_t v : sides) {
            std::uint64_t e = ctx.induced_edges(v);
            int ce = std::popcount(e);
            max_side_v = std::max(max_side_v, std::popcount(v));
            max_side_e = std::max(max_side_e, ce);
            ranked.push_back({ce, v, e});
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
        const std::size_t cap = 512;
        big_sides.clear();
        big_threshold = 0;
        for (std::size_t i = 0; i < ranked.size() && i < cap; ++i)
            big_sides.push_back({std::get<1>(ranked[i]), std::get<2>(ranked[i])});
        if (ranked.size() > cap) big_threshold = std::get<0>(ranked[cap]);
    }

    static std::uint64_t key(std::uint64_t v, std::uint64_t e) {
        return v * 0x9e3779b97f4a7c15ull ^ (e + 0xda942042e4dd58b5ull * (e >> 32));
    }

    bool full_cover(std::uint64_t v, std::uint64_t e) const {
        return v == ctx.fullV && e == ctx.fullE;
    }

    // whether some candidate side could still turn this pair union into a
    // full cover; exact when the remainder needs one of the tracked big sides
    bool completable(std::uint64_t uv, std::uint64_t ue) const {
        if (std::popcount(uv) + max_side_v < static_cast<int>(ctx.n)) return false;
        std::uint64_t restV = ctx.fullV & ~uv, restE = ctx.fullE & ~ue;
        if (std::popcount(restE) > max_side_e) return false;
        if (std::popcount(restE) <= big_threshold) return true; // a small side may finish it
        for (const auto& [bv, be] : big_sides)
            if ((restV & ~bv) == 0 && (restE & ~be) == 0) return true;
        return false;
    }

    // Returns false if adding this side would complete a covering triple;
    // the state is only modified on success.
    bool push(std::uint64_t Av) {
        std::uint64_t Ae = ctx.induced_edges(Av);
        if (full_cover(Av, Ae)) return false;
        for (const auto& [sv, se] : singles)
            if (full_cover(sv | Av, se | Ae)) return false;
        for (const auto& [pv, pe] : pairs)
            if (full_cover(pv | Av, pe | Ae)) return false;
        for (const auto& [sv, se] : singles) {
            std::uint64_t uv = sv | Av, ue = se | Ae;
            if (!completable(uv, ue)) continue;
            if (pair_keys.insert(key(uv, ue)).second) pairs.push_back({uv, ue});
        }
        singles.push_back({Av, Ae});
        return true;
    }

    void mark() { marks.push_back({singles.size(), pairs.size()}); }

    void rollback() {
        auto [ss, ps] = marks.back();
        marks.pop_back();
        while (pairs.size() > ps) {
            pair_keys.erase(key(pairs.back().first, pairs.back().second));
            pairs.pop_back();
        }
        singles.resize(ss);
    }
};

namespace {

inline bool orient_rec(CoverChecker& chk, const std::vector<MaskSeparation>& seps,
                       const std::vector<std::size_t>& proper, std::size_t pos,
                       std::vector<char>& choice) {
    if (pos == proper.size()) return true;
    const auto& s = seps[proper[pos]];
    for (char c = 1; c <= 2; ++c) {
        chk.mark();
        if (chk.push(c == 1 ? s.A : s.B)) {
            choice[proper[pos]] = c;
            if (orient_rec(chk, seps, proper, pos + 1, choice)) return true;
        }
        chk.rollback();
    }
    return false;
}

} // namespace

inline std::optional<std::vector<char>> orient_search(const TangleContext& ctx,
                                                      const std::vector<MaskSeparation>& seps) {
    CoverChecker chk(ctx);
    {
        std::vector<std::uint64_t> universe;
        universe.reserve(seps.size() * 2);
        for (const auto& s : seps) {
            if (s.A != ctx.fullV) universe.push_back(s.A);
            if (s.B != ctx.fullV) universe.push_back(s.B);
        }
        chk.set_universe(universe);
    }
    std::vector<std::size_t> proper;
    std::vector<char> choice(seps.size(), 0); // 1 = A first, 2 = B first
    for (std::size_t i = 0; i < seps.size(); ++i) {
        const auto& s = seps[i];
        if (s.A == ctx.fullV && s.B == ctx.fullV) return std::nullopt;
        if (s.B == ctx.fullV) {
            if (!chk.push(s.A)) return std::nullopt; // forced orientation conflicts
            choice[i] = 1;
        } else if (s.A == ctx.fullV) {
            if (!chk.push(s.B)) return std::nullopt;
            choice[i] = 2;
        } else {
            proper.push_back(i);
        }
    }
    // most-constrained first: larger separators first
    std::sort(proper.begin(), proper.end(), [&](std::size_t a, std::size_t b) {
        if (seps[a].order != seps[b].order) return seps[a].order > seps[b].order;
        return a < b;
    });
    if (!orient_rec(chk, seps, proper, 0, choice)) return std::nullopt;
    return choice;
}

} // namespace detail

struct TangleOptions {
    int vertex_budget = 10;
};

// All separations of order < k, one per unordered pair, deterministically
// ordered by (order, sides).
inline std::vector<Separation> enumerate_separations(const Graph& g, int k,
                                                     const TangleOptions& opts = {}) {
    if (k < 1) throw invalid_parameter("enumerate_separations: order must be positive");
    if (g.num_vertices() > static_cast<std::size_t>(opts.vertex_budget))
        throw resource_limit("enumerate_separations: vertex budget exceeded");
    detail::TangleContext ctx(g);
    std::vector<Separation> out;
    for (const auto& s : detail::enumerate_mask_separations(ctx, k))
        out.push_back({ctx.set_of(s.A), ctx.set_of(s.B)});
    return out;
}

// Checks that `t` orients exactly the separations of order < t.order and
// satisfies the tangle condition (no three listed first components cover all
// vertices and edges).
inline bool tangle_valid(const Graph& g, const Tangle& t, std::string* why = nullptr) {
    detail::TangleContext ctx(g);
    auto seps = detail::enumerate_mask_separations(ctx, t.order);
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> expected;
    for (const auto& s : seps) expected[{std::min(s.A, s.B), std::max(s.A, s.B)}] += 1;
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> got;
    std::vector<std::uint64_t> sides;
    for (const auto& s : t.oriented) {
        std::uint64_t A = ctx.mask_of(s.A), B = ctx.mask_of(s.B);
        got[{std::min(A, B), std::max(A, B)}] += 1;
        sides.push_back(A);
    }
    if (expected != got) {
        if (why) *why = "oriented set does not match the separations of order < k";
        return false;
    }
    detail::CoverChecker chk(ctx);
    chk.set_universe(sides);
    for (std::uint64_t A : sides)
        if (!chk.push(A)) {
            if (why) *why = "three chosen sides cover the graph";
            return false;
        }
    return true;
}

// Largest k admitting a tangle of order k (0 if none).
inline int max_tangle_order(const Graph& g, const TangleOptions& opts = {}) {
    if (g.num_vertices() > static_cast<std::size_t>(opts.vertex_budget))
        throw resource_limit("max_tangle_order: vertex budget exceeded");
    detail::TangleContext ctx(g);
    int best = 0;
    for (int k = 1; k <= static_cast<int>(ctx.n) + 1; ++k) {
        auto seps = detail::enumerate_mask_separations(ctx, k);
        if (!detail::orient_search(ctx, seps)) break;
        best = k;
    }
    return best;
}

// A tangle of order k, if one exists.
inline std::optional<Tangle> find_tangle(const Graph& g, int k,
                                         const TangleOptions& opts = {}) {
    if (k < 1) throw invalid_parameter("find_tangle: order must be positive");
    if (g.num_vertices() > static_cast<std::size_t>(opts.vertex_budget))
        throw resource_limit("find_tangle: vertex budget exceeded");
    detail::TangleContext ctx(g);
    auto seps = detail::enumerate_mask_separations(ctx, k);
    auto choice = detail::orient_search(ctx, seps);
    if (!choice) return std::nullopt;
    Tangle t;
    t.order = k;
    for (std::size_t i = 0; i < seps.size(); ++i) {
        std::uint64_t first = (*choice)[i] == 1 ? seps[i].A : seps[i].B;
        std::uint64_t second = (*choice)[i] == 1 ? seps[i].B : seps[i].A;
        t.oriented.push_back({ctx.set_of(first), ctx.set_of(second)});
    }
    if (!tangle_valid(g, t)) throw internal_error("find_tangle produced an invalid tangle");
    return t;
}

namespace detail {

inline std::map<std::pair<std::uint64_t, std::uint64_t>, bool>
orientation_map(const TangleContext& ctx, const Tangle& t) {
    // key: (min, max) mask pair; value: whether the min-mask side is first.
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> out;
    for (const auto& s : t.oriented) {
        std::uint64_t A = ctx.mask_of(s.A), B = ctx.mask_of(s.B);
        out[{std::min(A, B), std::max(A, B)}] = A <= B;
    }
    return out;
}

} // namespace detail

// Projects a tangle of g onto the torso at node t of a tree decomposition:
// every torso separation lifts to one of g by sending each branch of the
// decomposition tree to the side containing its adhesion set (a clique in
// the torso, hence never split), and inherits that orientation.
inline Tangle project_tangle(const Graph& g, const TreeDecomposition& td, int t,
                             const Tangle& tg, const TangleOptions& opts = {}) {
    if (!td_valid(g, td)) throw invalid_parameter("project_tangle: invalid tree decomposition");
    if (t < 0 || t >= static_cast<int>(td.bags.size()))
        throw invalid_parameter("project_tangle: unknown node");
    // adhesion sets at t and the branch vertex sets behind them
    auto adj = detail::td_adjacency(td);
    std::vector<std::set<int>> zs, branches;
    {
        std::vector<char> seen(td.bags.size(), 0);
        seen[t] = 1;
        for (int nb : adj[t]) {
            if (seen[nb]) continue;
            std::set<int> branch;
            std::vector<int> stack{nb};
            seen[nb] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                branch.insert(td.bags[x].begin(), td.bags[x].end());
                for (int y : adj[x])
                    if (!seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
            std::set<int> z;
            for (int v : td.bags[t])
                if (td.bags[nb].count(v)) z.insert(v);
            for (int v : td.bags[t]) branch.erase(v);
            zs.push_back(z);
            branches.push_back(branch);
        }
    }
    int r = 0;
    for (auto& z : zs) r = std::max(r, static_cast<int>(z.size()));
    if (tg.order <= r)
        throw invalid_parameter("project_tangle: tangle order must exceed the adhesion");

    Graph to = torso(g, td, t);
    for (auto& z : zs)
        for (int a : z)
            for (int b : z)
                if (a < b && !to.has_edge(a, b))
                    throw internal_error("adhesion set not a clique in torso");

    detail::TangleContext gctx(g);
    auto omap = detail::orientation_map(gctx, tg);

    detail::TangleContext tctx(to);
    auto tseps = detail::enumerate_mask_separations(tctx, tg.order);
    Tangle out;
    out.order = tg.order;
    for (const auto& ms : tseps) {
        std::set<int> A = tctx.set_of(ms.A), B = tctx.set_of(ms.B);
        std::set<int> Ag = A, Bg = B;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            bool inA = std::all_of(zs[i].begin(), zs[i].end(),
                                   [&](int v) { return A.count(v) > 0; });
            bool inB = std::all_of(zs[i].begin(), zs[i].end(),
                                   [&](int v) { return B.count(v) > 0; });
            if (!inA && !inB) throw internal_error("adhesion clique split by a separation");
            auto& side = inA ? Ag : Bg;
            side.insert(branches[i].begin(), branches[i].end());
        }
        std::uint64_t Am = gctx.mask_of(Ag), Bm = gctx.mask_of(Bg);
        auto it = omap.find({std::min(Am, Bm), std::max(Am, Bm)});
        if (it == omap.end())
            throw invalid_parameter("project_tangle: tangle does not orient a lifted separation");
        bool a_first = (Am <= Bm) == it->second;
        if (a_first) out.oriented.push_back({A, B});
        else out.oriented.push_back({B, A});
    }
    if (!tangle_valid(to, out)) throw internal_error("projected orientation is not a tangle");
    (void)opts;
    return out;
}

// Lifts a tangle of order t in g to one of order t*k in blowup(g, k): every
// low-order separation of the blow-up keeps each vertex clique whole, so it
// collapses to a separation of g and inherits its orientation.
inline Tangle blowup_tangle(const Graph& g, const Tangle& tg, int k,
                            const TangleOptions& opts = {}) {
    if (k < 1) throw invalid_parameter("blowup_tangle: k must be positive");
    Graph h = blowup(g, k);
    if (h.num_vertices() > static_cast<std::size_t>(opts.vertex_budget))
        throw resource_limit("blowup_tangle: vertex budget exceeded");
    detail::TangleContext gctx(g);
    auto omap = detail::orientation_map(gctx, tg);
    detail::TangleContext hctx(h);
    int korder = tg.order * k;
    auto hseps = detail::enumerate_mask_separations(hctx, korder);
    Tangle out;
    out.order = korder;
    for (const auto& ms : hseps) {
        std::set<int> A = hctx.set_of(ms.A), B = hctx.set_of(ms.B);
        std::set<int> Ag, Bg;
        for (int v : g.vertices()) {
            bool allA = true, allB = true;
            for (int j = 0; j < k; ++j) {
                if (!A.count(v * k + j)) allA = false;
                if (!B.count(v * k + j)) allB = false;
            }
            if (!allA && !allB)
                throw internal_error("blow-up separation splits a clique copy");
            if (allA) Ag.insert(v);
            if (allB) Bg.insert(v);
        }
        std::uint64_t Am = gctx.mask_of(Ag), Bm = gctx.mask_of(Bg);
        auto it = omap.find({std::min(Am, Bm), std::max(Am, Bm)});
        if (it == omap.end())
            throw invalid_parameter("blowup_tangle: tangle does not orient a collapsed separation");
        bool a_first = (Am <= Bm) == it->second;
        if (a_first) out.oriented.push_back({A, B});
        else out.oriented.push_back({B, A});
    }
    if (!tangle_valid(h, out)) throw internal_error("blow-up orientation is not a tangle");
    return out;
}

} // namespace bw

#endif
