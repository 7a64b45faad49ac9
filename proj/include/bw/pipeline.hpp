#ifndef BW_PIPELINE_HPP
#define BW_PIPELINE_HPP

#include "bw/exact.hpp"
#include "bw/planar_bw.hpp"
#include "bw/tangle.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace bw {

struct DecomposeResult {
    bool success = false;
    TreeDecomposition td; // valid iff success
    Graph witness;        // iff !success: a non-planar piece admitting no cut
};

namespace detail {

// Rooted triangle minor: three disjoint connected branch sets, one around
// each root, pairwise joined by an edge of h.  Bounded complete search over
// assignments of the non-root vertices.
inline bool rooted_triangle_minor(const Graph& h, const std::array<int, 3>& roots,
                                  std::size_t cap = 1 << 20) {
    std::vector<int> pool;
    for (int v : h.vertices())
        if (v != roots[0] && v != roots[1] && v != roots[2]) pool.push_back(v);

    std::size_t total = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        total *= 4;
        if (total > cap) return false; // conservative refusal
    }
    std::vector<signed char> side(pool.size(), 0); // 0 unused, 1..3 branch
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            side[i] = static_cast<signed char>(c & 3);
            c >>= 2;
        }
        std::vector<std::set<int>> bs(3);
        for (int i = 0; i < 3; ++i) bs[i].insert(roots[i]);
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (side[i] > 0) bs[side[i] - 1].insert(pool[i]);
        bool ok = true;
        for (auto& s : bs) {
            std::set<int> seen{*s.begin()};
            std::vector<int> stack{*s.begin()};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : h.neighbors(v))
                    if (s.count(w) && !seen.count(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
            }
            if (seen.size() != s.size()) {
                ok = false;
                break;
            }
        }
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = i + 1; j < 3 && ok; ++j) {
                bool adj = false;
                for (int u : bs[i]) {
                    for (int w : bs[j])
                        if (h.has_edge(u, w)) {
                            adj = true;
                            break;
                        }
                    if (adj) break;
                }
                if (!adj) ok = false;
            }
        if (ok) return true;
    }
    return false;
}

struct Decomposer {
    const Graph& g;
    TreeDecomposition td;
    std::optional<Graph> failure;

    explicit Decomposer(const Graph& graph) : g(graph) {}

    // whether the missing clique edges M over S can be realized for a child,
    // given the donor components (all fully attached to S)
    bool realizable(const Graph& H, const std::set<int>& S,
                    const std::vector<Edge>& missing,
                    const std::vector<std::set<int>>& donors) const {
        if (missing.empty()) return true;
        if (donors.size() >= 2) return true;
        if (donors.empty()) return false;
        // single donor: a star pattern contracts into one vertex of S
        for (int s : S) {
            bool star = true;
            for (const auto& [a, b] : missing)
                if (a != s && b != s) star = false;
            if (star) return true;
        }
        // all three triangle edges missing: need a rooted triangle minor
        if (S.size() == 3 && missing.size() == 3) {
            std::set<int> keep = donors[0];
            keep.insert(S.begin(), S.end());
            std::array<int, 3> roots;
            std::copy(S.begin(), S.end(), roots.begin());
            return rooted_triangle_minor(H.induced(keep), roots);
        }
        return false;
    }

    // returns a node id of the created subtree, or -1 on failure
    int decompose(const Graph& H) {
        if (is_planar(H)) {
            td.bags.push_back(std::set<int>(H.vertices().begin(), H.vertices().end()));
            return static_cast<int>(td.bags.size()) - 1;
        }
        const auto& verts = H.vertices();
        const std::size_t n = verts.size();
        // candidate cuts by increasing size, lexicographic
        std::vector<std::vector<int>> cuts{{}};
        for (std::size_t a = 0; a < n; ++a) cuts.push_back({verts[a]});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) cuts.push_back({verts[a], verts[b]});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    cuts.push_back({verts[a], verts[b], verts[c]});
        std::stable_sort(cuts.begin(), cuts.end(),
                         [](const auto& x, const auto& y) { return x.size() < y.size(); });

        for (const auto& cut : cuts) {
            std::set<int> S(cut.begin(), cut.end());
            std::set<int> rest(verts.begin(), verts.end());
            for (int s : S) rest.erase(s);
            if (rest.empty()) continue;
            auto comps = connected_components(H.induced(rest));
            if (comps.size() < 2) continue;
            // full attachment: every s in S has a neighbor in every component
            bool attached = true;
            for (const auto& comp : comps) {
                for (int s : S) {
                    bool has = false;
                    for (int w : H.neighbors(s))
                        if (comp.count(w)) {
                            has = true;
                            break;
                        }
                    if (!has) {
                        attached = false;
                        break;
                    }
                }
                if (!attached) break;
            }
            if (!attached) continue;

            std::vector<Edge> missing;
            for (auto it = S.begin(); it != S.end(); ++it)
                for (auto jt = std::next(it); jt != S.end(); ++jt)
                    if (!H.has_edge(*it, *jt)) missing.push_back(make_edge(*it, *jt));

            bool all_ok = true;
            for (std::size_t i = 0; i < comps.size() && all_ok; ++i) {
                std::vector<std::set<int>> donors;
                for (std::size_t j = 0; j < comps.size(); ++j)
                    if (j != i) donors.push_back(comps[j]);
                if (!realizable(H, S, missing, donors)) all_ok = false;
            }
            if (!all_ok) continue;

            // accepted: recurse per component over the augmented piece
            std::vector<int> anchors;
            for (const auto& comp : comps) {
                std::set<int> piece = comp;
                piece.insert(S.begin(), S.end());
                Graph Hi = H.induced(piece);
                for (auto it = S.begin(); it != S.end(); ++it)
                    for (auto jt = std::next(it); jt != S.end(); ++jt)
                        if (!Hi.has_edge(*it, *jt)) Hi.add_edge(*it, *jt);
                std::size_t first = td.bags.size();
                if (decompose(Hi) < 0) return -1;
                int anchor = -1;
                for (std::size_t t = first; t < td.bags.size() && anchor < 0; ++t) {
                    bool all = true;
                    for (int s : S)
                        if (!td.bags[t].count(s)) all = false;
                    if (all) anchor = static_cast<int>(t);
                }
                if (anchor < 0) throw internal_error("no bag contains the cut clique");
                anchors.push_back(anchor);
            }
            for (std::size_t i = 1; i < anchors.size(); ++i)
                td.tree_edges.push_back({anchors[0], anchors[i]});
            return anchors[0];
        }
        if (!failure) failure = H;
        return -1;
    }
};

} // namespace detail

// Splits g along vertex cuts of size at most three into planar pieces.  The
// produced decomposition has adhesion <= 3, every torso planar, and every
// torso a minor of g (cuts are only accepted when the clique edges the torso
// adds are realizable by contracting other components).  Fails honestly on
// graphs outside this class, returning the offending piece.
inline DecomposeResult decompose_adhesion3(const Graph& g) {
    detail::Decomposer dec(g);
    DecomposeResult res;
    if (g.num_vertices() == 0) {
        res.success = true;
        res.td = single_bag_td(g);
        return res;
    }
    if (dec.decompose(g) < 0) {
        res.success = false;
        res.witness = *dec.failure;
        return res;
    }
    res.success = true;
    res.td = std::move(dec.td);
    if (!td_valid(g, res.td)) throw internal_error("decomposer produced an invalid decomposition");
    if (adhesion(res.td) > 3) throw internal_error("decomposer exceeded adhesion 3");
    return res;
}

struct ApproxResult {
    int lo = 0, hi = 0, b = 0;
    std::vector<std::pair<int, int>> per_torso; // (node id, torso branchwidth)
};

// Combines per-torso planar branchwidths into lower/upper bounds for bw(g):
// torsos are minors so their worst width is a lower bound; for width above
// three the decomposition collapses onto that value, otherwise the
// tree/branchwidth translation costs an additive three.
inline ApproxResult approx_bw(const Graph& g, const TreeDecomposition& td,
                              const PlanarBwOptions& opts = {}) {
    if (!td_valid(g, td)) throw invalid_parameter("approx_bw: invalid tree decomposition");
    if (adhesion(td) > 3) throw invalid_parameter("approx_bw: adhesion exceeds 3");
    ApproxResult res;
    for (std::size_t t = 0; t < td.bags.size(); ++t) {
        Graph to = torso(g, td, static_cast<int>(t));
        int w = planar_bw(to, opts); // throws invalid_parameter when not planar
        res.per_torso.push_back({static_cast<int>(t), w});
        res.b = std::max(res.b, w);
    }
    res.lo = res.b;
    res.hi = res.b > 3 ? res.b : res.b + 3;
    return res;
}

// Stable-order JSON report for the CLI.
inline std::string approx_report_json(const ApproxResult& r) {
    std::ostringstream out;
    out << "{\"lo\": " << r.lo << ", \"hi\": " << r.hi << ", \"b\": " << r.b
        << ", \"per_torso\": [";
    for (std::size_t i = 0; i < r.per_torso.size(); ++i) {
        if (i) out << ", ";
        out << "{\"node\": " << r.per_torso[i].first
            << ", \"bw\": " << r.per_torso[i].second << "}";
    }
    out << "]}";
    return out.str();
}

struct EptasOptions {
    BwOptions exact;
    PlanarBwOptions planar;
};

// (1+eps)-approximation: take the additive approximation; when the additive
// slack is already below eps*b it is good enough, otherwise the width is
// bounded and the exact oracle finishes the job.
inline int eptas_bw(const Graph& g, long eps_num, long eps_den, int additive_const,
                    const EptasOptions& opts = {}) {
    if (eps_num <= 0 || eps_den <= 0) throw invalid_parameter("eptas_bw: eps must be positive");
    if (additive_const < 0) throw invalid_parameter("eptas_bw: negative additive constant");
    auto dec = decompose_adhesion3(g);
    if (!dec.success) throw unsupported_input("eptas_bw: graph is not decomposable");
    ApproxResult ap = approx_bw(g, dec.td, opts.planar);
    long b = ap.lo;
    if (b > 0 && static_cast<long>(additive_const) * eps_den < eps_num * b)
        return static_cast<int>(b);
    return exact_bw(g, opts.exact).width;
}

// Turns any additive approximator into an exact algorithm by evaluating it
// on the (k+1)-fold blow-up and dividing.
inline int additive_to_exact(const Graph& g,
                             const std::function<int(const Graph&)>& approximator,
                             int k, const BwOptions& exact_opts = {}) {
    if (k < 0) throw invalid_parameter("additive_to_exact: k must be non-negative");
    if (is_acyclic(g)) return exact_bw(g, exact_opts).width; // width below 2
    int b = approximator(blowup(g, k + 1));
    return b / (k + 1);
}

} // namespace bw

#endif
