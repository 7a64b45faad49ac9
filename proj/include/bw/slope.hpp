#ifndef BW_SLOPE_HPP
#define BW_SLOPE_HPP

#include "bw/radial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace bw {

// A cycle of the radial graph together with the two closed disks it bounds,
// each represented as the set of radial faces inside it.
struct RadialCycle {
    std::vector<int> verts;            // canonical cyclic order
    std::uint64_t side0 = 0, side1 = 0; // radial-face masks; side0 contains face 0
};

// Disk assignment for every radial cycle shorter than 2k; entry i chooses
// side0 or side1 of cycle i in the deterministic cycle enumeration.
struct Slope {
    int order = 0;
    std::vector<char> choice;
};

struct SlopeViolation {
    enum Kind { DiskCover, ThetaCover, NonUniform } kind;
    std::vector<std::size_t> cycles; // involved cycle indices
    std::size_t face = 0;            // radial face for NonUniform

    std::string describe() const {
        switch (kind) {
            case DiskCover: return "two chosen disks cover the sphere";
            case ThetaCover: return "three path-pair disks cover the sphere";
            case NonUniform: return "a square face lies outside its own cycle's disk";
        }
        return "";
    }
};

struct SlopeOptions {
    std::size_t cycle_budget = 200000;
    std::size_t path_budget = 2000000;
};

namespace detail {

inline std::vector<int> canonical_cycle(std::vector<int> w) {
    auto mn = std::min_element(w.begin(), w.end());
    std::rotate(w.begin(), mn, w.end());
    if (w.size() > 2 && w[1] > w.back()) {
        std::reverse(w.begin() + 1, w.end());
    }
    return w;
}

struct RadialView {
    const RadialGraph& r;
    Indexer ix;                        // over radial vertices
    std::vector<std::vector<int>> adj; // dense indices
    std::map<std::pair<int, int>, std::size_t> face_of; // directed radial edge -> face
    std::size_t nfaces;
    std::uint64_t all_faces;

    explicit RadialView(const RadialGraph& rg) : r(rg), ix(rg.radial) {
        if (ix.size() > 64) throw resource_limit("radial graph over 64 vertices");
        adj = adjacency(rg.radial, ix);
        nfaces = rg.radial_embedding.faces.size();
        if (nfaces > 64) throw resource_limit("radial graph over 64 faces");
        all_faces = nfaces == 64 ? ~0ull : (1ull << nfaces) - 1;
        for (std::size_t f = 0; f < nfaces; ++f)
            for (auto& de : rg.radial_embedding.faces[f]) face_of[de] = f;
    }

    // the two regions the cycle cuts the sphere into, as face masks
    std::pair<std::uint64_t, std::uint64_t> sides(const std::vector<int>& verts) const {
        std::set<Edge> on_cycle;
        for (std::size_t i = 0; i < verts.size(); ++i)
            on_cycle.insert(make_edge(verts[i], verts[(i + 1) % verts.size()]));
        // face adjacency across non-cycle edges
        std::vector<std::uint64_t> region;
        std::vector<char> assigned(nfaces, 0);
        for (std::size_t start = 0; start < nfaces; ++start) {
            if (assigned[start]) continue;
            std::uint64_t mask = 0;
            std::vector<std::size_t> stack{start};
            assigned[start] = 1;
            while (!stack.empty()) {
                std::size_t f = stack.back();
                stack.pop_back();
                mask |= 1ull << f;
                for (auto& [a, b] : r.radial_embedding.faces[f]) {
                    if (on_cycle.count(make_edge(a, b))) continue;
                    std::size_t g = face_of.at({b, a});
                    if (!assigned[g]) {
                        assigned[g] = 1;
                        stack.push_back(g);
                    }
                }
            }
            region.push_back(mask);
        }
        if (region.size() != 2) throw internal_error("cycle does not cut the sphere in two");
        if (region[0] & 1ull) return {region[0], region[1]};
        return {region[1], region[0]};
    }
};

} // namespace detail

// All simple cycles of the radial graph shorter than 2k, canonically ordered.
inline std::vector<RadialCycle> enumerate_radial_cycles(const RadialGraph& r, int k,
                                                        const SlopeOptions& opts = {}) {
    detail::RadialView view(r);
    const int max_len = 2 * k - 1; // cycles of length < 2k
    std::set<std::vector<int>> seen;
    std::size_t n = view.ix.size();
    std::vector<int> path;
    std::vector<char> used(n, 0);
    std::size_t count = 0;

    std::vector<std::vector<int>> found;
    // start = smallest dense index on the cycle
    for (std::size_t s = 0; s < n; ++s) {
        path = {static_cast<int>(s)};
        used.assign(n, 0);
        used[s] = 1;
        // iterative DFS over neighbor choice indices
        std::vector<std::size_t> iter{0};
        while (!iter.empty()) {
            int v = path.back();
            if (iter.back() >= view.adj[v].size()) {
                iter.pop_back();
                used[v] = 0;
                path.pop_back();
                continue;
            }
            int w = view.adj[v][iter.back()++];
            if (w == static_cast<int>(s) && path.size() >= 3) {
                if (++count > opts.cycle_budget)
                    throw resource_limit("radial cycle budget exceeded");
                std::vector<int> cyc;
                for (int x : path) cyc.push_back(view.ix.label(x));
                auto canon = detail::canonical_cycle(cyc);
                if (seen.insert(canon).second) found.push_back(canon);
                continue;
            }
            if (w <= static_cast<int>(s) || used[w]) continue;
            if (path.size() >= static_cast<std::size_t>(max_len)) continue;
            used[w] = 1;
            path.push_back(w);
            iter.push_back(0);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<RadialCycle> out;
    for (auto& verts : found) {
        RadialCycle c;
        c.verts = verts;
        auto [s0, s1] = view.sides(verts);
        c.side0 = s0;
        c.side1 = s1;
        out.push_back(std::move(c));
    }
    return out;
}

namespace detail {

struct ThetaTriple {
    std::size_t c12, c23, c31;
};

// All triples of internally disjoint paths between two vertices whose three
// union cycles are all shorter than 2k, reported as cycle index triples.
inline std::vector<ThetaTriple> enumerate_theta_triples(
    const RadialView& view, const std::vector<RadialCycle>& cycles, int k,
    const SlopeOptions& opts) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < cycles.size(); ++i) index[cycles[i].verts] = i;

    std::vector<ThetaTriple> out;
    std::set<std::array<std::size_t, 3>> dedup;
    const std::size_t n = view.ix.size();
    const int max_path = 2 * k - 3;
    if (max_path < 1) return out;
    std::size_t steps = 0;

    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            // enumerate simple x-y paths of length <= max_path
            struct P {
                std::vector<int> verts; // x..y dense
                std::uint64_t internal; // internal vertex mask
            };
            std::vector<P> paths;
            std::vector<int> path{static_cast<int>(x)};
            std::vector<char> used(n, 0);
            used[x] = 1;
            std::vector<std::size_t> iter{0};
            while (!iter.empty()) {
                int v = path.back();
                if (iter.back() >= view.adj[v].size()) {
                    iter.pop_back();
                    used[v] = 0;
                    path.pop_back();
                    continue;
                }
                if (++steps > opts.path_budget)
                    throw resource_limit("radial path budget exceeded");
                int w = view.adj[v][iter.back()++];
                if (w == static_cast<int>(y)) {
                    std::uint64_t internal = 0;
                    for (std::size_t i = 1; i < path.size(); ++i)
                        internal |= 1ull << path[i];
                    auto verts = path;
                    verts.push_back(w);
                    paths.push_back({verts, internal});
                    continue;
                }
                if (used[w] || w == static_cast<int>(x)) continue;
                if (path.size() > static_cast<std::size_t>(max_path) - 1) continue;
                used[w] = 1;
                path.push_back(w);
                iter.push_back(0);
            }
            // triples
            auto cyc_of = [&](const P& a, const P& b) -> std::size_t {
                std::vector<int> w;
                for (std::size_t i = 0; i + 1 < a.verts.size(); ++i)
                    w.push_back(view.ix.label(a.verts[i]));
                for (std::size_t i = b.verts.size() - 1; i >= 1; --i)
                    w.push_back(view.ix.label(b.verts[i]));
                return index.at(canonical_cycle(w));
            };
            for (std::size_t i = 0; i < paths.size(); ++i)
                for (std::size_t j = i + 1; j < paths.size(); ++j) {
                    if (paths[i].internal & paths[j].internal) continue;
                    std::size_t lij = paths[i].verts.size() + paths[j].verts.size() - 2;
                    if (lij >= 2 * static_cast<std::size_t>(k)) continue;
                    for (std::size_t l = j + 1; l < paths.size(); ++l) {
                        if ((paths[i].internal | paths[j].internal) & paths[l].internal)
                            continue;
                        std::size_t lil = paths[i].verts.size() + paths[l].verts.size() - 2;
                        std::size_t ljl = paths[j].verts.size() + paths[l].verts.size() - 2;
                        if (lil >= 2 * static_cast<std::size_t>(k) ||
                            ljl >= 2 * static_cast<std::size_t>(k))
                            continue;
                        ThetaTriple t{cyc_of(paths[i], paths[j]), cyc_of(paths[j], paths[l]),
                                      cyc_of(paths[l], paths[i])};
                        std::array<std::size_t, 3> key{t.c12, t.c23, t.c31};
                        std::sort(key.begin(), key.end());
                        if (dedup.insert(key).second) out.push_back(t);
                    }
                }
        }
    }
    return out;
}

} // namespace detail

// Checks the three slope consistency conditions; returns the first violation
// found or nothing when the assignment is a valid slope of order k.
inline std::optional<SlopeViolation> verify_slope(const RadialGraph& r, int k,
                                                  const Slope& s,
                                                  const SlopeOptions& opts = {}) {
    detail::RadialView view(r);
    auto cycles = enumerate_radial_cycles(r, k, opts);
    if (s.choice.size() != cycles.size() || s.order != k)
        throw invalid_parameter("verify_slope: assignment does not match the cycles of order < 2k");
    auto ins = [&](std::size_t i) { return s.choice[i] ? cycles[i].side1 : cycles[i].side0; };

    // two disks covering the sphere
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j)
            if ((ins(i) | ins(j)) == view.all_faces)
                return SlopeViolation{SlopeViolation::DiskCover, {i, j}, 0};

    // three internally disjoint paths whose disks cover the sphere
    auto thetas = detail::enumerate_theta_triples(view, cycles, k, opts);
    for (auto& t : thetas)
        if ((ins(t.c12) | ins(t.c23) | ins(t.c31)) == view.all_faces)
            return SlopeViolation{SlopeViolation::ThetaCover, {t.c12, t.c23, t.c31}, 0};

    // uniformity: every short square boundary keeps its own face inside
    if (k > 2) {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < cycles.size(); ++i) index[cycles[i].verts] = i;
        for (std::size_t f = 0; f < view.nfaces; ++f) {
            std::vector<int> w;
            for (auto& de : r.radial_embedding.faces[f]) w.push_back(de.first);
            auto it = index.find(detail::canonical_cycle(w));
            if (it == index.end()) throw internal_error("square cycle not enumerated");
            if (!(ins(it->second) >> f & 1ull))
                return SlopeViolation{SlopeViolation::NonUniform, {it->second}, f};
        }
    }
    return std::nullopt;
}

namespace detail {

// Tiny complete solver over binary variables with "forbidden combination"
// clauses of size <= 3, specialized for the slope search.
struct SlopeSat {
    struct Lit {
        std::size_t var;
        char val; // clause satisfied if variable == val
    };
    std::size_t nvars;
    std::vector<std::vector<Lit>> clauses;
    std::vector<std::vector<std::size_t>> occur;
    std::vector<signed char> assign;

    explicit SlopeSat(std::size_t n) : nvars(n), occur(n), assign(n, -1) {}

    void add_clause(std::vector<Lit> c) {
        for (auto& l : c) occur[l.var].push_back(clauses.size());
        clauses.push_back(std::move(c));
    }

    // returns false on conflict
    bool propagate(std::vector<std::size_t>& trail, std::size_t from) {
        for (std::size_t qi = from; qi < trail.size(); ++qi) {
            for (std::size_t ci : occur[trail[qi]]) {
                const auto& c = clauses[ci];
                bool sat = false;
                std::size_t unassigned = 0;
                const Lit* free_lit = nullptr;
                for (const auto& l : c) {
                    if (assign[l.var] == -1) {
                        ++unassigned;
                        free_lit = &l;
                    } else if (assign[l.var] == l.val) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign[free_lit->var] = free_lit->val;
                    trail.push_back(free_lit->var);
                }
            }
        }
        return true;
    }

    bool solve_rec(std::vector<std::size_t>& order, std::size_t pos) {
        while (pos < order.size() && assign[order[pos]] != -1) ++pos;
        if (pos == order.size()) return true;
        std::size_t v = order[pos];
        for (char val = 0; val < 2; ++val) {
            std::vector<std::size_t> trail{v};
            assign[v] = val;
            if (propagate(trail, 0) && solve_rec(order, pos + 1)) return true;
            for (std::size_t x : trail) assign[x] = -1;
        }
        return false;
    }

    bool solve() {
        // unit clauses first
        std::vector<std::size_t> trail;
        for (std::size_t ci = 0; ci < clauses.size(); ++ci)
            if (clauses[ci].size() == 1) {
                auto [var, val] = clauses[ci][0];
                if (assign[var] == -1) {
                    assign[var] = val;
                    trail.push_back(var);
                } else if (assign[var] != val) {
                    return false;
                }
            }
        if (!propagate(trail, 0)) return false;
        std::vector<std::size_t> order(nvars);
        for (std::size_t i = 0; i < nvars; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (occur[a].size() != occur[b].size()) return occur[a].size() > occur[b].size();
            return a < b;
        });
        return solve_rec(order, 0);
    }
};

} // namespace detail

// Searches for a slope of order k; std::nullopt is a proof of exhaustion.
inline std::optional<Slope> find_slope(const RadialGraph& r, int k,
                                       const SlopeOptions& opts = {}) {
    if (k < 1) throw invalid_parameter("find_slope: order must be positive");
    detail::RadialView view(r);
    auto cycles = enumerate_radial_cycles(r, k, opts);
    detail::SlopeSat sat(cycles.size());
    auto side = [&](std::size_t i, char c) { return c ? cycles[i].side1 : cycles[i].side0; };

    // uniformity units
    if (k > 2) {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < cycles.size(); ++i) index[cycles[i].verts] = i;
        for (std::size_t f = 0; f < view.nfaces; ++f) {
            std::vector<int> w;
            for (auto& de : r.radial_embedding.faces[f]) w.push_back(de.first);
            std::size_t ci = index.at(detail::canonical_cycle(w));
            char val = (cycles[ci].side1 >> f & 1ull) ? 1 : 0;
            sat.add_clause({{ci, val}});
        }
    }
    // pairwise disk covers
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j)
            for (char a = 0; a < 2; ++a)
                for (char b = 0; b < 2; ++b)
                    if ((side(i, a) | side(j, b)) == view.all_faces)
                        sat.add_clause({{i, static_cast<char>(1 - a)},
                                        {j, static_cast<char>(1 - b)}});
    // theta covers
    for (auto& t : detail::enumerate_theta_triples(view, cycles, k, opts)) {
        std::size_t idx[3] = {t.c12, t.c23, t.c31};
        for (char a = 0; a < 2; ++a)
            for (char b = 0; b < 2; ++b)
                for (char c = 0; c < 2; ++c)
                    if ((side(idx[0], a) | side(idx[1], b) | side(idx[2], c)) ==
                        view.all_faces)
                        sat.add_clause({{idx[0], static_cast<char>(1 - a)},
                                        {idx[1], static_cast<char>(1 - b)},
                                        {idx[2], static_cast<char>(1 - c)}});
    }
    if (!sat.solve()) return std::nullopt;
    Slope s;
    s.order = k;
    s.choice.assign(cycles.size(), 0);
    for (std::size_t i = 0; i < cycles.size(); ++i)
        s.choice[i] = sat.assign[i] == 1 ? 1 : 0;
    if (verify_slope(r, k, s, opts)) throw internal_error("found slope fails verification");
    return s;
}

} // namespace bw

#endif
