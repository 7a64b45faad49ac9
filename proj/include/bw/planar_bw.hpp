#ifndef BW_PLANAR_BW_HPP
#define BW_PLANAR_BW_HPP

#include "bw/slope.hpp"

namespace bw {

struct PlanarBwOptions {
    // Decide slope existence by brute force over all assignments instead of
    // the propagation search.  Much slower; kept as an independent route.
    bool exhaustive_engine = false;
    std::size_t exhaustive_cycle_cap = 22;
    SlopeOptions slope;
};

namespace detail {

inline bool slope_exists_exhaustive(const RadialGraph& r, int k,
                                    const PlanarBwOptions& opts) {
    RadialView view(r);
    auto cycles = enumerate_radial_cycles(r, k, opts.slope);
    auto thetas = enumerate_theta_triples(view, cycles, k, opts.slope);

    // squares are pinned by uniformity; enumerate the rest
    std::vector<signed char> fixed(cycles.size(), -1);
    if (k > 2) {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < cycles.size(); ++i) index[cycles[i].verts] = i;
        for (std::size_t f = 0; f < view.nfaces; ++f) {
            std::vector<int> w;
            for (auto& de : r.radial_embedding.faces[f]) w.push_back(de.first);
            std::size_t ci = index.at(canonical_cycle(w));
            fixed[ci] = (cycles[ci].side1 >> f & 1ull) ? 1 : 0;
        }
    }
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (fixed[i] == -1) free_vars.push_back(i);
    if (free_vars.size() > opts.exhaustive_cycle_cap)
        throw resource_limit("exhaustive slope engine: too many cycles");

    std::vector<char> choice(cycles.size(), 0);
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (fixed[i] != -1) choice[i] = static_cast<char>(fixed[i]);
    auto ins = [&](std::size_t i) { return choice[i] ? cycles[i].side1 : cycles[i].side0; };

    const std::uint64_t total = 1ull << free_vars.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (std::size_t i = 0; i < free_vars.size(); ++i)
            choice[free_vars[i]] = static_cast<char>(bits >> i & 1);
        bool ok = true;
        for (std::size_t i = 0; i < cycles.size() && ok; ++i)
            for (std::size_t j = i + 1; j < cycles.size(); ++j)
                if ((ins(i) | ins(j)) == view.all_faces) {
                    ok = false;
                    break;
                }
        for (std::size_t t = 0; t < thetas.size() && ok; ++t)
            if ((ins(thetas[t].c12) | ins(thetas[t].c23) | ins(thetas[t].c31)) ==
                view.all_faces)
                ok = false;
        if (ok) {
            Slope s;
            s.order = k;
            s.choice = choice;
            if (verify_slope(r, k, s, opts.slope))
                throw internal_error("exhaustive engine found an invalid slope");
            return true;
        }
    }
    return false;
}

inline bool slope_exists(const RadialGraph& r, int k, const PlanarBwOptions& opts) {
    if (opts.exhaustive_engine) return slope_exists_exhaustive(r, k, opts);
    return find_slope(r, k, opts.slope).has_value();
}

} // namespace detail

// Exact branchwidth of a planar graph: branchwidth equals the largest order
// admitting a slope of the radial graph, evaluated blockwise (the
// branchwidth of a graph with a cycle is the worst over its blocks).
inline int planar_bw(const Graph& g, const PlanarBwOptions& opts = {}) {
    auto pr = planar_embed(g);
    if (!pr.planar) throw invalid_parameter("planar_bw: input graph is not planar");

    bool has_adjacent_edges = false;
    for (int v : g.vertices())
        if (g.degree(v) >= 2) has_adjacent_edges = true;
    if (!has_adjacent_edges) return 0; // components carry at most one edge each
    if (is_acyclic(g)) {
        // width 2 as soon as some edge is flanked by further edges on both
        // ends (its leaf already meets two vertices); stars stay at 1
        for (const auto& [u, v] : g.edges())
            if (g.degree(u) >= 2 && g.degree(v) >= 2) return 2;
        return 1;
    }

    int best = 2;
    for (const Graph& b : blocks(g)) {
        if (b.num_vertices() < 3) continue; // bridges never dominate
        auto pe = planar_embed(b);
        if (!pe.planar) throw internal_error("non-planar block of a planar graph");
        RadialGraph r = radial_graph(b, pe.embedding);
        int k = 2;
        while (detail::slope_exists(r, k + 1, opts)) ++k;
        best = std::max(best, k);
    }
    return best;
}

} // namespace bw

#endif
