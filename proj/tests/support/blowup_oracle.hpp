#ifndef BW_TESTS_BLOWUP_ORACLE_HPP
#define BW_TESTS_BLOWUP_ORACLE_HPP

#include "bw/exact.hpp"
#include "bw/generators.hpp"
#include "bw/tangle.hpp"

namespace bw::testsupport {

// Exact branchwidth of blowup(g, k) for bw(g) >= 2, by certificates checked
// with independent machinery: the constructed decomposition is evaluated by
// bd_width (upper bound), and the lifted tangle is validated against the
// full separation list (lower bound, via tangle-branchwidth duality).
// Small blow-ups go through the search oracle directly.
inline int certified_blowup_bw(const Graph& g, int k) {
    Graph h = blowup(g, k);
    BwOptions base_opts;
    base_opts.edge_budget = 16;
    auto base = exact_bw(g, base_opts);
    if (base.width < 2) throw invalid_parameter("certified_blowup_bw: need bw >= 2");

    if (h.num_edges() <= 26) {
        BwOptions opts;
        opts.edge_budget = 26;
        return exact_bw(h, opts).width;
    }

    // upper: the blown-up decomposition, measured by the width evaluator
    auto bd = blowup_bd(g, base.bd, k);
    int upper = bd_width(h, bd);

    // lower: a tangle of the blow-up of matching order, found by search and
    // validated against the full separation list
    TangleOptions topts;
    topts.vertex_budget = static_cast<int>(h.num_vertices());
    auto lifted = find_tangle(h, upper, topts);
    if (!lifted)
        throw internal_error("certified_blowup_bw: no blow-up tangle of order " +
                             std::to_string(upper));
    int lower = lifted->order;

    if (lower != upper)
        throw internal_error("certified_blowup_bw: certificates disagree (" +
                             std::to_string(lower) + " vs " + std::to_string(upper) + ")");
    return upper;
}

} // namespace bw::testsupport

#endif
