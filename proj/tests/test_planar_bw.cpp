#include <catch2/catch_amalgamated.hpp>

#include "bw/exact.hpp"
#include "bw/generators.hpp"
#include "bw/planar_bw.hpp"

#include <random>

using namespace bw;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph random_planar(std::mt19937& rng, int n, int extra_edges) {
    // random spanning tree plus edges kept only if the result stays planar
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i)
        g.add_edge(order[i], order[rng() % static_cast<unsigned>(i)]);
    int added = 0, attempts = 0;
    while (added < extra_edges && attempts < 200) {
        ++attempts;
        int u = static_cast<int>(rng() % static_cast<unsigned>(n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (u == v || g.has_edge(u, v)) continue;
        Graph trial = g;
        trial.add_edge(u, v);
        if (is_planar(trial)) {
            g = trial;
            ++added;
        }
    }
    return g;
}

} // namespace

TEST_CASE("planar branchwidth on named graphs") {
    CHECK(planar_bw(cycle(4)) == 2);
    CHECK(planar_bw(clique(4)) == 3);
    CHECK(planar_bw(cycle(3)) == 2);
    CHECK(planar_bw(grid(3, 3)) == 3);
    CHECK(planar_bw(grid(4, 4)) == 4);
    CHECK(planar_bw(clique(2)) == 0);
    CHECK(planar_bw(crosscap_grid(1)) == 3);
    Graph p3;
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(planar_bw(p3) == 1);
    Graph empty;
    CHECK(planar_bw(empty) == 0);
    CHECK_THROWS_AS(planar_bw(clique(5)), invalid_parameter);
}

TEST_CASE("grid 4x4 exact cross-check at a raised budget") {
    Graph g = grid(4, 4);
    BwOptions opts;
    opts.edge_budget = 24;
    auto r = exact_bw(g, opts);
    CHECK(r.width == 4);
    CHECK(bd_width(g, r.bd) == 4);
}

TEST_CASE("planar_bw agrees with the exact oracle on random planar graphs") {
    std::mt19937 rng(53);
    for (int t = 0; t < 25; ++t) {
        Graph g = random_planar(rng, 4 + static_cast<int>(rng() % 5),
                                static_cast<int>(rng() % 6));
        if (g.num_edges() > 16) continue;
        BwOptions eo;
        CAPTURE(graph_to_string(g));
        CHECK(planar_bw(g) == exact_bw(g).width);
    }
}

TEST_CASE("block law for planar branchwidth") {
    // two C4 sharing a vertex, plus a pendant edge
    Graph g = cycle(4);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 3);
    g.add_edge(0, 9);
    int expect = 0;
    for (const Graph& b : blocks(g)) expect = std::max(expect, planar_bw(b));
    CHECK(planar_bw(g) == expect);
    CHECK(planar_bw(g) == 2);
}

TEST_CASE("the exhaustive fallback engine agrees") {
    PlanarBwOptions ex;
    ex.exhaustive_engine = true;
    CHECK(planar_bw(cycle(4), ex) == 2);
    CHECK(planar_bw(clique(4), ex) == 3);
    Graph diamond;
    diamond.add_edge(0, 1);
    diamond.add_edge(0, 2);
    diamond.add_edge(1, 2);
    diamond.add_edge(1, 3);
    diamond.add_edge(2, 3);
    CHECK(planar_bw(diamond, ex) == 2);
    CHECK(planar_bw(diamond) == 2);
}
