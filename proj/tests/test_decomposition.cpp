#include <catch2/catch_amalgamated.hpp>

#include "bw/decomposition.hpp"
#include "bw/exact.hpp"
#include "bw/generators.hpp"

#include <random>
#include <sstream>

using namespace bw;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph path3() {
    Graph g;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) g.add_edge(u, v);
    return g;
}

} // namespace

TEST_CASE("bd_width on hand-built decompositions") {
    SECTION("single edge, single node") {
        Graph g;
        g.add_edge(0, 1);
        BranchDecomposition bd;
        bd.node_count = 1;
        bd.leaf_map.push_back({0, {0, 1}});
        CHECK(bd_width(g, bd) == 0);
    }
    SECTION("P3 with two leaves joined by an edge") {
        Graph g = path3();
        BranchDecomposition bd;
        bd.node_count = 2;
        bd.tree_edges = {{0, 1}};
        bd.leaf_map = {{0, {0, 1}}, {1, {1, 2}}};
        CHECK(bd_width(g, bd) == 1);
    }
    SECTION("K3 star") {
        Graph g = clique(3);
        BranchDecomposition bd;
        bd.node_count = 4;
        bd.tree_edges = {{3, 0}, {3, 1}, {3, 2}};
        bd.leaf_map = {{0, {0, 1}}, {1, {0, 2}}, {2, {1, 2}}};
        CHECK(bd_width(g, bd) == 2);
    }
    SECTION("structural violations are rejected") {
        Graph g = path3();
        BranchDecomposition bd;
        bd.node_count = 2;
        bd.tree_edges = {{0, 1}};
        bd.leaf_map = {{0, {0, 1}}, {1, {0, 1}}}; // edge mapped twice
        CHECK_THROWS_AS(bd_width(g, bd), invalid_decomposition);

        bd.leaf_map = {{0, {0, 1}}};
        CHECK_THROWS_AS(bd_width(g, bd), invalid_decomposition);

        BranchDecomposition deg;
        deg.node_count = 3;
        deg.tree_edges = {{0, 1}, {1, 2}};
        deg.leaf_map = {{0, {0, 1}}, {2, {1, 2}}}; // node 1 has degree 2
        CHECK_THROWS_AS(bd_width(g, deg), invalid_decomposition);
    }
}

TEST_CASE("bd_width is invariant under node relabeling") {
    Graph g = clique(4);
    auto r = exact_bw(g);
    // relabel nodes by reversing ids
    BranchDecomposition rel;
    rel.node_count = r.bd.node_count;
    auto flip = [&](int v) { return rel.node_count - 1 - v; };
    for (auto [a, b] : r.bd.tree_edges) rel.tree_edges.push_back({flip(a), flip(b)});
    for (auto& [n, e] : r.bd.leaf_map) rel.leaf_map.push_back({flip(n), e});
    CHECK(bd_width(g, rel) == r.width);
}

TEST_CASE("validate_td") {
    Graph g = path3();
    SECTION("valid decomposition") {
        TreeDecomposition td;
        td.bags = {{0, 1}, {1, 2}};
        td.tree_edges = {{0, 1}};
        CHECK(validate_td(g, td).empty());
    }
    SECTION("uncovered vertex and edges") {
        TreeDecomposition td;
        td.bags = {{0}, {2}};
        td.tree_edges = {{0, 1}};
        auto v = validate_td(g, td);
        REQUIRE(v.size() == 3);
        int uncovered_edges = 0, uncovered_vertices = 0;
        for (auto& viol : v) {
            if (viol.kind == TdViolation::EdgeUncovered) ++uncovered_edges;
            if (viol.kind == TdViolation::VertexUncovered) {
                ++uncovered_vertices;
                CHECK(viol.vertex == 1);
            }
        }
        CHECK(uncovered_edges == 2);
        CHECK(uncovered_vertices == 1);
    }
    SECTION("disconnected holder set") {
        Graph c4 = cycle(4);
        TreeDecomposition td;
        td.bags = {{0, 1}, {2, 3}, {0, 3}};
        td.tree_edges = {{0, 1}, {1, 2}};
        auto v = validate_td(c4, td);
        bool found = false;
        for (auto& viol : v)
            if (viol.kind == TdViolation::BagsDisconnected && viol.vertex == 0) found = true;
        CHECK(found);
    }
}

TEST_CASE("torso") {
    Graph g = path3();
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    Graph t0 = torso(g, td, 0);
    CHECK(t0.num_edges() == 1);
    CHECK(t0.has_edge(0, 1));

    Graph c4 = cycle(4);
    TreeDecomposition td2;
    td2.bags = {{0, 1, 3}, {1, 2, 3}};
    td2.tree_edges = {{0, 1}};
    Graph t = torso(c4, td2, 0);
    CHECK(t.has_edge(1, 3)); // adhesion clique edge
    CHECK(t.num_edges() == 3);
    Graph t2 = torso(c4, td2, 1);
    CHECK(t2.num_edges() == 3);

    CHECK(torso(c4, single_bag_td(c4), 0) == c4);
    CHECK_THROWS_AS(torso(c4, td2, 5), invalid_parameter);
}

TEST_CASE("adhesion") {
    TreeDecomposition single;
    single.bags = {{0, 1, 2}};
    CHECK(adhesion(single) == 0);

    TreeDecomposition td;
    td.bags = {{0, 1, 3}, {1, 2, 3}};
    td.tree_edges = {{0, 1}};
    CHECK(adhesion(td) == 2);

    TreeDecomposition disj;
    disj.bags = {{0, 1}, {2}};
    disj.tree_edges = {{0, 1}};
    CHECK(adhesion(disj) == 0);
}

TEST_CASE("torso only adds edges inside adhesion sets") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 5 + static_cast<int>(rng() % 3), 0.4);
        auto tw = exact_tw_full(g);
        auto td = td_from_elimination(g, tw.elimination_order);
        REQUIRE(td_valid(g, td));
        for (std::size_t t = 0; t < td.bags.size(); ++t) {
            Graph to = torso(g, td, static_cast<int>(t));
            Graph induced = g.induced(td.bags[t]);
            for (const auto& e : induced.edges()) CHECK(to.has_edge(e.first, e.second));
        }
    }
}

TEST_CASE("bag sizes dominate the treewidth, with equality achievable") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 4 + static_cast<int>(rng() % 4), 0.5);
        if (g.num_vertices() == 0) continue;
        auto tw = exact_tw_full(g);
        auto opt = td_from_elimination(g, tw.elimination_order);
        std::size_t best = 0;
        for (auto& b : opt.bags) best = std::max(best, b.size());
        CHECK(static_cast<int>(best) - 1 == tw.width);

        // any random valid td is no better
        std::vector<int> order(g.vertices());
        std::shuffle(order.begin(), order.end(), rng);
        auto td = td_from_elimination(g, order);
        REQUIRE(td_valid(g, td));
        std::size_t mb = 0;
        for (auto& b : td.bags) mb = std::max(mb, b.size());
        CHECK(static_cast<int>(mb) - 1 >= tw.width);
    }
}

TEST_CASE("treewidth is at most the worst torso treewidth") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 5, 0.45);
        std::vector<int> order(g.vertices());
        std::shuffle(order.begin(), order.end(), rng);
        auto td = td_from_elimination(g, order);
        REQUIRE(td_valid(g, td));
        int worst = -1;
        for (std::size_t t = 0; t < td.bags.size(); ++t)
            worst = std::max(worst, exact_tw(torso(g, td, static_cast<int>(t))));
        CHECK(exact_tw(g) <= worst);
    }
}

TEST_CASE("decomposition file formats round trip") {
    SECTION("tree decomposition") {
        TreeDecomposition td;
        td.bags = {{0, 1, 3}, {1, 2, 3}, {2}};
        td.tree_edges = {{0, 1}, {1, 2}};
        std::ostringstream out;
        write_td(td, out);
        std::istringstream in(out.str());
        TreeDecomposition back = parse_td(in);
        CHECK(back.bags == td.bags);
        CHECK(back.tree_edges == td.tree_edges);
        CHECK(out.str().substr(0, 9) == "s td 3 3 ");
    }
    SECTION("branch decomposition") {
        Graph g = clique(3);
        auto r = exact_bw(g);
        std::ostringstream out;
        write_bd(r.bd, out);
        std::istringstream in(out.str());
        BranchDecomposition back = parse_bd(in);
        CHECK(bd_width(g, back) == r.width);
    }
}

TEST_CASE("blowup_bd realizes k times the width") {
    std::mt19937 rng(37);
    std::vector<Graph> gs{cycle(4), cycle(5), clique(4)};
    for (auto& g : gs) {
        auto r = exact_bw(g);
        for (int k : {2, 3}) {
            Graph b = blowup(g, k);
            auto bd = blowup_bd(g, r.bd, k);
            CHECK(bd_width(b, bd) == k * r.width);
        }
    }
    SECTION("k=1 reproduces the width") {
        Graph g = cycle(4);
        auto r = exact_bw(g);
        auto bd = blowup_bd(g, r.bd, 1);
        CHECK(bd_width(blowup(g, 1), bd) == r.width);
    }
}
