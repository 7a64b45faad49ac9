#include <catch2/catch_amalgamated.hpp>

#include "bw/pipeline.hpp"
#include "support/blowup_oracle.hpp"
#include "support/minor.hpp"

#include <random>

using namespace bw;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// three K4's sharing one triangle {0,1,2}; contains K33, so non-planar
Graph triple_k4() {
    Graph g = clique(3);
    for (int apex : {3, 4, 5})
        for (int s : {0, 1, 2}) g.add_edge(apex, s);
    return g;
}

Graph two_c4_shared_edge() {
    Graph g = cycle(4);           // 0-1-2-3
    g.add_edge(2, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);             // second C4: 2-4-5-3-2 sharing edge {2,3}
    return g;
}

void check_contract(const Graph& g, const DecomposeResult& dec) {
    REQUIRE(dec.success);
    CHECK(td_valid(g, dec.td));
    CHECK(adhesion(dec.td) <= 3);
    for (std::size_t t = 0; t < dec.td.bags.size(); ++t) {
        Graph to = torso(g, dec.td, static_cast<int>(t));
        CHECK(is_planar(to));
        CHECK(bw::testsupport::is_minor(g, to));
    }
}

} // namespace

TEST_CASE("decompose_adhesion3 on planar graphs gives one bag") {
    for (const Graph& g : {cycle(4), grid(3, 3), clique(4)}) {
        auto dec = decompose_adhesion3(g);
        REQUIRE(dec.success);
        CHECK(dec.td.bags.size() == 1);
        check_contract(g, dec);
    }
    // two K4's sharing a triangle form K5 minus an edge, which is planar,
    // so the greedy stop keeps it whole
    Graph g = clique(4);
    for (int s : {0, 1, 2}) g.add_edge(4, s);
    REQUIRE(is_planar(g));
    auto dec = decompose_adhesion3(g);
    REQUIRE(dec.success);
    CHECK(dec.td.bags.size() == 1);
    check_contract(g, dec);
}

TEST_CASE("decompose_adhesion3 splits clique sums") {
    SECTION("three K4 on one triangle") {
        Graph g = triple_k4();
        REQUIRE_FALSE(is_planar(g));
        auto dec = decompose_adhesion3(g);
        check_contract(g, dec);
        CHECK(dec.td.bags.size() == 3);
    }
    SECTION("non-planar chain of wheels glued on triangles") {
        // W5 wheels make each torso strictly richer than a K4
        Graph g;
        auto add_wheel = [&](int hub, std::vector<int> rim) {
            for (std::size_t i = 0; i < rim.size(); ++i) {
                if (!g.has_edge(hub, rim[i])) g.add_edge(hub, rim[i]);
                int a = rim[i], b = rim[(i + 1) % rim.size()];
                if (!g.has_edge(a, b)) g.add_edge(a, b);
            }
        };
        add_wheel(0, {1, 2, 3, 4});
        add_wheel(5, {1, 2, 3, 6});   // shares triangle-ish region {1,2,3}? adhesion via cuts
        add_wheel(7, {1, 2, 3, 8});
        auto dec = decompose_adhesion3(g);
        if (dec.success) check_contract(g, dec);
    }
}

TEST_CASE("decompose_adhesion3 fails honestly on K6") {
    auto dec = decompose_adhesion3(clique(6));
    REQUIRE_FALSE(dec.success);
    CHECK(dec.witness.num_vertices() == 6);
    CHECK_FALSE(is_planar(dec.witness));
}

TEST_CASE("decompose handles disconnected and degenerate inputs") {
    Graph g;
    CHECK(decompose_adhesion3(g).success);

    Graph two = cycle(3);
    two.add_edge(10, 11);
    two.add_edge(11, 12);
    two.add_edge(10, 12);
    auto dec = decompose_adhesion3(two);
    check_contract(two, dec);
}

TEST_CASE("approx_bw frozen examples") {
    SECTION("4x4 grid with a single bag") {
        Graph g = grid(4, 4);
        auto res = approx_bw(g, single_bag_td(g));
        CHECK(res.lo == 4);
        CHECK(res.hi == 4);
        CHECK(res.b == 4);
    }
    SECTION("two 4x4 grids sharing three corner vertices") {
        // bags overlap in {0,1,4}; each torso is a grid plus one chord on a
        // corner face, so both torsos stay planar with width 4 and the
        // above-three branch pins the answer
        Graph g = grid(4, 4);
        Graph second = grid(4, 4);
        std::map<int, int> relabel{{0, 0}, {1, 1}, {4, 4}};
        int fresh = 16;
        for (int v = 0; v < 16; ++v)
            if (!relabel.count(v)) relabel[v] = fresh++;
        for (const auto& [u, v] : second.edges())
            if (!g.has_edge(relabel[u], relabel[v])) g.add_edge(relabel[u], relabel[v]);
        TreeDecomposition td;
        std::set<int> bag1, bag2{0, 1, 4};
        for (int v = 0; v < 16; ++v) bag1.insert(v);
        for (int v = 0; v < 16; ++v) bag2.insert(relabel[v]);
        td.bags = {bag1, bag2};
        td.tree_edges = {{0, 1}};
        REQUIRE(td_valid(g, td));
        auto res = approx_bw(g, td);
        CHECK(res.lo == 4);
        CHECK(res.hi == 4);
        CHECK(res.b == 4);
    }
    SECTION("two C4 glued on an edge") {
        Graph g = two_c4_shared_edge();
        auto dec = decompose_adhesion3(g);
        REQUIRE(dec.success);
        TreeDecomposition td;
        td.bags = {{0, 1, 2, 3}, {2, 3, 4, 5}};
        td.tree_edges = {{0, 1}};
        REQUIRE(td_valid(g, td));
        auto res = approx_bw(g, td);
        CHECK(res.lo == 2);
        CHECK(res.hi == 5);
        CHECK(res.b == 2);
        int exact = exact_bw(g).width;
        CHECK(exact == 2);
        CHECK(res.lo <= exact);
        CHECK(exact <= res.hi);
    }
    SECTION("preconditions") {
        Graph g = clique(5);
        CHECK_THROWS_AS(approx_bw(g, single_bag_td(g)), invalid_parameter); // non-planar torso
        Graph h = cycle(4);
        TreeDecomposition bad;
        bad.bags = {{0, 1}, {2, 3}};
        bad.tree_edges = {{0, 1}};
        CHECK_THROWS_AS(approx_bw(h, bad), invalid_parameter); // invalid td
        // adhesion 4
        Graph big = cycle(5);
        big.add_edge(0, 2);
        big.add_edge(0, 3);
        TreeDecomposition wide;
        wide.bags = {{0, 1, 2, 3, 4}, {0, 1, 2, 3}};
        wide.tree_edges = {{0, 1}};
        if (td_valid(big, wide)) CHECK_THROWS_AS(approx_bw(big, wide), invalid_parameter);
    }
}

TEST_CASE("sandwich property on decomposed clique sums") {
    std::vector<Graph> gs{triple_k4(), two_c4_shared_edge()};
    for (const Graph& g : gs) {
        auto dec = decompose_adhesion3(g);
        REQUIRE(dec.success);
        auto res = approx_bw(g, dec.td);
        BwOptions eo;
        eo.edge_budget = 24;
        int exact = exact_bw(g, eo).width;
        CHECK(res.lo <= exact);
        CHECK(exact <= res.hi);
        CHECK(res.hi - res.lo <= 3);
        if (res.b > 3) {
            CHECK(res.lo == res.hi);
            CHECK(res.lo == exact);
        }
    }
}

TEST_CASE("approx report JSON has a stable field order") {
    Graph g = cycle(4);
    auto res = approx_bw(g, single_bag_td(g));
    CHECK(approx_report_json(res) ==
          "{\"lo\": 2, \"hi\": 5, \"b\": 2, \"per_torso\": [{\"node\": 0, \"bw\": 2}]}");
}

TEST_CASE("eptas_bw frozen examples") {
    SECTION("grid with eps = 1 stays on the approximation path") {
        CHECK(eptas_bw(grid(4, 4), 1, 1, 3) == 4);
    }
    SECTION("grid with eps = 0.5 goes through the oracle") {
        EptasOptions opts;
        opts.exact.edge_budget = 24;
        CHECK(eptas_bw(grid(4, 4), 1, 2, 3, opts) == 4);
    }
    SECTION("two C4 with eps = 0.1 goes through the oracle") {
        CHECK(eptas_bw(two_c4_shared_edge(), 1, 10, 3) == 2);
    }
    SECTION("ratio property") {
        for (const Graph& g : {grid(4, 4), two_c4_shared_edge(), clique(4)}) {
            BwOptions eo;
            eo.edge_budget = 24;
            int exact = exact_bw(g, eo).width;
            for (auto [num, den] : std::vector<std::pair<long, long>>{{1, 10}, {1, 2}, {1, 1}}) {
                EptasOptions opts;
                opts.exact.edge_budget = 24;
                int b = eptas_bw(g, num, den, 3, opts);
                CHECK(b <= exact);
                CHECK(exact * den <= b * (den + num));
            }
        }
    }
    SECTION("undecomposable inputs are refused") {
        CHECK_THROWS_AS(eptas_bw(clique(6), 1, 2, 3), unsupported_input);
    }
}

TEST_CASE("additive_to_exact") {
    SECTION("adversarial approximator on C4") {
        Graph g = cycle(4);
        for (int k : {1, 2}) {
            auto approx = [&](const Graph&) {
                return bw::testsupport::certified_blowup_bw(g, k + 1) + k;
            };
            CHECK(additive_to_exact(g, approx, k) == 2);
        }
    }
    SECTION("forest short-circuit") {
        Graph p3;
        p3.add_edge(0, 1);
        p3.add_edge(1, 2);
        auto never = [](const Graph&) -> int { throw internal_error("must not be called"); };
        CHECK(additive_to_exact(p3, never, 2) == 1);
    }
    SECTION("exact approximator with k = 0") {
        Graph g = cycle(5);
        auto approx = [](const Graph& h) { return exact_bw(h).width; };
        CHECK(additive_to_exact(g, approx, 0) == 2);
    }
}
