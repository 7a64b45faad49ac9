#include <catch2/catch_amalgamated.hpp>

#include "bw/exact.hpp"
#include "bw/generators.hpp"
#include "bw/radial.hpp"
#include "bw/slope.hpp"
#include "bw/tangle.hpp"

using namespace bw;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

RadialGraph radial_of(const Graph& g) {
    auto pe = planar_embed(g);
    REQUIRE(pe.planar);
    return radial_graph(g, pe.embedding);
}

} // namespace

TEST_CASE("radial graph structure") {
    SECTION("triangle gives K23") {
        RadialGraph r = radial_of(cycle(3));
        CHECK(r.radial.num_vertices() == 5);
        CHECK(r.radial.num_edges() == 6);
        CHECK(r.radial_face_count() == 3);
        // bipartite between base vertices and faces
        for (const auto& [u, v] : r.radial.edges())
            CHECK(((u < r.face_base) != (v < r.face_base)));
    }
    SECTION("K4 radial") {
        RadialGraph r = radial_of(clique(4));
        CHECK(r.radial.num_vertices() == 8);
        CHECK(r.radial.num_edges() == 12);
        CHECK(r.radial_face_count() == 6);
    }
    SECTION("C4 radial") {
        RadialGraph r = radial_of(cycle(4));
        CHECK(r.radial.num_vertices() == 6);
        CHECK(r.radial.num_edges() == 8);
        CHECK(r.radial_face_count() == 4);
    }
    SECTION("squares biject with edges") {
        for (const Graph& g : {clique(4), cycle(5), grid(3, 3)}) {
            RadialGraph r = radial_of(g);
            CHECK(r.radial_face_count() == g.num_edges());
            std::set<std::size_t> used(r.square_of_edge.begin(), r.square_of_edge.end());
            CHECK(used.size() == g.num_edges());
            // the square of edge (u,v) touches u and v
            for (std::size_t i = 0; i < g.num_edges(); ++i) {
                auto [u, v] = g.edges()[i];
                auto fv = r.radial_embedding.face_vertices(r.square_of_edge[i]);
                CHECK(fv.count(u));
                CHECK(fv.count(v));
            }
        }
    }
    SECTION("non-2-connected inputs are rejected") {
        Graph p3;
        p3.add_edge(0, 1);
        p3.add_edge(1, 2);
        auto pe = planar_embed(p3);
        CHECK_THROWS_AS(radial_graph(p3, pe.embedding), invalid_parameter);
    }
}

TEST_CASE("cycle enumeration in radial graphs") {
    RadialGraph r = radial_of(clique(4)); // the cube graph
    auto c6 = enumerate_radial_cycles(r, 3);
    CHECK(c6.size() == 6); // only the six squares are shorter than 6
    for (auto& c : c6) {
        CHECK(c.verts.size() == 4);
        CHECK(std::popcount(c.side0 | c.side1) == 6);
        CHECK((c.side0 & c.side1) == 0);
    }
    auto c2 = enumerate_radial_cycles(r, 2);
    CHECK(c2.empty());
}

TEST_CASE("verify_slope basics") {
    SECTION("vacuous slope on the triangle radial") {
        RadialGraph r = radial_of(cycle(3));
        Slope s;
        s.order = 2;
        CHECK_FALSE(verify_slope(r, 2, s).has_value());
    }
    SECTION("assignment size must match") {
        RadialGraph r = radial_of(cycle(3));
        Slope s;
        s.order = 3;
        CHECK_THROWS_AS(verify_slope(r, 3, s), invalid_parameter);
    }
    SECTION("sending a square to the far side breaks uniformity") {
        RadialGraph r = radial_of(clique(4));
        auto s = find_slope(r, 3);
        REQUIRE(s.has_value());
        Slope bad = *s;
        bad.choice[0] = static_cast<char>(1 - bad.choice[0]);
        auto v = verify_slope(r, 3, bad);
        REQUIRE(v.has_value());
        CHECK(v->kind == SlopeViolation::NonUniform);
    }
}

TEST_CASE("slope existence matches branchwidth on anchors") {
    SECTION("triangle") {
        RadialGraph r = radial_of(cycle(3));
        CHECK(find_slope(r, 2).has_value());
        CHECK_FALSE(find_slope(r, 3).has_value()); // bw(C3) = 2
    }
    SECTION("K4") {
        RadialGraph r = radial_of(clique(4));
        CHECK(find_slope(r, 2).has_value());
        CHECK(find_slope(r, 3).has_value());      // bw(K4) = 3
        CHECK_FALSE(find_slope(r, 4).has_value());
    }
    SECTION("C4") {
        RadialGraph r = radial_of(cycle(4));
        CHECK(find_slope(r, 2).has_value());
        CHECK_FALSE(find_slope(r, 3).has_value()); // bw(C4) = 2
    }
    SECTION("grid 3x3 has branchwidth 3") {
        Graph g = grid(3, 3);
        CHECK(exact_bw(g).width == 3);
        RadialGraph r = radial_of(g);
        CHECK(find_slope(r, 3).has_value());
        CHECK_FALSE(find_slope(r, 4).has_value());
    }
}

TEST_CASE("slope-tangle duality on small 2-connected planar graphs") {
    std::vector<Graph> gs;
    gs.push_back(cycle(3));
    gs.push_back(cycle(5));
    gs.push_back(clique(4));
    {
        Graph diamond = clique(4);
        Graph d;
        for (const auto& e : diamond.edges())
            if (e != Edge{2, 3}) d.add_edge(e.first, e.second);
        gs.push_back(d);
    }
    {
        Graph wheel; // W4: hub 0, rim 1..4
        for (int i = 1; i <= 4; ++i) wheel.add_edge(0, i);
        for (int i = 1; i <= 4; ++i) wheel.add_edge(i, i % 4 + 1);
        gs.push_back(wheel);
    }
    for (const Graph& g : gs) {
        int to = max_tangle_order(g);
        RadialGraph r = radial_of(g);
        for (int k = 1; k <= to + 1; ++k) {
            bool slope = find_slope(r, k).has_value();
            CHECK(slope == (to >= k));
        }
    }
}
