#ifndef BW_RADIAL_HPP
#define BW_RADIAL_HPP

#include "bw/graph.hpp"
#include "bw/planarity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace bw {

// Vertex-face incidence graph of a sphere-embedded 2-connected graph.  Faces
// become fresh vertices labeled face_base + face index; every face of the
// radial graph is a square and squares biject with the base edges.
struct RadialGraph {
    Graph base;
    PlanarEmbedding base_embedding;
    int face_base = 0;
    Graph radial;
    PlanarEmbedding radial_embedding;
    // base edge index (into base.edges()) -> radial face index
    std::vector<std::size_t> square_of_edge;

    int face_label(std::size_t face_index) const {
        return face_base + static_cast<int>(face_index);
    }
    std::size_t radial_face_count() const { return radial_embedding.faces.size(); }
};

inline RadialGraph radial_graph(const Graph& g, const PlanarEmbedding& emb) {
    if (g.num_vertices() < 3)
        throw invalid_parameter("radial_graph: need at least 3 vertices");
    {
        auto bs = blocks(g);
        if (bs.size() != 1 || bs[0].num_vertices() != g.num_vertices())
            throw invalid_parameter("radial_graph: graph must be 2-connected");
    }
    RadialGraph r;
    r.base = g;
    r.base_embedding = emb;
    r.face_base = g.vertices().back() + 1;

    // face id per directed edge
    std::map<std::pair<int, int>, std::size_t> face_of;
    for (std::size_t f = 0; f < emb.faces.size(); ++f)
        for (auto& de : emb.faces[f]) {
            if (face_of.count(de))
                throw invalid_parameter("radial_graph: embedding is not face-consistent");
            face_of[de] = f;
        }
    if (face_of.size() != 2 * g.num_edges())
        throw invalid_parameter("radial_graph: embedding misses directed edges");

    for (std::size_t f = 0; f < emb.faces.size(); ++f)
        for (auto& [u, v] : emb.faces[f]) r.radial.add_edge(u, r.face_label(f));

    // rotation: around a graph vertex, the incident faces in rotation order;
    // around a face, its boundary walk
    for (int v : g.vertices()) {
        std::vector<int> out;
        for (int u : emb.rotation.at(v)) out.push_back(r.face_label(face_of.at({v, u})));
        r.radial_embedding.rotation[v] = std::move(out);
    }
    for (std::size_t f = 0; f < emb.faces.size(); ++f) {
        // face walks carry the opposite orientation, so reverse them to keep
        // the radial rotation system consistent
        std::vector<int> out;
        for (auto& [u, v] : emb.faces[f]) out.push_back(u);
        std::reverse(out.begin(), out.end());
        r.radial_embedding.rotation[r.face_label(f)] = std::move(out);
    }
    r.radial_embedding.faces = detail::trace_faces(r.radial_embedding.rotation);

    // squares <-> base edges
    if (r.radial_embedding.faces.size() != g.num_edges())
        throw internal_error("radial graph face count mismatch");
    std::map<Edge, std::size_t> edge_index;
    for (std::size_t i = 0; i < g.num_edges(); ++i) edge_index[g.edges()[i]] = i;
    r.square_of_edge.assign(g.num_edges(), 0);
    std::vector<char> seen(g.num_edges(), 0);
    for (std::size_t f = 0; f < r.radial_embedding.faces.size(); ++f) {
        const auto& walk = r.radial_embedding.faces[f];
        if (walk.size() != 4) throw internal_error("radial graph face is not a square");
        std::vector<int> base_verts;
        for (auto& [u, v] : walk)
            if (u < r.face_base) base_verts.push_back(u);
        if (base_verts.size() != 2) throw internal_error("square without two base vertices");
        Edge e = make_edge(base_verts[0], base_verts[1]);
        auto it = edge_index.find(e);
        if (it == edge_index.end()) throw internal_error("square spans a non-edge");
        if (seen[it->second]) throw internal_error("edge with two squares");
        seen[it->second] = 1;
        r.square_of_edge[it->second] = f;
    }
    return r;
}

} // namespace bw

#endif
