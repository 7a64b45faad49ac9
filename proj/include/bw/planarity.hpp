#ifndef BW_PLANARITY_HPP
#define BW_PLANARITY_HPP

#include "bw/graph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace bw {

// Combinatorial sphere embedding: a cyclic neighbor order per vertex.
// Faces are derived by tracing: from directed edge (u,v) continue with
// (v, w) where w follows u in the rotation at v.
struct PlanarEmbedding {
    std::map<int, std::vector<int>> rotation;
    std::vector<std::vector<std::pair<int, int>>> faces; // directed edge walks

    std::set<int> face_vertices(std::size_t f) const {
        std::set<int> out;
        for (auto& [u, v] : faces.at(f)) out.insert(u);
        return out;
    }
};

struct PlanarityResult {
    bool planar = false;
    PlanarEmbedding embedding; // meaningful iff planar
    Graph witness;             // meaningful iff !planar: a Kuratowski subgraph
};

namespace detail {

inline int rotation_successor(const std::vector<int>& rot, int v) {
    for (std::size_t i = 0; i < rot.size(); ++i)
        if (rot[i] == v) return rot[(i + 1) % rot.size()];
    throw internal_error("rotation_successor: neighbor not present");
}

inline std::vector<std::vector<std::pair<int, int>>> trace_faces(
    const std::map<int, std::vector<int>>& rotation) {
    std::set<std::pair<int, int>> visited;
    std::vector<std::vector<std::pair<int, int>>> faces;
    for (const auto& [v, rot] : rotation) {
        for (int w : rot) {
            if (visited.count({v, w})) continue;
            std::vector<std::pair<int, int>> walk;
            int a = v, b = w;
            while (!visited.count({a, b})) {
                visited.insert({a, b});
                walk.push_back({a, b});
                int c = rotation_successor(rotation.at(b), a);
                a = b;
                b = c;
            }
            faces.push_back(std::move(walk));
        }
    }
    return faces;
}

// Incremental path-addition planarity for a 2-connected graph with >= 3
// vertices.  Returns the rotation system or nothing when some bridge
// fragment has no admissible face.
inline std::optional<std::map<int, std::vector<int>>> embed_biconnected(const Graph& g) {
    std::map<int, std::vector<int>> rot;

    // initial cycle: BFS spanning tree plus the first non-tree edge
    std::vector<int> cyc;
    {
        std::map<int, int> parent;
        std::set<Edge> tree;
        std::vector<int> queue{g.vertices().front()};
        parent[queue[0]] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : g.neighbors(v))
                if (!parent.count(w)) {
                    parent[w] = v;
                    tree.insert(make_edge(v, w));
                    queue.push_back(w);
                }
        }
        Edge nontree{-1, -1};
        for (const auto& e : g.edges())
            if (!tree.count(e)) {
                nontree = e;
                break;
            }
        if (nontree.first == -1) throw internal_error("2-connected block without a cycle");
        // join the two root paths at their first common vertex
        std::vector<int> pu;
        for (int x = nontree.first; x != -1; x = parent[x]) pu.push_back(x);
        std::map<int, std::size_t> pos;
        for (std::size_t i = 0; i < pu.size(); ++i) pos[pu[i]] = i;
        std::vector<int> pv;
        int meet = -1;
        for (int x = nontree.second; x != -1; x = parent[x]) {
            if (pos.count(x)) {
                meet = x;
                break;
            }
            pv.push_back(x);
        }
        if (meet == -1) throw internal_error("root paths do not meet");
        for (std::size_t i = 0; i <= pos[meet]; ++i) cyc.push_back(pu[i]);
        for (auto it = pv.rbegin(); it != pv.rend(); ++it) cyc.push_back(*it);
    }
    std::set<Edge> in_h;
    std::set<int> verts_h(cyc.begin(), cyc.end());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
        in_h.insert(make_edge(a, b));
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        int prev = cyc[(i + cyc.size() - 1) % cyc.size()];
        int next = cyc[(i + 1) % cyc.size()];
        rot[cyc[i]] = {prev, next};
    }

    struct Fragment {
        std::set<int> attachments;
        std::vector<int> comp; // empty for a chord fragment
        Edge chord{-1, -1};
    };

    while (in_h.size() < g.num_edges()) {
        auto faces = trace_faces(rot);
        std::vector<std::set<int>> fverts;
        fverts.reserve(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            std::set<int> s;
            for (auto& [u, v] : faces[f]) s.insert(u);
            fverts.push_back(std::move(s));
        }

        // fragments: chords first, then components of g - V(H)
        std::vector<Fragment> frags;
        for (const auto& e : g.edges())
            if (!in_h.count(e) && verts_h.count(e.first) && verts_h.count(e.second))
                frags.push_back({{e.first, e.second}, {}, e});
        {
            std::set<int> left;
            for (int v : g.vertices())
                if (!verts_h.count(v)) left.insert(v);
            while (!left.empty()) {
                int s = *left.begin();
                std::vector<int> comp{s}, stack{s};
                left.erase(s);
                std::set<int> att;
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int w : g.neighbors(v)) {
                        if (verts_h.count(w)) att.insert(w);
                        else if (left.count(w)) {
                            left.erase(w);
                            comp.push_back(w);
                            stack.push_back(w);
                        }
                    }
                }
                std::sort(comp.begin(), comp.end());
                frags.push_back({att, comp, {-1, -1}});
            }
        }
        if (frags.empty()) throw internal_error("unembedded edges but no fragments");

        // count admissible faces per fragment
        std::size_t best = frags.size();
        std::size_t best_count = 0, best_face = 0;
        for (std::size_t i = 0; i < frags.size(); ++i) {
            std::size_t count = 0, first_face = faces.size();
            for (std::size_t f = 0; f < faces.size(); ++f) {
                bool ok = std::all_of(frags[i].attachments.begin(), frags[i].attachments.end(),
                                      [&](int a) { return fverts[f].count(a) > 0; });
                if (ok) {
                    ++count;
                    if (first_face == faces.size()) first_face = f;
                }
            }
            if (count == 0) return std::nullopt; // fragment cannot be drawn
            if (best == frags.size() || count < best_count) {
                best = i;
                best_count = count;
                best_face = first_face;
            }
        }

        // path through the chosen fragment between two attachments
        const Fragment& fr = frags[best];
        std::vector<int> path;
        if (fr.comp.empty()) {
            path = {fr.chord.first, fr.chord.second};
        } else {
            int a = *fr.attachments.begin();
            // BFS from a through the component to another attachment
            std::map<int, int> par;
            std::vector<int> queue{a};
            par[a] = -1;
            int hit = -1;
            for (std::size_t qi = 0; qi < queue.size() && hit == -1; ++qi) {
                int v = queue[qi];
                for (int w : g.neighbors(v)) {
                    if (par.count(w)) continue;
                    if (verts_h.count(w)) {
                        if (v != a && w != a && fr.attachments.count(w)) {
                            par[w] = v;
                            hit = w;
                            break;
                        }
                        continue;
                    }
                    if (!std::binary_search(fr.comp.begin(), fr.comp.end(), w)) continue;
                    par[w] = v;
                    queue.push_back(w);
                }
            }
            if (hit == -1) throw internal_error("fragment path not found");
            for (int x = hit; x != -1; x = par[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
        }

        // split the chosen face along the path
        const auto& face = faces[best_face];
        int a = path.front(), b = path.back();
        auto pred_on_face = [&](int x) {
            for (auto& [u, v] : face)
                if (v == x) return u;
            throw internal_error("endpoint not on face");
        };
        int pa = pred_on_face(a), pb = pred_on_face(b);
        auto insert_after = [&](int at, int after, int val) {
            auto& r = rot[at];
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i] == after) {
                    r.insert(r.begin() + static_cast<long>(i) + 1, val);
                    return;
                }
            throw internal_error("rotation insert position missing");
        };
        insert_after(a, pa, path[1]);
        insert_after(b, pb, path[path.size() - 2]);
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            rot[path[i]] = {path[i - 1], path[i + 1]};
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            in_h.insert(make_edge(path[i], path[i + 1]));
        for (int x : path) verts_h.insert(x);
    }
    return rot;
}

inline bool graph_is_planar(const Graph& g);

// Iterative edge deletion down to an edge-minimal non-planar subgraph,
// which is necessarily a Kuratowski subdivision.
inline Graph kuratowski_witness(Graph h) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : h.edges()) {
            Graph trial;
            for (const auto& f : h.edges())
                if (f != e) trial.add_edge(f.first, f.second);
            if (!graph_is_planar(trial)) {
                h = trial;
                changed = true;
                break;
            }
        }
    }
    // drop isolated vertices
    Graph out;
    for (const auto& e : h.edges()) out.add_edge(e.first, e.second);
    return out;
}

} // namespace detail

// Planarity test producing a rotation-system embedding, or a Kuratowski
// subgraph witness.  Works blockwise; block embeddings are merged at cut
// vertices and each rotation is normalized to start at its smallest
// neighbor so faces come out reproducibly.
inline PlanarityResult planar_embed(const Graph& g) {
    PlanarityResult res;
    std::map<int, std::vector<int>> rot;
    for (int v : g.vertices()) rot[v] = {};
    for (const Graph& b : blocks(g)) {
        if (b.num_vertices() == 2) {
            int u = b.vertices()[0], v = b.vertices()[1];
            rot[u].push_back(v);
            rot[v].push_back(u);
            continue;
        }
        auto brot = detail::embed_biconnected(b);
        if (!brot) {
            res.planar = false;
            res.witness = detail::kuratowski_witness(b);
            return res;
        }
        for (auto& [v, r] : *brot)
            rot[v].insert(rot[v].end(), r.begin(), r.end());
    }
    for (auto& [v, r] : rot) {
        if (r.empty()) continue;
        auto mn = std::min_element(r.begin(), r.end());
        std::rotate(r.begin(), mn, r.end());
    }
    res.planar = true;
    res.embedding.rotation = std::move(rot);
    res.embedding.faces = detail::trace_faces(res.embedding.rotation);
    return res;
}

namespace detail {
inline bool graph_is_planar(const Graph& g) { return planar_embed(g).planar; }
} // namespace detail

inline bool is_planar(const Graph& g) { return planar_embed(g).planar; }

// Dump format: one line per vertex with its cyclic neighbor order, then the
// face list as comments.
inline void write_embedding(const PlanarEmbedding& emb, std::ostream& out) {
    for (const auto& [v, rot] : emb.rotation) {
        out << v << ":";
        for (int w : rot) out << " " << w;
        out << "\n";
    }
    for (const auto& face : emb.faces) {
        out << "# face:";
        for (const auto& [u, w] : face) out << " " << u;
        out << "\n";
    }
}

} // namespace bw

#endif
