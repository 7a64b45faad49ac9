#ifndef BW_GENERATORS_HPP
#define BW_GENERATORS_HPP

#include "bw/graph.hpp"

namespace bw {

// Complete graph on labels 0..n-1.  clique(0) is the empty graph.
inline Graph clique(int n) {
    if (n < 0) throw invalid_parameter("clique: n must be non-negative");
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// rows x cols rectangular grid; vertex (i, j) gets label i*cols + j.
inline Graph grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw invalid_parameter("grid: dimensions must be positive");
    Graph g;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int v = i * cols + j;
            g.add_vertex(v);
            if (j + 1 < cols) g.add_edge(v, v + 1);
            if (i + 1 < rows) g.add_edge(v, v + cols);
        }
    return g;
}

// Cartesian product of a cycle on cycle_len vertices and a path on path_len
// vertices; vertex (i, j) gets label j*cycle_len + i, so ring 0 carries the
// labels 0..cycle_len-1.
inline Graph cylindrical_grid(int cycle_len, int path_len) {
    if (cycle_len < 3) throw invalid_parameter("cylindrical_grid: cycle_len must be >= 3");
    if (path_len < 1) throw invalid_parameter("cylindrical_grid: path_len must be >= 1");
    Graph g;
    for (int j = 0; j < path_len; ++j)
        for (int i = 0; i < cycle_len; ++i) {
            int v = j * cycle_len + i;
            g.add_vertex(v);
            g.add_edge(v, j * cycle_len + (i + 1) % cycle_len);
            if (j + 1 < path_len) g.add_edge(v, v + cycle_len);
        }
    return g;
}

// Cylindrical grid with cycle length 4k and path length k, plus the 2k
// chords {i, i+2k} on ring 0.  Every pair of chords crosses inside the
// inner disk.  crosscap_grid(1) is K_4.
inline Graph crosscap_grid(int k) {
    if (k < 1) throw invalid_parameter("crosscap_grid: k must be positive");
    Graph g = cylindrical_grid(4 * k, k);
    for (int i = 0; i < 2 * k; ++i) g.add_edge(i, i + 2 * k);
    return g;
}

// Cylindrical grid with cycle length 4k and path length k, plus two chord
// families {i, 3k-1-i} and {k+i, 4k-1-i} for i in [0, k).  Each family is
// internally parallel and every cross-family pair crosses.  handle_grid(1)
// is K_4.
inline Graph handle_grid(int k) {
    if (k < 1) throw invalid_parameter("handle_grid: k must be positive");
    Graph g = cylindrical_grid(4 * k, k);
    for (int i = 0; i < k; ++i) {
        g.add_edge(i, 3 * k - 1 - i);
        g.add_edge(k + i, 4 * k - 1 - i);
    }
    return g;
}

// Replace each vertex v by a k-clique K_v and each edge uv by all k^2 edges
// between K_u and K_v.  Copy j of vertex v gets label v*k + j.
inline Graph blowup(const Graph& g, int k) {
    if (k < 1) throw invalid_parameter("blowup: k must be positive");
    Graph h;
    for (int v : g.vertices()) {
        for (int j = 0; j < k; ++j) h.add_vertex(v * k + j);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) h.add_edge(v * k + a, v * k + b);
    }
    for (const auto& [u, v] : g.edges())
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) h.add_edge(u * k + a, v * k + b);
    return h;
}

} // namespace bw

#endif
