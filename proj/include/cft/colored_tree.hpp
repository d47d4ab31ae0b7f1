#pragma once

#include "cft/invariants.hpp"

#include <complex>
#include <tuple>
#include <utility>
#include <vector>

namespace cft::tensor {

// planar tree of loop vertices; each edge carries a generalized color and the
// cyclic slot order around every vertex fixes the embedding
struct ColoredTree {
    struct Edge {
        int a = 0, b = 0;             // endpoint vertices
        GeneralizedColor color;
        int slot_a = 0, slot_b = 0;   // positions in the endpoint slot cycles
    };

    int rank = 2;
    int vertex_count = 1;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> slots;  // per vertex: incident edge ids, ccw

    int order() const { return static_cast<int>(edges.size()); }
    int corner_count() const { return 2 * order(); }
};

// edges as (a, b, color members); slots follow insertion order
ColoredTree make_colored_tree(
    int rank, int vertex_count,
    const std::vector<std::tuple<int, int, std::vector<int>>>& edges);

// corner ids are dense: vertex v owns corners offset(v) .. offset(v)+deg(v)-1,
// corner i sitting just before slot i in ccw order
int corner_offset(const ColoredTree& t, int vertex);
std::pair<int, int> corner_host(const ColoredTree& t, int corner);

struct FaceCount {
    int total = 0;
    std::vector<int> per_color;  // one entry per color 1..d
};

// strand tracer: for each color walk the loop-vertex boundaries, crossing an
// edge exactly when its color set contains the strand color
FaceCount count_faces(const ColoredTree& t);

// boundary of the fattened tree: every corner exactly once, in cyclic order
std::vector<int> boundary_walk(const ColoredTree& t);

// lambda^n N^{F - (d-1) n}
Complex perturbative_amplitude(const ColoredTree& t, int side, Complex lambda);

}  // namespace cft::tensor
