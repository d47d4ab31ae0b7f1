#pragma once

#include <vector>

#include "cft/exact.hpp"
#include "cft/graph.hpp"

namespace cft::plane {

// Rooted plane tree with a ciliated root: vertex 0 is the root, ordinary
// vertices are labeled 1..n in preorder, children lists carry the planar
// order.  degrees[i] counts the corners of vertex i (children + parent edge
// for ordinary vertices, children + cilium for the root), so the degree sum
// is always 2n+1.
struct RootedPlaneTree {
    int edge_count = 0;
    std::vector<std::vector<int>> children;
    std::vector<int> parent;  // parent[0] = -1
    std::vector<int> degrees;

    int vertex_count() const { return edge_count + 1; }
};

// All rooted plane trees with n edges, in a fixed deterministic order; the
// count is the Catalan number C_n.  n <= 12.
std::vector<RootedPlaneTree> enumerate_rooted_plane_trees(int n);

// C_n = binom(2n, n)/(n+1), exact.
BigInt catalan_number(unsigned n);

// The underlying labeled graph: edge id v-1 joins parent[v] and v.
comb::LabeledGraph tree_graph(const RootedPlaneTree& tree);

// paths[i][j] lists the edge ids on the unique tree path between i and j.
std::vector<std::vector<std::vector<int>>> tree_path_edges(const RootedPlaneTree& tree);

}  // namespace cft::plane
