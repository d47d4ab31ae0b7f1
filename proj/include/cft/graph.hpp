#pragma once

#include <utility>
#include <vector>

#include "cft/exact.hpp"

namespace cft::comb {

// Multigraph on vertices 0..n-1; self-loops and parallel edges allowed.
struct LabeledGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // endpoints, u <= v

    int edge_count() const { return static_cast<int>(edges.size()); }
};

LabeledGraph complete_graph(int n);
LabeledGraph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Edge subset of a parent graph, stored as sorted edge indices.
struct Forest {
    std::vector<int> edge_ids;

    int size() const { return static_cast<int>(edge_ids.size()); }
    bool contains(int e) const;
};

// Permutation of edge indices; position in the vector is the rank.
using EdgeOrdering = std::vector<int>;

struct DisjointSets {
    explicit DisjointSets(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }
    std::vector<int> parent;
    std::vector<int> rank_;
};

bool is_forest(const LabeledGraph& g, const std::vector<int>& edge_ids);
bool is_connected(const LabeledGraph& g);

// Component labels for the subgraph with the given edges (labels are
// smallest member vertex, renumbered 0..k-1 in order of first appearance).
std::vector<int> components(const LabeledGraph& g,
                            const std::vector<int>& edge_ids);

// All acyclic edge subsets, lexicographic in the edge-index bitmask order.
std::vector<Forest> enumerate_forests(const LabeledGraph& g);
std::vector<Forest> enumerate_forests_complete(int n);

std::vector<Forest> enumerate_spanning_trees(const LabeledGraph& g);

// Greedy minimum-ordering spanning tree: scan edges by rank, keep those that
// do not close a cycle.
Forest kruskal_leading_tree(const LabeledGraph& g,
                            const EdgeOrdering& ordering);

void validate_ordering(const LabeledGraph& g, const EdgeOrdering& ordering);

// Vertex path between a and b inside a forest, as edge ids; empty if
// disconnected or a == b.
std::vector<int> forest_path(const LabeledGraph& g, const Forest& f, int a,
                             int b);

// Number of labeled phi^4 vacuum graphs of order n: (4n-1)!!.
BigInt count_labeled_phi4_graphs(int n);

}  // namespace cft::comb
