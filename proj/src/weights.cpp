#include "cft/weights.hpp"

#include <algorithm>
#include <numeric>

#include "cft/errors.hpp"

namespace cft::comb {

void validate_spanning_tree(const LabeledGraph& g, const Forest& tree) {
    require(is_connected(g), "tree weight: graph not connected");
    require(tree.size() == g.n - 1, "tree weight: not a spanning tree");
    for (int e : tree.edge_ids)
        require(0 <= e && e < g.edge_count(), "tree weight: bad edge id");
    require(is_forest(g, tree.edge_ids), "tree weight: edge set has a cycle");
}

WeightResult tree_weight_exact(const LabeledGraph& g, const Forest& tree,
                               const WeightLimits& limits) {
    validate_spanning_tree(g, tree);
    const int m = g.edge_count();
    if (m > limits.max_edges && !limits.accept_exponential_cost)
        throw size_limit_error("tree_weight_exact: |E| exceeds limit");
    if (m > 12)
        throw size_limit_error("tree_weight_exact: |E| > 12 is out of reach");

    std::vector<int> ordering(m);
    std::iota(ordering.begin(), ordering.end(), 0);
    const std::vector<int>& want = tree.edge_ids;
    BigInt hits = 0;
    do {
        DisjointSets ds(g.n);
        std::vector<int> picked;
        picked.reserve(g.n - 1);
        for (int e : ordering) {
            auto [u, v] = g.edges[e];
            if (u != v && ds.unite(u, v)) {
                picked.push_back(e);
                if (static_cast<int>(picked.size()) == g.n - 1) break;
            }
        }
        std::sort(picked.begin(), picked.end());
        if (picked == want) ++hits;
    } while (std::next_permutation(ordering.begin(), ordering.end()));
    return WeightResult{hits, factorial(static_cast<unsigned>(m))};
}

BigRational tree_weight_integral(const LabeledGraph& g, const Forest& tree) {
    validate_spanning_tree(g, tree);
    const int k = tree.size();
    if (k > 8) throw size_limit_error("tree_weight_integral: tree too large");

    // Exponent pattern: for each non-tree edge, the ids of the tree-path
    // edges; in a cell the smallest-ranked of them carries the factor.
    std::vector<std::vector<int>> paths;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (tree.contains(e)) continue;
        auto [u, v] = g.edges[e];
        if (u == v) continue;  // X_ii = 1 contributes nothing
        paths.push_back(forest_path(g, tree, u, v));
    }

    std::vector<int> rank_of(g.edge_count(), -1);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);  // positions into tree.edge_ids
    BigRational total(0);
    do {
        // perm[0] is the smallest w, perm[k-1] the largest.
        for (int r = 0; r < k; ++r) rank_of[tree.edge_ids[perm[r]]] = r;
        std::vector<long> expo(k, 0);
        for (const auto& path : paths) {
            int best = k;
            for (int e : path) best = std::min(best, rank_of[e]);
            ++expo[best];
        }
        // int over 0 < x_1 < ... < x_k < 1 of prod x_r^{expo[r]}:
        BigRational cell(1);
        long acc = 0;
        for (int r = 0; r < k; ++r) {
            acc += expo[r] + 1;
            cell /= BigRational(acc);
        }
        total += cell;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace cft::comb
