#include "cft/jungle.hpp"

#include <algorithm>

#include "cft/errors.hpp"
#include "cft/forest_matrix.hpp"

namespace cft::comb {

void validate_jungle(const LabeledGraph& g, const Jungle& j) {
    require(j.depth() >= 1, "jungle: needs at least one level");
    for (const Forest& f : j.levels)
        require(is_forest(g, f.edge_ids), "jungle: level is not a forest");
    for (int k = 0; k + 1 < j.depth(); ++k)
        require(std::includes(j.levels[k + 1].edge_ids.begin(),
                              j.levels[k + 1].edge_ids.end(),
                              j.levels[k].edge_ids.begin(),
                              j.levels[k].edge_ids.end()),
                "jungle: levels are not nested");
}

std::vector<Jungle> enumerate_jungles(int n, int m) {
    require(m >= 1, "enumerate_jungles: need m >= 1");
    if (n > 6 || m > 4) throw size_limit_error("enumerate_jungles: too large");
    std::vector<Jungle> out;
    for (const Forest& top : enumerate_forests_complete(n)) {
        const int k = top.size();
        // Each top edge picks the first level where it appears.
        std::vector<int> first(k, 0);
        while (true) {
            Jungle j;
            for (int level = 0; level < m; ++level) {
                Forest f;
                for (int i = 0; i < k; ++i)
                    if (first[i] <= level) f.edge_ids.push_back(top.edge_ids[i]);
                j.levels.push_back(std::move(f));
            }
            out.push_back(std::move(j));
            int i = 0;
            while (i < k && first[i] == m - 1) first[i++] = 0;
            if (i == k) break;
            ++first[i];
        }
    }
    return out;
}

std::vector<Eigen::MatrixXd> jungle_matrices(const LabeledGraph& g,
                                             const Jungle& j,
                                             const Eigen::VectorXd& w) {
    validate_jungle(g, j);
    require(w.size() == j.top().size(), "jungle_matrices: weight mismatch");
    std::vector<double> edge_w(g.edge_count(), -1.0);
    for (int i = 0; i < j.top().size(); ++i)
        edge_w[j.top().edge_ids[i]] = w[i];

    std::vector<Eigen::MatrixXd> out;
    for (int k = 0; k < j.depth(); ++k) {
        const Forest& fk = j.levels[k];
        std::vector<int> comp_prev =
            k == 0 ? std::vector<int>(components(g, {}))
                   : components(g, j.levels[k - 1].edge_ids);
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(g.n, g.n);
        for (int a = 0; a < g.n; ++a) {
            X(a, a) = 1.0;
            for (int b = a + 1; b < g.n; ++b) {
                double val;
                if (comp_prev[a] == comp_prev[b]) {
                    val = 1.0;
                } else {
                    std::vector<int> path = forest_path(g, fk, a, b);
                    if (path.empty()) {
                        val = 0.0;
                    } else {
                        val = 1.0;
                        for (int e : path)
                            if (k == 0 || !j.levels[k - 1].contains(e))
                                val = std::min(val, edge_w[e]);
                    }
                }
                X(a, b) = X(b, a) = val;
            }
        }
        out.push_back(std::move(X));
    }
    return out;
}

}  // namespace cft::comb
