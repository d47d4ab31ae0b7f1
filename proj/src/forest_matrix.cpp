#include "cft/forest_matrix.hpp"

#include <algorithm>
#include <numeric>

#include "cft/errors.hpp"

namespace cft::comb {

Eigen::MatrixXd forest_matrix(const LabeledGraph& g, const Forest& f,
                              const Eigen::VectorXd& w) {
    require(w.size() == f.size(), "forest_matrix: weight count mismatch");
    require(is_forest(g, f.edge_ids), "forest_matrix: edge set has a cycle");
    for (int i = 0; i < w.size(); ++i)
        require(0.0 <= w[i] && w[i] <= 1.0, "forest_matrix: w outside [0,1]");

    const int n = g.n;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (int k = 0; k < f.size(); ++k) {
        auto [u, v] = g.edges[f.edge_ids[k]];
        adj[u].emplace_back(v, w[k]);
        adj[v].emplace_back(u, w[k]);
    }
    // DFS from each vertex carrying the running path minimum.
    for (int s = 0; s < n; ++s) {
        X(s, s) = 1.0;
        std::vector<std::pair<int, double>> stack{{s, 2.0}};
        std::vector<char> seen(n, 0);
        seen[s] = 1;
        while (!stack.empty()) {
            auto [x, mn] = stack.back();
            stack.pop_back();
            for (auto [y, wy] : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    double m = std::min(mn, wy);
                    X(s, y) = m;
                    stack.emplace_back(y, m);
                }
        }
    }
    return X;
}

BlockDecomposition block_decomposition(const LabeledGraph& g, const Forest& f,
                                       const Eigen::VectorXd& w) {
    require(w.size() == f.size(), "block_decomposition: weight count mismatch");
    require(is_forest(g, f.edge_ids),
            "block_decomposition: edge set has a cycle");

    const int k = f.size();
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (w[a] != w[b]) return w[a] > w[b];
        return f.edge_ids[a] < f.edge_ids[b];
    });

    BlockDecomposition d;
    DisjointSets ds(g.n);
    auto snapshot = [&]() {
        std::vector<int> label(g.n, -1);
        int next = 0;
        std::vector<int> out(g.n);
        for (int v = 0; v < g.n; ++v) {
            int r = ds.find(v);
            if (label[r] < 0) label[r] = next++;
            out[v] = label[r];
        }
        return out;
    };

    double prev = 1.0;
    d.partitions.push_back(snapshot());  // singletons
    for (int t = 0; t < k; ++t) {
        double cur = w[order[t]];
        d.coefficients.push_back(prev - cur);
        auto [u, v] = g.edges[f.edge_ids[order[t]]];
        ds.unite(u, v);
        d.partitions.push_back(snapshot());
        prev = cur;
    }
    d.coefficients.push_back(prev);
    return d;
}

Eigen::MatrixXd block_matrix(const std::vector<int>& partition) {
    const int n = static_cast<int>(partition.size());
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B(i, j) = partition[i] == partition[j] ? 1.0 : 0.0;
    return B;
}

Eigen::MatrixXd reconstruct(const BlockDecomposition& d) {
    require(!d.partitions.empty(), "reconstruct: empty decomposition");
    const int n = static_cast<int>(d.partitions.front().size());
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < d.coefficients.size(); ++t)
        X += d.coefficients[t] * block_matrix(d.partitions[t]);
    return X;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace cft::comb
