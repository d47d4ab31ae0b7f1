#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cft/graph.hpp"

namespace cft::comb {

// X^F(w): 1 on the diagonal, min of w along the forest path for connected
// pairs, 0 across components.
Eigen::MatrixXd forest_matrix(const LabeledGraph& g, const Forest& f,
                              const Eigen::VectorXd& w);

// Barycentric form X = c_0 Id + sum_l c_l B_l with c_l >= 0, sum c_l = 1 and
// B_l the block (all-ones-per-component) matrix after merging the l largest
// edges.  Ties in w are broken by ascending edge index.
struct BlockDecomposition {
    std::vector<double> coefficients;          // size |F|+1
    std::vector<std::vector<int>> partitions;  // vertex -> block id, per term
};

BlockDecomposition block_decomposition(const LabeledGraph& g, const Forest& f,
                                       const Eigen::VectorXd& w);

Eigen::MatrixXd block_matrix(const std::vector<int>& partition);

Eigen::MatrixXd reconstruct(const BlockDecomposition& d);

double min_eigenvalue(const Eigen::MatrixXd& sym);

}  // namespace cft::comb
