#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cft/graph.hpp"

namespace cft::comb {

// Nested forests F_1 <= F_2 <= ... <= F_m over one parent graph.
struct Jungle {
    std::vector<Forest> levels;

    int depth() const { return static_cast<int>(levels.size()); }
    const Forest& top() const { return levels.back(); }
};

void validate_jungle(const LabeledGraph& g, const Jungle& j);

// All m-jungles of the complete graph K_n (every edge of the top forest is
// tagged with the first level containing it).
std::vector<Jungle> enumerate_jungles(int n, int m);

// Level-k interpolation matrix: 1 if i,j connected in F_{k-1}, 0 if not
// connected in F_k, else min of w over the new edges on the F_k path.
// w is indexed like the top forest's edge list.
std::vector<Eigen::MatrixXd> jungle_matrices(const LabeledGraph& g,
                                             const Jungle& j,
                                             const Eigen::VectorXd& w);

}  // namespace cft::comb
