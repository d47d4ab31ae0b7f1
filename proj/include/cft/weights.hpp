#pragma once

#include "cft/exact.hpp"
#include "cft/graph.hpp"

namespace cft::comb {

// w(G,T) = numerator / |E(G)|! where the numerator counts edge orderings
// whose greedy leading tree is T.
struct WeightResult {
    BigInt numerator;
    BigInt denominator;

    BigRational value() const { return BigRational(numerator, denominator); }
};

struct WeightLimits {
    int max_edges = 10;
    bool accept_exponential_cost = false;
};

// Exhaustive count over all |E|! edge orderings.
WeightResult tree_weight_exact(const LabeledGraph& g, const Forest& tree,
                               const WeightLimits& limits = {});

// Same weight via the interpolation identity
//   w(G,T) = int dw prod_{l in G-T} X^T_{i(l) j(l)}(w),
// integrated exactly cell by cell (one cell per ordering of the tree edges,
// monomial integrand in each cell).
BigRational tree_weight_integral(const LabeledGraph& g, const Forest& tree);

void validate_spanning_tree(const LabeledGraph& g, const Forest& tree);

}  // namespace cft::comb
