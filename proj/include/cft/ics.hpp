#pragma once

#include "cft/colored_tree.hpp"
#include "cft/invariants.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace cft::tensor {

// tree amplitude with resolvent insertions R at corners A and R^dagger at A^dagger
struct ResolventDressedTree {
    ColoredTree tree;
    std::vector<int> resolvent_corners;   // sorted corner ids carrying R
    std::vector<int> conjugate_corners;   // sorted corner ids carrying R^dagger

    int dressed_count() const {
        return static_cast<int>(resolvent_corners.size() + conjugate_corners.size());
    }
};

ResolventDressedTree make_dressed_tree(ColoredTree tree,
                                       std::vector<int> resolvent_corners,
                                       std::vector<int> conjugate_corners);

// |lambda| < cos^2(arg(lambda) / 2), the domain where the resolvent norm
// is bounded by 1 / cos(arg(lambda) / 2)
bool cardioid_contains(Complex lambda);

// A acting on the strands in members, tensored with identity elsewhere
Eigen::MatrixXcd lift_color_operator(const Eigen::MatrixXcd& a,
                                     const std::vector<int>& members, int rank,
                                     int side);

// [1 - i sqrt(lambda) C^{1/2} (sum_C sigma_C) C^{1/2}]^{-1} as a dense matrix;
// an empty kernel_diag means the identity kernel
Eigen::MatrixXcd resolvent_build(
    int rank, int side,
    const std::vector<std::pair<GeneralizedColor, Eigen::MatrixXcd>>& sigmas,
    Complex lambda, const std::vector<double>& kernel_diag = {});

double resolvent_norm(const Eigen::MatrixXcd& m);

// exact contraction of the dressed tree: lambda^n N^{-(d-1)n} times the trace
// of the loop-vertex network with R / R^dagger at the dressed corners
Complex contract_dressed_tree(const ResolventDressedTree& t, int side,
                              Complex lambda, const Eigen::MatrixXcd& r);

// split at a corner: the opposite corner sits n boundary steps away, the two
// halves cover n corners each, and the cut edges carry the scalar product
struct IcsSplit {
    int corner = 0;
    int opposite = 0;
    std::vector<int> first_half;    // corner ids from the corner, exclusive of opposite
    std::vector<int> second_half;   // corner ids from the opposite
    std::vector<int> cut_edges;     // edges with one boundary side in each half
};

IcsSplit ics_split(const ResolventDressedTree& t, int corner);

// all labeled trees on order + 1 vertices with every edge coloring
std::vector<ColoredTree> enumerate_order_trees(int rank, int order);

struct IcsReport {
    int order = 0;
    int side = 0;
    std::size_t samples = 0;
    int violations = 0;
    double k_constant = 1.0;     // 1 / cos(arg(lambda) / 2)
    double sup_undressed = 0.0;  // sup over same-order trees of |A^empty|
    double bound = 0.0;          // K^{2n} sup_undressed
    double max_amplitude = 0.0;
    double max_ratio = 0.0;      // max |A| / bound
};

// Cauchy-Schwarz bound check: |A_T| <= K^{2n} sup |A^empty| over random
// Hermitian sigma draws at rank 3
IcsReport ics_verify(const ResolventDressedTree& t, int side, Complex lambda,
                     std::size_t samples, std::uint64_t seed);

// dressed-corner halving: p_{r+1} = 2 p_r - 2 ceil(p_r / (2n)) while the
// amplitude doubles, so q_r = p_r / 2^r shrinks by 1 - 1/(2n) per round
std::vector<double> rarefaction_trace(int order, int p0, int iterations);

}  // namespace cft::tensor
