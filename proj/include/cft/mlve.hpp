#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "cft/exact.hpp"

namespace cft::mlve {

using Complex = std::complex<double>;

// index slice I_j = [M^{j-1}, M^j - 1]
std::pair<unsigned long long, unsigned long long> slice_range(unsigned M, int j);

// log2(1-x) = x + log(1-x) = O(x^2), with a series branch near zero
Complex log2_fn(Complex x);

// L_N = sum_{p<=N} 1/p, accumulated as an exact rational
BigRational harmonic_counterterm_exact(unsigned long long N);
double harmonic_counterterm(unsigned long long N);

// vector model with propagator 1/p, sliced geometrically with base M
struct SliceModel {
    unsigned M = 2;
    int j_min = 1;
    int j_max = 1;
    Complex lambda;
    unsigned long long N = 1;  // M^{j_max} - 1
    double counterterm = 1.0;  // L_N
};
SliceModel make_slice_model(unsigned M, int j_min, int j_max, Complex lambda);

// log of Z(lambda, N) by direct one-dimensional quadrature over the
// intermediate field; valid for lambda real in [-1,1] or |lambda|^2 < cos(2 arg lambda)
Complex oracle_logZ(const SliceModel& model);

struct SliceVertex {
    unsigned M = 2;
    int j = 1;
    Complex lambda;
    unsigned long long p_lo = 1;
    unsigned long long p_hi = 1;
};
SliceVertex make_slice_vertex(const SliceModel& model, int j);

// V_j^{(k)}(sigma) for k <= 4; k = 0 is V_j itself
Complex slice_potential(const SliceVertex& v, double sigma, unsigned k);
// d^k/dsigma^k W_j(sigma) with W_j = e^{-V_j} - 1, via Bell-polynomial composition
Complex slice_vertex_derivatives(const SliceVertex& v, double sigma, unsigned k);

enum class jungle_level { bosonic, fermionic };

struct JungleEdge {
    int a, b;
    jungle_level level;
};

// pair of disjoint forests whose union is a forest; slices are per-vertex
struct TwoLevelJungle {
    int n = 1;
    std::vector<JungleEdge> edges;
    std::vector<int> slices;  // empty until a slice assignment is chosen
};

// all two-level spanning trees on n labeled vertices: 2^{n-1} n^{n-2} of them
std::vector<TwoLevelJungle> enumerate_two_level_trees(int n);

// connected components of the bosonic subforest, as a block id per vertex
std::vector<int> bosonic_blocks(const TwoLevelJungle& jungle);

struct FermionicFactor {
    bool hard_core_ok = true;    // slices distinct inside every bosonic block
    bool slice_deltas_ok = true;  // fermionic edges join equal slices
    std::vector<double> determinants;  // one Y-minor per edge orientation
    double total = 0.0;                // signed Grassmann value
};

// Grassmann integral for a slice-assigned jungle; Y is indexed by bosonic
// block ids and must be symmetric PSD with unit diagonal and entries in [0,1]
FermionicFactor fermionic_factor(const TwoLevelJungle& jungle, const Eigen::MatrixXd& Y);

// orders 1..n_max of the jungle expansion of log Z; budget caps the total
// quadrature point count (rules degrade gracefully, never below a small floor)
std::vector<Complex> mlve_order_terms(const SliceModel& model, unsigned n_max,
                                      std::size_t budget);
Complex mlve_truncated_sum(const SliceModel& model, unsigned n_max, std::size_t budget);

}  // namespace cft::mlve
