#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cft/exact.hpp"
#include "cft/plane_tree.hpp"

namespace cft::lve {

using Complex = std::complex<double>;

// Coupling and vector dimension of the quartic N-vector model
// Z(z,N) = int exp(-(phibar.phi) + z/(2N) (phibar.phi)^2).
struct ModelPoint {
    Complex z;
    unsigned N;
};

ModelPoint make_point(Complex z, unsigned N);

// Analyticity domains, expressed for the positive-stable coupling lambda
// (the vector model passes lambda = -z):
//   standard:          rho < cos^2(phi/2) with lambda = rho e^{i phi}
//   extended:          quarter-disks 4|lambda| < 1 for |phi| < pi/2, arcs
//                      4|lambda| < cos^2(|phi|/2 - pi/4) beyond
//   uniform_half_disk: 16|lambda| < 1 and |phi| <= pi/2
enum class cardioid_variant { standard, extended, uniform_half_disk };

bool cardioid_contains(Complex lambda, cardioid_variant variant);

// sup_tau |1/(1 - i sqrt(rho) e^{i phi/2} tau)| = 1/cos(phi/2) for real tau.
double resolvent_bound(Complex lambda);

// (1 - sqrt(1-4z))/(2z): generating function of the Catalan numbers and the
// N -> infinity two-point function.
Complex catalan_g2(Complex z);

// sum_{n > n_max} C_n x^n for real x >= 0; +infinity once 4x >= 1.
double catalan_tail(double x, unsigned n_max);

enum class eval_method { quadrature, monte_carlo, closed_form_limit };

// Evaluation strategy for a single tree term: automatic picks quadrature for
// small trees and Monte Carlo above.
enum class eval_policy { automatic, monte_carlo, quadrature };

struct TreeAmplitude {
    Complex value;
    double error;  // standard error (MC) or quadrature error estimate
    eval_method method;
};

// z^n E[exp(z/(2N) beta.X(w).beta)] with beta_i ~ Gamma(d_i) and w uniform;
// requires -z inside the uniform half-disk.
TreeAmplitude lve_tree_term(const plane::RootedPlaneTree& tree, const ModelPoint& p,
                            std::size_t budget, std::uint64_t seed,
                            eval_policy policy = eval_policy::automatic);

// N = infinity limit: the term collapses to exactly z^n.
TreeAmplitude lve_tree_term_infinite_n(const plane::RootedPlaneTree& tree, Complex z);

struct TreeRecord {
    int order;
    std::size_t index;  // position within its order's enumeration
    TreeAmplitude amplitude;
};

struct PartialSum {
    Complex value;
    double stat_error;  // accumulated evaluation error
    double tail_bound;  // sum_{n > n_max} C_n (kappa |z|)^n
    std::vector<TreeRecord> terms;
};

// Sum of lve_tree_term over all rooted plane trees with at most n_max edges
// (plane-tree enumeration absorbs the 1/n!).
PartialSum lve_partial_sum(const ModelPoint& p, unsigned n_max, std::size_t budget,
                           std::uint64_t seed, eval_policy policy = eval_policy::automatic);

// sum_{n <= n_max} C_n z^n, the exact N = infinity partial sum.
Complex lve_partial_sum_infinite_n(Complex z, unsigned n_max);

// G2 from the radial reduction of the defining integral:
// (1/N) int s^N e^{-s+z s^2/2N} ds / int s^{N-1} e^{-s+z s^2/2N} ds.
// Requires real z in (-1/4, 0] and N <= 64.
double oracle_g2(const ModelPoint& p);

// log Z(z,N) from the radial representation.
double radial_log_z(double z, unsigned N);

// log Z(z,N) from the tau intermediate-field integral
// sqrt(N/2pi) int exp(-N tau^2/2 - N log(1 - sqrt(z) tau)) dtau.
double tau_log_z(double z, unsigned N);

// |G2(moment quadrature) - [1 + 2z d/dz (1/N) log Z]| with the derivative by
// Richardson-extrapolated central differences.
double schwinger_dyson_residual(const ModelPoint& p);

// Exact Taylor coefficients g_k of G2(z,N) = sum g_k z^k, from the ratio of
// the moment series of the radial representation.
std::vector<BigRational> perturbative_g2_coefficients(unsigned N, unsigned order);

// R_order = oracle_g2 - sum_{k < order} g_k z^k; order in 1..6.
Complex taylor_remainder(const ModelPoint& p, unsigned order);

struct MeanCutResult {
    double mean;
    double cut;
    double mean_error;
    double cut_error;
    double tail_bound;  // sqrt(2) sum_{n > n_max} C_n (2z)^n
};

// Boundary values on the positive real axis 0 < z < 1/8: the rotated tree
// sums for (G2+ + G2-)/2 and (G2+ - G2-)/(2i), truncated at n_max <= 6.
MeanCutResult mean_cut_functions(double z, unsigned N, unsigned n_max,
                                 std::size_t budget, std::uint64_t seed);

}  // namespace cft::lve
