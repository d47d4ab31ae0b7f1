#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cft/graph.hpp"

namespace cft::comb {

struct ForestFormulaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    int forest_count = 0;
};

// Checks exp(sum t_ij) = sum over forests of prod t_l * int exp(sum t_ij
// X^F_ij(w)) dw on K_n.  couplings must be symmetric; the diagonal is
// ignored.  The w-integrals are done per ordering cell (the integrand is a
// smooth exponential there) with Gauss-Legendre refinement to quad_tol.
ForestFormulaReport forest_formula_verify(int n,
                                          const Eigen::MatrixXd& couplings,
                                          double quad_tol = 1e-10);

// Dense polynomial in one variable, coefficients by ascending degree.
using Poly = std::vector<double>;

Poly poly_derivative(const Poly& p, int order);
double gaussian_moment(double variance, int k);  // E[tau^k], N(0,variance)

struct ReplicaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
};

// Gaussian replica corollary of the forest formula for scalar covariance C:
//   E_C[prod f_i(tau)] = sum_F C^{|F|} int dw E_{C X^F(w)}[prod f_i^(d_i)].
// Everything is evaluated in closed form (Wick pairings, monomial cell
// integrals), so the residual is float rounding only.
ReplicaReport gaussian_replica_verify(int n, double C,
                                      const std::vector<Poly>& polys);

}  // namespace cft::comb
