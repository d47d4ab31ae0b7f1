#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cft::mlve {

// one anticommuting generator: chi_label (bar=false) or chibar_label (bar=true)
struct Generator {
    int label;
    bool bar;
};

// ordered product of generators with a scalar prefactor
struct GrassmannWord {
    std::vector<Generator> gens;
    double sign = 1.0;
};

// left derivative; false when the generator is absent (word annihilated)
bool apply_left_derivative(GrassmannWord& word, int label, bool bar);

// Wick expectation for the Gaussian with covariance <chi_i chibar_j> = K(i,j)
double gaussian_expectation(const GrassmannWord& word, const Eigen::MatrixXd& K);

// determinant of K restricted to rows = chibar labels, columns = chi labels,
// each in order of appearance; its modulus equals |gaussian_expectation|
double minor_determinant(const GrassmannWord& word, const Eigen::MatrixXd& K);

}  // namespace cft::mlve
