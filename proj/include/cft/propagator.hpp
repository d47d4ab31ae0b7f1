#pragma once

#include <vector>

namespace cft::tensor {

// diagonal momentum-space kernels for the field-theory variants
struct Propagator {
    enum class Kind { pure, tft, tgft_boulatov };
    Kind kind = Kind::pure;
    int rank = 3;
    double mass2 = 1.0;
};

Propagator make_propagator(Propagator::Kind kind, int rank, double mass2);

// kernel value at one momentum multiplet n in Z^d
double propagator_value(const Propagator& p, const std::vector<int>& momenta);

// dense diagonal over the box |n_j| <= cutoff, row-major in n + cutoff
struct DiagonalKernel {
    int rank = 0;
    int cutoff = 0;
    std::vector<double> values;

    double at(const std::vector<int>& momenta) const;
};

DiagonalKernel build_propagator(const Propagator& p, int cutoff);

// the four single-vertex graphs of the quartic melonic d = 3 field theory,
// evaluated as explicit momentum sums at zero external momentum
enum class T43Graph { divergent_tadpole, convergent_tadpole, vacuum_linear, vacuum_log };

enum class Growth { bounded, logarithmic, linear };

Growth expected_growth(T43Graph g);

double t43_graph_value(T43Graph g, int cutoff, double mass2 = 1.0);

struct PowerCountReport {
    T43Graph graph = T43Graph::divergent_tadpole;
    Growth expected = Growth::bounded;
    std::vector<int> cutoffs;
    std::vector<double> values;
    // least-squares a + b x with x = log(cutoff) resp. x = cutoff;
    // residuals are rms relative to the value spread
    double log_fit_slope = 0.0, log_fit_residual = 0.0;
    double linear_fit_slope = 0.0, linear_fit_residual = 0.0;
    double max_difference = 0.0;  // largest |value_{k+1} - value_k|
    double last_difference = 0.0;
};

PowerCountReport power_count_sweep(T43Graph g, const std::vector<int>& cutoffs,
                                   double mass2 = 1.0);

}  // namespace cft::tensor
