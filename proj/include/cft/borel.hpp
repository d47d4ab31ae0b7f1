#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "cft/exact.hpp"

namespace cft::borel {

using Complex = std::complex<double>;

// Truncated power series f(x) = sum_k coefficients[k] x^k.
struct PowerSeries {
    std::vector<Complex> coefficients;

    std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

PowerSeries make_series(std::vector<Complex> coefficients);

// Disk D_R = { lambda : Re(1/lambda) > 1/R }, i.e. the open disk of radius
// R/2 centered at R/2, tangent to the imaginary axis at the origin.
struct NevanlinnaDisk {
    double R;
};

NevanlinnaDisk make_disk(double R);

bool disk_contains(double R, Complex lambda);

// Partial sum of B(t) = sum_k f_k t^k / k! using the first `terms` coefficients.
Complex borel_transform(const PowerSeries& s, double t, std::size_t terms);

struct LaplaceResult {
    Complex value;
    double error_bound;
};

// f(lambda) = (1/lambda) * integral_0^inf B(t) exp(-t/lambda) dt.
//
// The integrand envelope c*exp(t/R - t*Re(1/lambda)) sets the horizon: segments
// are added until the analytic tail bound drops below 1e-14 of the accumulated
// value and the last segment is numerically negligible.  envelope_R defaults to
// "no exponential growth" (R = infinity).
LaplaceResult laplace_resum(const std::function<Complex(double)>& B, Complex lambda,
                            double envelope_c = 1.0,
                            double envelope_R = std::numeric_limits<double>::infinity());

struct RemainderSample {
    int n;
    Complex lambda;
    Complex remainder;
};

struct RemainderFit {
    double K;
    double sigma;
    double residual;  // rms residual of the linear fit in log space
    int n_min;
    int n_max;
};

// Least-squares fit of log|R_n| - log n! - n log|lambda| = log K + n log sigma.
// Samples with n < 2 are discarded before fitting; at least three distinct
// orders must survive.
RemainderFit remainder_fit(const std::vector<RemainderSample>& samples);

// Taylor coefficient of the d=0 quartic partition function:
// a_n = (-1)^n (4n-1)!!/n!, computed exactly.
BigRational d0_phi4_coefficient_exact(unsigned n);

// Series of the a_n above, orders 0..orders inclusive; orders <= 30.
PowerSeries d0_phi4_series(unsigned orders);

}  // namespace cft::borel
