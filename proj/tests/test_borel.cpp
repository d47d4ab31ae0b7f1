#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "cft/borel.hpp"
#include "cft/errors.hpp"
#include "cft/exact.hpp"

using cft::borel::Complex;
using cft::borel::PowerSeries;

TEST_CASE("disk membership matches Re(1/lambda) > 1/R") {
    CHECK(cft::borel::disk_contains(1.0, Complex{0.5, 0.0}));
    CHECK_FALSE(cft::borel::disk_contains(1.0, Complex{1.0, 0.0}));
    CHECK(cft::borel::disk_contains(1.0, Complex{0.5, 0.49}));
    CHECK_FALSE(cft::borel::disk_contains(1.0, Complex{0.5, 0.51}));
    CHECK_FALSE(cft::borel::disk_contains(1.0, Complex{0.0, 0.0}));
    CHECK_FALSE(cft::borel::disk_contains(1.0, Complex{-0.2, 0.1}));
}

TEST_CASE("disk is the circle of radius R/2 centered at R/2") {
    std::mt19937_64 rng(7741);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const double radii[] = {0.5, 1.0, 2.0};
    for (int trial = 0; trial < 10000; ++trial) {
        const double R = radii[trial % 3];
        const Complex lambda{coord(rng), coord(rng)};
        const double margin = std::abs(lambda - Complex{R / 2.0, 0.0}) - R / 2.0;
        if (std::abs(margin) < 1e-9) continue;  // both predicates round near the boundary
        CHECK(cft::borel::disk_contains(R, lambda) == (margin < 0.0));
    }
}

TEST_CASE("borel transform partial sums") {
    PowerSeries ones = cft::borel::make_series(std::vector<Complex>(10, Complex{1.0, 0.0}));
    CHECK(cft::borel::borel_transform(ones, 0.0, 10) == Complex{1.0, 0.0});

    // f_k = (-1)^k k! transforms into the geometric series for 1/(1+t).
    std::vector<Complex> alt;
    double fact = 1.0;
    for (int k = 0; k <= 30; ++k) {
        if (k > 0) fact *= k;
        alt.emplace_back((k % 2 == 0 ? fact : -fact), 0.0);
    }
    PowerSeries stieltjes = cft::borel::make_series(alt);
    const Complex at_half = cft::borel::borel_transform(stieltjes, 0.5, 30);
    CHECK(std::abs(at_half - Complex{2.0 / 3.0, 0.0}) < 1e-6);

    // On |t| < 1 the truncation error is bounded by the next term's magnitude.
    const double t = 0.8;
    for (std::size_t terms = 10; terms <= 30; terms += 5) {
        const Complex partial = cft::borel::borel_transform(stieltjes, t, terms);
        const double err = std::abs(partial - Complex{1.0 / (1.0 + t), 0.0});
        CHECK(err <= std::pow(t, static_cast<double>(terms)) + 1e-15);
    }
}

TEST_CASE("borel transform of the d0 series matches an exact rational oracle") {
    const unsigned orders = 19;
    PowerSeries s = cft::borel::d0_phi4_series(orders);

    // sum_{k<20} a_k (1/10)^k / k! accumulated in exact rational arithmetic.
    cft::BigRational exact(0);
    for (unsigned k = 0; k <= orders; ++k) {
        cft::BigRational term = cft::borel::d0_phi4_coefficient_exact(k);
        cft::BigInt denom = cft::factorial(k);
        cft::BigInt pow10 = 1;
        for (unsigned i = 0; i < k; ++i) pow10 *= 10;
        term /= cft::BigRational(denom * pow10);
        exact += term;
    }
    const Complex value = cft::borel::borel_transform(s, 0.1, 20);
    CHECK(std::abs(value.real() - cft::to_double(exact)) < 1e-12);
    CHECK(value.imag() == 0.0);
}

TEST_CASE("laplace resummation reproduces closed forms") {
    auto one = [](double) { return Complex{1.0, 0.0}; };
    auto result = cft::borel::laplace_resum(one, Complex{1.0, 0.0});
    CHECK(std::abs(result.value - Complex{1.0, 0.0}) < 1e-12);

    auto stieltjes = [](double t) { return Complex{1.0 / (1.0 + t), 0.0}; };
    result = cft::borel::laplace_resum(stieltjes, Complex{1.0, 0.0});
    // e * E1(1), the Borel sum of sum (-1)^k k! at lambda = 1
    CHECK(std::abs(result.value - Complex{0.596347362323194, 0.0}) < 1e-10);

    auto linear = [](double t) { return Complex{t, 0.0}; };
    result = cft::borel::laplace_resum(linear, Complex{0.5, 0.0}, 1.0, 10.0);
    CHECK(std::abs(result.value - Complex{0.5, 0.0}) < 1e-12);
}

TEST_CASE("resumming the transform of an entire-Borel series is consistent") {
    std::vector<Complex> coeffs;
    double fact = 1.0;
    for (int k = 0; k <= 30; ++k) {
        if (k > 0) fact *= k;
        coeffs.emplace_back(1.0 / fact, 0.0);
    }
    PowerSeries s = cft::borel::make_series(coeffs);
    auto B = [&](double t) { return cft::borel::borel_transform(s, t, s.coefficients.size()); };

    for (const Complex lambda : {Complex{0.7, 0.0}, Complex{0.3, 0.2}}) {
        const auto result = cft::borel::laplace_resum(B, lambda, 2.0, 1.5);
        CHECK(std::abs(result.value - std::exp(lambda)) < 1e-9);
    }
}

TEST_CASE("remainder fit recovers a planted growth model") {
    const double K = 2.0;
    const double sigma = 3.0;
    const Complex lambda{0.1, 0.0};
    std::vector<cft::borel::RemainderSample> samples;
    double fact = 1.0;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;
        const double magnitude = K * std::pow(sigma, n) * fact * std::pow(std::abs(lambda), n);
        samples.push_back({n, lambda, Complex{magnitude, 0.0}});
    }
    const auto fit = cft::borel::remainder_fit(samples);
    CHECK(std::abs(fit.K - K) / K < 1e-6);
    CHECK(std::abs(fit.sigma - sigma) / sigma < 1e-6);
    CHECK(fit.residual < 1e-9);
    CHECK(fit.n_min == 2);  // the n=1 sample is discarded by design
    CHECK(fit.n_max == 8);
}

TEST_CASE("remainder fit rejects degenerate inputs") {
    const Complex lambda{0.1, 0.0};
    std::vector<cft::borel::RemainderSample> one_order = {{3, lambda, Complex{1.0, 0.0}}};
    CHECK_THROWS_AS(cft::borel::remainder_fit(one_order), cft::validation_error);

    std::vector<cft::borel::RemainderSample> two_orders = {
        {2, lambda, Complex{1.0, 0.0}},
        {3, lambda, Complex{0.5, 0.0}},
    };
    CHECK_THROWS_AS(cft::borel::remainder_fit(two_orders), cft::validation_error);

    std::vector<cft::borel::RemainderSample> with_zero = {
        {2, lambda, Complex{1.0, 0.0}},
        {3, lambda, Complex{0.0, 0.0}},
        {4, lambda, Complex{0.5, 0.0}},
    };
    CHECK_THROWS_AS(cft::borel::remainder_fit(with_zero), cft::validation_error);
}

TEST_CASE("d0 quartic series coefficients") {
    PowerSeries s = cft::borel::d0_phi4_series(6);
    CHECK(s.coefficients[0] == Complex{1.0, 0.0});
    CHECK(s.coefficients[1] == Complex{-3.0, 0.0});
    CHECK(s.coefficients[2] == Complex{52.5, 0.0});
    // a_3 = -11!!/3! = -10395/6
    CHECK(s.coefficients[3] == Complex{-10395.0 / 6.0, 0.0});
    CHECK_THROWS_AS(cft::borel::d0_phi4_series(31), cft::validation_error);
}

TEST_CASE("d0 coefficient ratios grow factorially with constant 16") {
    // |a_{n+1}/a_n| = (4n+3)(4n+1)/(n+1), so ratio/n approaches 16: the series
    // has zero radius of convergence.
    PowerSeries s = cft::borel::d0_phi4_series(26);
    for (int n : {10, 15, 20, 25}) {
        const double ratio =
            std::abs(s.coefficients[static_cast<std::size_t>(n) + 1]) /
            std::abs(s.coefficients[static_cast<std::size_t>(n)]);
        const double expected = (4.0 * n + 3.0) * (4.0 * n + 1.0) / (n + 1.0);
        CHECK(ratio / n == doctest::Approx(expected / n).epsilon(1e-12));
    }
    const double ratio20 = std::abs(s.coefficients[21]) / std::abs(s.coefficients[20]);
    CHECK(ratio20 / 20.0 == doctest::Approx(16.0).epsilon(0.01));
}

TEST_CASE("laplace resummation rejects lambda outside the half plane") {
    auto one = [](double) { return Complex{1.0, 0.0}; };
    CHECK_THROWS_AS(cft::borel::laplace_resum(one, Complex{-1.0, 0.0}), cft::numeric_error);
    CHECK_THROWS_AS(cft::borel::laplace_resum(one, Complex{0.0, 1.0}), cft::numeric_error);
}
