#include "cft/borel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "cft/errors.hpp"
#include "cft/quadrature.hpp"

namespace cft::borel {

PowerSeries make_series(std::vector<Complex> coefficients) {
    require(!coefficients.empty(), "power series needs at least one coefficient");
    for (const Complex& c : coefficients)
        require(std::isfinite(c.real()) && std::isfinite(c.imag()),
                "power series coefficients must be finite");
    return PowerSeries{std::move(coefficients)};
}

NevanlinnaDisk make_disk(double R) {
    require(R > 0.0 && std::isfinite(R), "disk radius parameter must be positive");
    return NevanlinnaDisk{R};
}

bool disk_contains(double R, Complex lambda) {
    require(R > 0.0, "disk radius parameter must be positive");
    if (lambda == Complex{0.0, 0.0}) return false;
    return std::real(1.0 / lambda) > 1.0 / R;
}

Complex borel_transform(const PowerSeries& s, double t, std::size_t terms) {
    require(terms <= s.coefficients.size(),
            "requested more terms than the series provides");
    Complex sum = 0.0;
    double power_over_factorial = 1.0;  // t^k / k!
    for (std::size_t k = 0; k < terms; ++k) {
        if (k > 0) power_over_factorial *= t / static_cast<double>(k);
        sum += s.coefficients[k] * power_over_factorial;
    }
    return sum;
}

LaplaceResult laplace_resum(const std::function<Complex(double)>& B, Complex lambda,
                            double envelope_c, double envelope_R) {
    require(envelope_c > 0.0, "envelope constant must be positive");
    require(envelope_R > 0.0, "envelope growth scale must be positive");
    const double decay = std::real(1.0 / lambda) - 1.0 / envelope_R;
    if (!(decay > 0.0))
        throw numeric_error("laplace integral does not converge: Re(1/lambda) must exceed 1/R");

    const auto integrand = [&](double t) { return B(t) * std::exp(-t / lambda); };

    Complex total = 0.0;
    double error = 0.0;
    double a = 0.0;
    double width = std::max(4.0 * std::abs(lambda), 1.0);
    const int max_segments = 64;
    for (int seg = 0; seg < max_segments; ++seg) {
        const double b = a + width;
        const double tol = 1e-13 * std::max(1.0, std::abs(total));
        const Complex piece = quad::integrate(integrand, a, b, tol);
        total += piece;
        error += tol;
        // Analytic tail of the envelope past b, plus the observed contribution
        // of the last segment; both must be negligible before stopping.
        const double tail = envelope_c * std::exp(-decay * b) / decay;
        const double scale = std::max(std::abs(total), 1e-300);
        if (tail < 1e-14 * scale && std::abs(piece) < 1e-12 * scale) {
            return LaplaceResult{total / lambda, (error + tail) / std::abs(lambda)};
        }
        a = b;
        width *= 2.0;
    }
    throw numeric_error("laplace integral horizon not reached within segment budget");
}

RemainderFit remainder_fit(const std::vector<RemainderSample>& samples) {
    std::vector<RemainderSample> usable;
    for (const RemainderSample& s : samples) {
        if (s.n < 2) continue;  // low orders contaminate the asymptotic fit
        require(std::abs(s.remainder) > 0.0, "remainder samples must be nonzero");
        require(std::abs(s.lambda) > 0.0, "remainder samples need nonzero lambda");
        usable.push_back(s);
    }
    std::set<int> orders;
    for (const RemainderSample& s : usable) orders.insert(s.n);
    require(orders.size() >= 3, "remainder fit needs at least three distinct orders n >= 2");

    const auto m = static_cast<Eigen::Index>(usable.size());
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const RemainderSample& s = usable[static_cast<std::size_t>(i)];
        const double n = static_cast<double>(s.n);
        design(i, 0) = 1.0;
        design(i, 1) = n;
        rhs(i) = std::log(std::abs(s.remainder)) - std::lgamma(n + 1.0) -
                 n * std::log(std::abs(s.lambda));
    }
    const Eigen::Vector2d coeff = design.colPivHouseholderQr().solve(rhs);
    const double rms = std::sqrt((design * coeff - rhs).squaredNorm() / static_cast<double>(m));

    RemainderFit fit;
    fit.K = std::exp(coeff(0));
    fit.sigma = std::exp(coeff(1));
    fit.residual = rms;
    fit.n_min = *orders.begin();
    fit.n_max = *orders.rbegin();
    return fit;
}

BigRational d0_phi4_coefficient_exact(unsigned n) {
    BigInt numerator = odd_double_factorial(4 * static_cast<long>(n) - 1);
    if (n % 2 == 1) numerator = -numerator;
    return BigRational(numerator, factorial(n));
}

PowerSeries d0_phi4_series(unsigned orders) {
    require(orders <= 30, "d0 series capped at order 30");
    std::vector<Complex> coeffs;
    coeffs.reserve(orders + 1);
    for (unsigned n = 0; n <= orders; ++n)
        coeffs.emplace_back(to_double(d0_phi4_coefficient_exact(n)), 0.0);
    return PowerSeries{std::move(coeffs)};
}

}  // namespace cft::borel
