#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "cft/errors.hpp"

namespace cft::quad {

// Gauss-Kronrod 7/15 node pair on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class T>
struct gk_result {
    T value;
    double error;
};

template <class Func, class T = std::invoke_result_t<Func, double>>
gk_result<T> gk15(const Func& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T ig{}, ik{};
    for (int i = 0; i < 8; ++i) {
        const double x = h * gk_nodes[i];
        T v = (i == 7) ? f(c) : T(f(c - x) + f(c + x));
        ik += gk_wk[i] * v;
        if (i % 2 == 1) ig += gk_wg[i / 2] * v;
    }
    ik *= h;
    ig *= h;
    return {ik, std::abs(ik - ig)};
}

// Adaptive bisection around gk15, absolute/relative mixed tolerance.
template <class Func, class T = std::invoke_result_t<Func, double>>
T integrate(const Func& f, double a, double b, double tol = 1e-10,
            int max_depth = 48) {
    struct seg {
        double a, b;
        int depth;
    };
    std::vector<seg> stack{{a, b, 0}};
    T total{};
    double err_budget = tol;
    while (!stack.empty()) {
        seg s = stack.back();
        stack.pop_back();
        auto r = gk15(f, s.a, s.b);
        double scale = std::max(1.0, std::abs(total));
        if (r.error < err_budget * scale * (s.b - s.a) / (b - a + 1e-300) ||
            r.error < 1e-16 * scale || s.depth >= max_depth) {
            total += r.value;
        } else {
            double m = 0.5 * (s.a + s.b);
            stack.push_back({s.a, m, s.depth + 1});
            stack.push_back({m, s.b, s.depth + 1});
        }
    }
    return total;
}

// Semi-infinite integral: sums [0,L],[L,2L],... until a segment falls below
// tol relative to the accumulated value.
template <class Func, class T = std::invoke_result_t<Func, double>>
T integrate_to_infinity(const Func& f, double first = 1.0, double tol = 1e-12,
                        int max_segments = 200) {
    T total{};
    double a = 0.0, len = first;
    for (int k = 0; k < max_segments; ++k) {
        T piece = integrate(f, a, a + len, tol);
        total += piece;
        a += len;
        if (k > 2 && std::abs(piece) < tol * std::max(1.0, std::abs(total)))
            return total;
        len *= 2.0;
    }
    throw numeric_error("semi-infinite quadrature did not settle");
}

struct rule {
    std::vector<double> x, w;
};

// Golub-Welsch: nodes/weights from the symmetric Jacobi matrix.
inline rule golub_welsch(const std::vector<double>& diag,
                         const std::vector<double>& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag[i];
        if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v * v;
    }
    return r;
}

// Gauss-Legendre on [0,1].
inline rule gauss_legendre01(int n) {
    std::vector<double> d(n, 0.0), e(n - 1);
    for (int k = 1; k < n; ++k) e[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    rule r = golub_welsch(d, e, 2.0);
    for (int i = 0; i < n; ++i) {
        r.x[i] = 0.5 * (r.x[i] + 1.0);
        r.w[i] *= 0.5;
    }
    return r;
}

// Gauss-Hermite for weight e^{-x^2/2}/sqrt(2 pi): expectation under N(0,1).
inline rule gauss_hermite_prob(int n) {
    std::vector<double> d(n, 0.0), e(n - 1);
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(static_cast<double>(k));
    return golub_welsch(d, e, 1.0);
}

// Generalized Gauss-Laguerre, weight x^alpha e^{-x} normalized by Gamma(alpha+1):
// expectation against the Gamma(alpha+1,1) density.
inline rule gauss_gamma(int n, double alpha) {
    std::vector<double> d(n), e(n - 1);
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k * (k + alpha));
    return golub_welsch(d, e, 1.0);
}

// Maps the unit cube onto the ordered cell x[perm[0]] < ... < x[perm[k-1]]
// of [0,1]^k; returns the Jacobian factor for the given cube point u.
inline double ordered_cell_map(const std::vector<int>& perm,
                               const std::vector<double>& u,
                               std::vector<double>& x) {
    const int k = static_cast<int>(perm.size());
    double jac = 1.0, prod = 1.0;
    for (int m = k - 1; m >= 0; --m) {
        prod *= u[m];
        x[perm[m]] = prod;
        if (m > 0) jac *= std::pow(u[m], m);
    }
    return jac;
}

}  // namespace cft::quad
