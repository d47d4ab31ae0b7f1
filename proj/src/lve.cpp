#include "cft/lve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cft/errors.hpp"
#include "cft/quadrature.hpp"
#include "cft/rng.hpp"

namespace cft::lve {

namespace {

constexpr double pi = std::numbers::pi;

struct VertexPair {
    int i, j;
    std::vector<int> path;  // edge ids joining i and j
};

struct TreeGeometry {
    int n = 0;
    std::vector<int> degrees;
    std::vector<VertexPair> pairs;  // all i < j
};

TreeGeometry analyze(const plane::RootedPlaneTree& tree) {
    TreeGeometry g;
    g.n = tree.edge_count;
    g.degrees = tree.degrees;
    const auto paths = plane::tree_path_edges(tree);
    for (int i = 0; i < tree.vertex_count(); ++i)
        for (int j = i + 1; j < tree.vertex_count(); ++j)
            g.pairs.push_back({i, j, paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    return g;
}

double min_over_path(const std::vector<int>& path, const std::vector<double>& w) {
    double m = 1.0;
    for (int e : path) m = std::min(m, w[static_cast<std::size_t>(e)]);
    return m;
}

// Advances a mixed-radix counter; returns false once it wraps around.
bool advance(std::vector<int>& idx, int radix) {
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (++idx[d] < radix) return true;
        idx[d] = 0;
    }
    return idx.empty();
}

// Tabulated beta-node data for the tensor quadrature: per tuple the combined
// Gamma weight, sum of squares, and the products 2 b_i b_j per vertex pair.
struct BetaTable {
    std::vector<double> weight;
    std::vector<double> sumsq;
    std::vector<double> pair_prod;  // tuple-major, pairs contiguous
    std::size_t tuples = 0;
};

BetaTable tabulate_betas(const TreeGeometry& g, int nb) {
    const int nv = g.n + 1;
    std::vector<quad::rule> rules;
    rules.reserve(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v)
        rules.push_back(quad::gauss_gamma(nb, g.degrees[static_cast<std::size_t>(v)] - 1.0));

    BetaTable table;
    std::vector<int> idx(static_cast<std::size_t>(nv), 0);
    std::vector<double> b(static_cast<std::size_t>(nv));
    do {
        double weight = 1.0, sumsq = 0.0;
        for (int v = 0; v < nv; ++v) {
            const auto& r = rules[static_cast<std::size_t>(v)];
            b[static_cast<std::size_t>(v)] = r.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
            weight *= r.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
            sumsq += b[static_cast<std::size_t>(v)] * b[static_cast<std::size_t>(v)];
        }
        table.weight.push_back(weight);
        table.sumsq.push_back(sumsq);
        for (const VertexPair& p : g.pairs)
            table.pair_prod.push_back(2.0 * b[static_cast<std::size_t>(p.i)] *
                                      b[static_cast<std::size_t>(p.j)]);
        ++table.tuples;
    } while (advance(idx, nb));
    return table;
}

// E[exp(zf * beta.X(w).beta)] by exact ordering-cell decomposition of the w
// cube and tensor Gauss rules; exact in beta/w degree up to rule order.
Complex expectation_by_quadrature(const TreeGeometry& g, Complex zf, int nb, int nw) {
    const BetaTable betas = tabulate_betas(g, nb);
    const std::size_t npairs = g.pairs.size();

    if (g.n == 0) {
        Complex total = 0.0;
        for (std::size_t t = 0; t < betas.tuples; ++t)
            total += betas.weight[t] * std::exp(zf * betas.sumsq[t]);
        return total;
    }

    const quad::rule gl = quad::gauss_legendre01(nw);
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    for (int e = 0; e < g.n; ++e) perm[static_cast<std::size_t>(e)] = e;

    Complex total = 0.0;
    std::vector<double> u(static_cast<std::size_t>(g.n));
    std::vector<double> x(static_cast<std::size_t>(g.n));
    std::vector<int> rank(static_cast<std::size_t>(g.n));
    std::vector<std::size_t> min_edge(npairs);
    std::vector<double> xpair(npairs);
    do {
        for (int r = 0; r < g.n; ++r) rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = r;
        // within this ordering cell the path minimum sits on a fixed edge
        for (std::size_t q = 0; q < npairs; ++q) {
            int best = g.pairs[q].path.front();
            for (int e : g.pairs[q].path)
                if (rank[static_cast<std::size_t>(e)] < rank[static_cast<std::size_t>(best)]) best = e;
            min_edge[q] = static_cast<std::size_t>(best);
        }
        std::vector<int> widx(static_cast<std::size_t>(g.n), 0);
        do {
            double wq = 1.0;
            for (int d = 0; d < g.n; ++d) {
                u[static_cast<std::size_t>(d)] = gl.x[static_cast<std::size_t>(widx[static_cast<std::size_t>(d)])];
                wq *= gl.w[static_cast<std::size_t>(widx[static_cast<std::size_t>(d)])];
            }
            wq *= quad::ordered_cell_map(perm, u, x);
            for (std::size_t q = 0; q < npairs; ++q) xpair[q] = x[min_edge[q]];

            const double* pp = betas.pair_prod.data();
            for (std::size_t t = 0; t < betas.tuples; ++t, pp += npairs) {
                double qform = betas.sumsq[t];
                for (std::size_t q = 0; q < npairs; ++q) qform += pp[q] * xpair[q];
                total += wq * betas.weight[t] * std::exp(zf * qform);
            }
        } while (advance(widx, nw));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

struct McEstimate {
    Complex mean;
    double stderr_combined;
};

template <class Fn>
McEstimate monte_carlo_expectation(const TreeGeometry& g, std::size_t budget,
                                   std::mt19937_64& rng, double beta_scale, Fn&& integrand) {
    const int nv = g.n + 1;
    std::vector<std::gamma_distribution<double>> gammas;
    gammas.reserve(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v)
        gammas.emplace_back(static_cast<double>(g.degrees[static_cast<std::size_t>(v)]), beta_scale);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<double> b(static_cast<std::size_t>(nv));
    std::vector<double> w(static_cast<std::size_t>(g.n));
    Complex sum = 0.0;
    double sum2_re = 0.0, sum2_im = 0.0;
    for (std::size_t s = 0; s < budget; ++s) {
        for (int v = 0; v < nv; ++v) b[static_cast<std::size_t>(v)] = gammas[static_cast<std::size_t>(v)](rng);
        for (int e = 0; e < g.n; ++e) w[static_cast<std::size_t>(e)] = uniform(rng);
        double qform = 0.0;
        for (int v = 0; v < nv; ++v) qform += b[static_cast<std::size_t>(v)] * b[static_cast<std::size_t>(v)];
        for (const VertexPair& p : g.pairs)
            qform += 2.0 * b[static_cast<std::size_t>(p.i)] * b[static_cast<std::size_t>(p.j)] *
                     min_over_path(p.path, w);
        const Complex val = integrand(qform, b);
        sum += val;
        sum2_re += val.real() * val.real();
        sum2_im += val.imag() * val.imag();
    }
    const double nf = static_cast<double>(budget);
    const Complex mean = sum / nf;
    const double var_re = std::max(0.0, sum2_re / nf - mean.real() * mean.real());
    const double var_im = std::max(0.0, sum2_im / nf - mean.imag() * mean.imag());
    return {mean, std::sqrt((var_re + var_im) / std::max(1.0, nf - 1.0))};
}

// log of int_0^infty s^power exp(-s + z s^2/(2N)) ds for real z <= 0.
double log_radial_integral(double z, unsigned N, double power) {
    const double zeta = -z;
    double smax;
    if (power <= 0.0)
        smax = 0.0;
    else if (zeta == 0.0)
        smax = power;
    else
        smax = (std::sqrt(1.0 + 4.0 * zeta * power / N) - 1.0) * N / (2.0 * zeta);
    const auto g = [&](double s) {
        if (s <= 0.0) return power > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
        return power * std::log(s) - s + z * s * s / (2.0 * N);
    };
    const double gmax = g(std::max(smax, 1e-300));
    const auto f = [&](double s) { return std::exp(g(s) - gmax); };
    const double b0 = smax + 12.0 * std::sqrt(smax + 1.0) + 12.0;
    const double head = quad::integrate(f, 0.0, b0, 1e-13);
    const double tail = quad::integrate_to_infinity([&](double t) { return f(b0 + t); },
                                                    std::max(b0, 1.0), 1e-13, 60);
    return gmax + std::log(head + tail);
}

void check_oracle_domain(const ModelPoint& p) {
    require(p.z.imag() == 0.0, "oracle needs a real coupling");
    require(p.z.real() <= 0.0 && p.z.real() > -0.25,
            "oracle restricted to real z in (-1/4, 0]");
    require(p.N >= 1 && p.N <= 64, "oracle restricted to N <= 64");
}

}  // namespace

ModelPoint make_point(Complex z, unsigned N) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "coupling must be finite");
    require(N >= 1, "vector dimension must be at least 1");
    return ModelPoint{z, N};
}

bool cardioid_contains(Complex lambda, cardioid_variant variant) {
    if (lambda == Complex{0.0, 0.0}) return true;
    const double rho = std::abs(lambda);
    const double phi = std::arg(lambda);
    switch (variant) {
        case cardioid_variant::standard: {
            const double c = std::cos(0.5 * phi);
            return rho < c * c;
        }
        case cardioid_variant::uniform_half_disk:
            return 16.0 * rho < 1.0 && std::abs(phi) <= 0.5 * pi;
        case cardioid_variant::extended: {
            const double a = std::abs(phi);
            if (a < 0.5 * pi) return 4.0 * rho < 1.0;
            const double c = std::cos(0.5 * a - 0.25 * pi);
            return 4.0 * rho < c * c;
        }
    }
    return false;
}

double resolvent_bound(Complex lambda) {
    if (lambda == Complex{0.0, 0.0}) return 1.0;
    return 1.0 / std::cos(0.5 * std::arg(lambda));
}

Complex catalan_g2(Complex z) {
    if (std::abs(z) < 1e-7) return ((14.0 * z + 5.0) * z + 2.0) * z * z + z + 1.0;
    return (1.0 - std::sqrt(1.0 - 4.0 * z)) / (2.0 * z);
}

namespace {

// std::pow(Complex{0,0}, 0) is NaN; integer powers by repeated product are not
Complex ipow(Complex z, unsigned n) {
    Complex out{1.0, 0.0};
    for (unsigned k = 0; k < n; ++k) out *= z;
    return out;
}

}  // namespace

double catalan_tail(double x, unsigned n_max) {
    require(x >= 0.0 && std::isfinite(x), "tail argument must be nonnegative");
    if (x == 0.0) return 0.0;
    if (4.0 * x >= 1.0) return std::numeric_limits<double>::infinity();
    double partial = 0.0;
    for (unsigned n = 0; n <= n_max; ++n)
        partial += to_double(BigRational(plane::catalan_number(n))) * std::pow(x, n);
    return std::max(0.0, catalan_g2(Complex{x, 0.0}).real() - partial);
}

TreeAmplitude lve_tree_term(const plane::RootedPlaneTree& tree, const ModelPoint& p,
                            std::size_t budget, std::uint64_t seed, eval_policy policy) {
    require(cardioid_contains(-p.z, cardioid_variant::uniform_half_disk),
            "coupling must lie in the uniform half-disk (16|z| < 1, Re z <= 0)");
    const int n = tree.edge_count;
    const TreeGeometry g = analyze(tree);
    const Complex zf = p.z / (2.0 * static_cast<double>(p.N));
    const Complex zpow = ipow(p.z, static_cast<unsigned>(n));

    const bool use_quadrature = policy == eval_policy::quadrature ||
                                (policy == eval_policy::automatic && n <= 3);
    if (use_quadrature) {
        if (n > 3) throw size_limit_error("tensor quadrature limited to trees with <= 3 edges");
        const int nb = n <= 1 ? 24 : (n == 2 ? 16 : 8);
        const int nw = n <= 1 ? 16 : (n == 2 ? 12 : 4);
        const Complex fine = expectation_by_quadrature(g, zf, nb, nw);
        const Complex coarse = expectation_by_quadrature(g, zf, std::max(4, nb - 3),
                                                         std::max(3, nw - 2));
        return {zpow * fine, std::abs(zpow) * std::abs(fine - coarse), eval_method::quadrature};
    }

    require(budget > 0, "monte carlo budget must be positive");
    auto rng = substream(seed, 0);
    const auto est = monte_carlo_expectation(
        g, budget, rng, 1.0, [&](double qform, const std::vector<double>&) {
            return std::exp(zf * qform);
        });
    return {zpow * est.mean, std::abs(zpow) * est.stderr_combined, eval_method::monte_carlo};
}

TreeAmplitude lve_tree_term_infinite_n(const plane::RootedPlaneTree& tree, Complex z) {
    return {ipow(z, static_cast<unsigned>(tree.edge_count)), 0.0,
            eval_method::closed_form_limit};
}

PartialSum lve_partial_sum(const ModelPoint& p, unsigned n_max, std::size_t budget,
                           std::uint64_t seed, eval_policy policy) {
    require(n_max <= 10, "partial sums capped at order 10");
    PartialSum out;
    out.value = 0.0;
    double err_sq = 0.0;
    std::uint64_t canonical = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
        const auto trees = plane::enumerate_rooted_plane_trees(static_cast<int>(n));
        for (std::size_t t = 0; t < trees.size(); ++t) {
            TreeAmplitude amp =
                lve_tree_term(trees[t], p, budget, splitmix64(seed ^ splitmix64(canonical)), policy);
            out.value += amp.value;
            err_sq += amp.error * amp.error;
            out.terms.push_back({static_cast<int>(n), t, amp});
            ++canonical;
        }
    }
    out.stat_error = std::sqrt(err_sq);
    const double phi = std::arg(-p.z);
    const double c = std::cos(0.5 * phi);
    out.tail_bound = catalan_tail(4.0 * std::abs(p.z) / (c * c), n_max);
    return out;
}

Complex lve_partial_sum_infinite_n(Complex z, unsigned n_max) {
    Complex sum = 0.0;
    for (unsigned n = 0; n <= n_max; ++n)
        sum += to_double(BigRational(plane::catalan_number(n))) * ipow(z, n);
    return sum;
}

double oracle_g2(const ModelPoint& p) {
    check_oracle_domain(p);
    const double z = p.z.real();
    const double num = log_radial_integral(z, p.N, static_cast<double>(p.N));
    const double den = log_radial_integral(z, p.N, static_cast<double>(p.N) - 1.0);
    return std::exp(num - den) / static_cast<double>(p.N);
}

double radial_log_z(double z, unsigned N) {
    require(z <= 0.0 && z > -0.25, "radial representation needs real z in (-1/4, 0]");
    require(N >= 1 && N <= 64, "radial representation restricted to N <= 64");
    return log_radial_integral(z, N, static_cast<double>(N) - 1.0) - std::lgamma(N);
}

double tau_log_z(double z, unsigned N) {
    require(z <= 0.0 && z > -0.25, "tau representation needs real z in (-1/4, 0]");
    require(N >= 1 && N <= 64, "tau representation restricted to N <= 64");
    const Complex sqz = std::sqrt(Complex{z, 0.0});
    const double nf = static_cast<double>(N);
    const double T = std::sqrt(170.0 / nf) + 1.0;
    const auto integrand = [&](double tau) {
        return std::exp(Complex{-0.5 * nf * tau * tau, 0.0} -
                        nf * std::log(1.0 - sqz * tau));
    };
    const Complex I = quad::integrate(integrand, -T, T, 1e-13);
    if (!(I.real() > 0.0)) throw numeric_error("tau integral lost positivity");
    return 0.5 * std::log(nf / (2.0 * pi)) + std::log(I.real());
}

double schwinger_dyson_residual(const ModelPoint& p) {
    check_oracle_domain(p);
    const double direct = oracle_g2(p);
    const double z = p.z.real();
    if (z == 0.0) return std::abs(direct - 1.0);
    const auto f = [&](double zz) { return radial_log_z(zz, p.N) / static_cast<double>(p.N); };
    const double h = 1e-4 * std::abs(z);
    const auto central = [&](double step) { return (f(z + step) - f(z - step)) / (2.0 * step); };
    const double d = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    return std::abs(direct - (1.0 + 2.0 * z * d));
}

std::vector<BigRational> perturbative_g2_coefficients(unsigned N, unsigned order) {
    require(N >= 1, "vector dimension must be at least 1");
    require(order <= 30, "perturbative coefficients capped at order 30");
    // moment series: Z = sum B_k z^k, N G2 Z = N sum A_k z^k with
    // A_k = prod_{j=0}^{2k}(N+j) / (N (2N)^k k!), B_k the same without the
    // final factor; G2 = (sum A_k z^k)/(sum B_k z^k) by series division.
    std::vector<BigRational> A(order + 1), B(order + 1);
    for (unsigned k = 0; k <= order; ++k) {
        BigInt rising = 1;
        for (unsigned j = 0; j + 1 <= 2 * k; ++j) rising *= BigInt(N + j);
        BigInt denom = factorial(k);
        BigInt two_n_pow = 1;
        for (unsigned j = 0; j < k; ++j) two_n_pow *= BigInt(2 * N);
        B[k] = BigRational(rising, denom * two_n_pow);
        A[k] = B[k] * BigRational(BigInt(N + 2 * k), BigInt(N));
    }
    std::vector<BigRational> g(order + 1);
    for (unsigned k = 0; k <= order; ++k) {
        BigRational acc = A[k];
        for (unsigned j = 0; j < k; ++j) acc -= g[j] * B[k - j];
        g[k] = acc;  // B_0 = 1
    }
    return g;
}

Complex taylor_remainder(const ModelPoint& p, unsigned order) {
    require(order >= 1 && order <= 6, "remainder order must lie in 1..6");
    require(cardioid_contains(-p.z, cardioid_variant::uniform_half_disk),
            "coupling must lie in the uniform half-disk");
    check_oracle_domain(p);
    const auto g = perturbative_g2_coefficients(p.N, order - 1);
    Complex partial = 0.0;
    for (unsigned k = 0; k < order; ++k)
        partial += to_double(g[k]) * ipow(p.z, k);
    return Complex{oracle_g2(p), 0.0} - partial;
}

namespace {

struct MeanCutTerm {
    double mean, cut, mean_err, cut_err;
};

// E[cos Theta] and -E[sin Theta] under u_i ~ Gamma(d_i, scale sqrt 2), with
// Theta = (2n+1)pi/4 - (sqrt2/2) sum u + z/(2N) u.X(w).u.
MeanCutTerm mean_cut_quadrature(const TreeGeometry& g, double z, unsigned N, int nb, int nw) {
    const double a = std::sqrt(2.0) / 2.0;
    const double phase = (2.0 * g.n + 1.0) * pi / 4.0;
    const double zf = z / (2.0 * static_cast<double>(N));
    const int nv = g.n + 1;

    const auto eval = [&](int nbb, int nww) -> std::pair<double, double> {
        std::vector<quad::rule> rules;
        for (int v = 0; v < nv; ++v) {
            quad::rule r = quad::gauss_gamma(nbb, g.degrees[static_cast<std::size_t>(v)] - 1.0);
            for (double& node : r.x) node *= std::sqrt(2.0);  // rate sqrt2/2
            rules.push_back(std::move(r));
        }
        const quad::rule gl = g.n > 0 ? quad::gauss_legendre01(nww) : quad::rule{};
        std::vector<int> perm(static_cast<std::size_t>(g.n));
        std::vector<int> rank(static_cast<std::size_t>(g.n));
        std::vector<double> uu(static_cast<std::size_t>(g.n)), x(static_cast<std::size_t>(g.n));

        double mean = 0.0, cut = 0.0;
        std::vector<int> idx(static_cast<std::size_t>(nv), 0);
        std::vector<double> u(static_cast<std::size_t>(nv));
        do {
            double weight = 1.0, linear = 0.0, sumsq = 0.0;
            for (int v = 0; v < nv; ++v) {
                const auto& r = rules[static_cast<std::size_t>(v)];
                u[static_cast<std::size_t>(v)] = r.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
                weight *= r.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(v)])];
                linear += u[static_cast<std::size_t>(v)];
                sumsq += u[static_cast<std::size_t>(v)] * u[static_cast<std::size_t>(v)];
            }
            const double base = phase - a * linear;
            if (g.n == 0) {
                const double theta = base + zf * sumsq;
                mean += weight * std::cos(theta);
                cut -= weight * std::sin(theta);
            } else {
                // integrate the w block per ordering cell for this u tuple
                for (int e = 0; e < g.n; ++e) perm[static_cast<std::size_t>(e)] = e;
                double wmean = 0.0, wcut = 0.0;
                do {
                    for (int r = 0; r < g.n; ++r)
                        rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = r;
                    std::vector<int> widx(static_cast<std::size_t>(g.n), 0);
                    do {
                        double wq = 1.0;
                        for (int d = 0; d < g.n; ++d) {
                            uu[static_cast<std::size_t>(d)] =
                                gl.x[static_cast<std::size_t>(widx[static_cast<std::size_t>(d)])];
                            wq *= gl.w[static_cast<std::size_t>(widx[static_cast<std::size_t>(d)])];
                        }
                        wq *= quad::ordered_cell_map(perm, uu, x);
                        double qform = sumsq;
                        for (const VertexPair& pr : g.pairs) {
                            int best = pr.path.front();
                            for (int e : pr.path)
                                if (rank[static_cast<std::size_t>(e)] < rank[static_cast<std::size_t>(best)])
                                    best = e;
                            qform += 2.0 * u[static_cast<std::size_t>(pr.i)] *
                                     u[static_cast<std::size_t>(pr.j)] * x[static_cast<std::size_t>(best)];
                        }
                        const double theta = base + zf * qform;
                        wmean += wq * std::cos(theta);
                        wcut -= wq * std::sin(theta);
                    } while (advance(widx, nww));
                } while (std::next_permutation(perm.begin(), perm.end()));
                mean += weight * wmean;
                cut += weight * wcut;
            }
        } while (advance(idx, nbb));
        return {mean, cut};
    };

    const auto fine = eval(nb, nw);
    const auto coarse = eval(nb - 6, std::max(3, nw - 3));
    return {fine.first, fine.second, std::abs(fine.first - coarse.first),
            std::abs(fine.second - coarse.second)};
}

MeanCutTerm mean_cut_monte_carlo(const TreeGeometry& g, double z, unsigned N,
                                 std::size_t budget, std::mt19937_64& rng) {
    const double a = std::sqrt(2.0) / 2.0;
    const double phase = (2.0 * g.n + 1.0) * pi / 4.0;
    const double zf = z / (2.0 * static_cast<double>(N));

    const auto est = monte_carlo_expectation(
        g, budget, rng, std::sqrt(2.0), [&](double qform, const std::vector<double>& u) {
            double linear = 0.0;
            for (double ui : u) linear += ui;
            const double theta = phase - a * linear + zf * qform;
            return Complex{std::cos(theta), -std::sin(theta)};
        });
    // real/imag parts carry cos and -sin; errors are conservative (combined)
    return {est.mean.real(), est.mean.imag(), est.stderr_combined, est.stderr_combined};
}

}  // namespace

MeanCutResult mean_cut_functions(double z, unsigned N, unsigned n_max,
                                 std::size_t budget, std::uint64_t seed) {
    require(z > 0.0 && z < 0.125, "mean/cut functions defined for 0 < z < 1/8");
    require(n_max <= 6, "mean/cut truncation capped at order 6");
    require(N >= 1, "vector dimension must be at least 1");
    require(budget > 0, "budget must be positive");

    MeanCutResult out{0.0, 0.0, 0.0, 0.0, 0.0};
    double mean_err_sq = 0.0, cut_err_sq = 0.0;
    std::uint64_t canonical = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
        const double factor = std::pow(z, n) * std::pow(2.0, n) * std::sqrt(2.0);
        const auto trees = plane::enumerate_rooted_plane_trees(static_cast<int>(n));
        for (const auto& tree : trees) {
            const TreeGeometry g = analyze(tree);
            MeanCutTerm term{};
            if (n <= 2) {
                const int nb = n == 0 ? 48 : (n == 1 ? 40 : 24);
                const int nw = n <= 1 ? 20 : 12;
                term = mean_cut_quadrature(g, z, N, nb, nw);
            } else {
                auto rng = substream(seed, canonical);
                term = mean_cut_monte_carlo(g, z, N, budget, rng);
            }
            out.mean += factor * term.mean;
            out.cut += factor * term.cut;
            mean_err_sq += factor * factor * term.mean_err * term.mean_err;
            cut_err_sq += factor * factor * term.cut_err * term.cut_err;
            ++canonical;
        }
    }
    out.mean_error = std::sqrt(mean_err_sq);
    out.cut_error = std::sqrt(cut_err_sq);
    out.tail_bound = std::sqrt(2.0) * catalan_tail(2.0 * z, n_max);
    return out;
}

}  // namespace cft::lve
