#include "cft/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cft/errors.hpp"
#include "cft/quadrature.hpp"

namespace cft::comb {

namespace {

// int over 0 < x_0 < ... < x_{k-1} < 1 of prod x_r^{e_r}.
double ordered_monomial_integral(const std::vector<int>& expo) {
    double v = 1.0;
    long acc = 0;
    for (std::size_t r = 0; r < expo.size(); ++r) {
        acc += expo[r] + 1;
        v /= static_cast<double>(acc);
    }
    return v;
}

// int over the same simplex of exp(sum c_r x_r), by mapped Gauss-Legendre.
double ordered_exponential_integral(const std::vector<double>& c,
                                    double tol) {
    const int k = static_cast<int>(c.size());
    if (k == 0) return 1.0;
    static const quad::rule rules[3] = {quad::gauss_legendre01(10),
                                        quad::gauss_legendre01(14),
                                        quad::gauss_legendre01(20)};
    std::vector<int> ident(k);
    std::iota(ident.begin(), ident.end(), 0);
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
        const quad::rule& r = rules[level];
        const int np = static_cast<int>(r.x.size());
        std::vector<int> idx(k, 0);
        std::vector<double> u(k), x(k);
        double total = 0.0;
        while (true) {
            double wgt = 1.0;
            for (int d = 0; d < k; ++d) {
                u[d] = r.x[idx[d]];
                wgt *= r.w[idx[d]];
            }
            double jac = quad::ordered_cell_map(ident, u, x);
            double s = 0.0;
            for (int d = 0; d < k; ++d) s += c[d] * x[d];
            total += wgt * jac * std::exp(s);
            int d = 0;
            while (d < k && ++idx[d] == np) idx[d++] = 0;
            if (d == k) break;
        }
        if (level > 0 && std::abs(total - prev) <= tol * std::max(1.0, std::abs(total)))
            return total;
        prev = total;
    }
    return prev;
}

}  // namespace

ForestFormulaReport forest_formula_verify(int n,
                                          const Eigen::MatrixXd& couplings,
                                          double quad_tol) {
    require(n >= 1, "forest_formula_verify: n >= 1");
    if (n > 5) throw size_limit_error("forest_formula_verify: n > 5");
    require(couplings.rows() == n && couplings.cols() == n,
            "forest_formula_verify: coupling table must be n x n");
    require(couplings.isApprox(couplings.transpose(), 1e-12),
            "forest_formula_verify: couplings must be symmetric");

    LabeledGraph g = complete_graph(n);
    auto t_of = [&](int e) {
        auto [u, v] = g.edges[e];
        return couplings(u, v);
    };

    double lhs_exponent = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lhs_exponent += couplings(i, j);

    ForestFormulaReport rep;
    rep.lhs = std::exp(lhs_exponent);

    double rhs = 0.0;
    for (const Forest& f : enumerate_forests(g)) {
        ++rep.forest_count;
        const int k = f.size();
        double edge_factor = 1.0;
        for (int e : f.edge_ids) edge_factor *= t_of(e);

        // Pairs in the same component and the edge ids of their tree paths.
        std::vector<std::pair<double, std::vector<int>>> pair_paths;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::vector<int> path = forest_path(g, f, a, b);
                if (!path.empty())
                    pair_paths.emplace_back(couplings(a, b), std::move(path));
            }

        double integral;
        if (k == 0) {
            integral = 1.0;
        } else {
            std::vector<int> rank_of(g.edge_count(), -1);
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            integral = 0.0;
            do {
                for (int r = 0; r < k; ++r)
                    rank_of[f.edge_ids[perm[r]]] = r;
                std::vector<double> c(k, 0.0);
                for (const auto& [t, path] : pair_paths) {
                    int best = k;
                    for (int e : path) best = std::min(best, rank_of[e]);
                    c[best] += t;
                }
                integral += ordered_exponential_integral(c, quad_tol);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        rhs += edge_factor * integral;
    }
    rep.rhs = rhs;
    rep.abs_residual = std::abs(rep.lhs - rep.rhs);
    rep.rel_residual = rep.abs_residual / std::max(1e-300, std::abs(rep.lhs));
    return rep;
}

Poly poly_derivative(const Poly& p, int order) {
    Poly q = p;
    for (int t = 0; t < order; ++t) {
        if (q.size() <= 1) return {};  // zero polynomial
        Poly d(q.size() - 1);
        for (std::size_t i = 1; i < q.size(); ++i)
            d[i - 1] = q[i] * static_cast<double>(i);
        q = std::move(d);
    }
    return q;
}

double gaussian_moment(double variance, int k) {
    if (k % 2 == 1) return 0.0;
    double v = 1.0;
    for (int j = k - 1; j >= 1; j -= 2) v *= j;
    return v * std::pow(variance, k / 2);
}

namespace {

// Wick pairing sum; each cross pair contributes C * x_{min rank}, recorded as
// a monomial exponent bump.
void isserlis(const std::vector<int>& vars, std::size_t used_mask,
              double coeff, const std::vector<std::vector<int>>& min_rank,
              std::vector<int>& expo, double C,
              std::map<std::vector<int>, double>& out) {
    std::size_t m = vars.size();
    std::size_t first = 0;
    while (first < m && (used_mask >> first) & 1) ++first;
    if (first == m) {
        out[expo] += coeff;
        return;
    }
    for (std::size_t j = first + 1; j < m; ++j) {
        if ((used_mask >> j) & 1) continue;
        int a = vars[first], b = vars[j];
        std::size_t mask = used_mask | (1ULL << first) | (1ULL << j);
        if (a == b) {
            isserlis(vars, mask, coeff * C, min_rank, expo, C, out);
        } else {
            int r = min_rank[a][b];
            ++expo[r];
            isserlis(vars, mask, coeff * C, min_rank, expo, C, out);
            --expo[r];
        }
    }
}

}  // namespace

ReplicaReport gaussian_replica_verify(int n, double C,
                                      const std::vector<Poly>& polys) {
    require(n >= 1 && n <= 5, "gaussian_replica_verify: need 1 <= n <= 5");
    require(C > 0.0, "gaussian_replica_verify: covariance must be positive");
    require(static_cast<int>(polys.size()) == n,
            "gaussian_replica_verify: need one polynomial per replica");
    for (const Poly& p : polys)
        require(!p.empty() && p.size() <= 5,
                "gaussian_replica_verify: degree must be <= 4");

    // LHS: all replicas equal; multiply the polynomials and take moments.
    Poly prod{1.0};
    for (const Poly& p : polys) {
        Poly next(prod.size() + p.size() - 1, 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                next[i + j] += prod[i] * p[j];
        prod = std::move(next);
    }
    double lhs = 0.0;
    for (std::size_t kdeg = 0; kdeg < prod.size(); ++kdeg)
        lhs += prod[kdeg] * gaussian_moment(C, static_cast<int>(kdeg));

    LabeledGraph g = complete_graph(n);
    double rhs = 0.0;
    for (const Forest& f : enumerate_forests(g)) {
        const int k = f.size();
        std::vector<int> deg(n, 0);
        for (int e : f.edge_ids) {
            deg[g.edges[e].first]++;
            deg[g.edges[e].second]++;
        }
        std::vector<Poly> dpolys(n);
        bool dead = false;
        for (int i = 0; i < n; ++i) {
            dpolys[i] = poly_derivative(polys[i], deg[i]);
            if (dpolys[i].empty()) dead = true;
        }
        if (dead) continue;

        std::vector<int> comp = components(g, f.edge_ids);

        if (k == 0) {
            double term = 1.0;
            for (int i = 0; i < n; ++i) {
                double e = 0.0;
                for (std::size_t d = 0; d < dpolys[i].size(); ++d)
                    e += dpolys[i][d] * gaussian_moment(C, static_cast<int>(d));
                term *= e;
            }
            rhs += term;
            continue;
        }

        std::vector<int> rank_of_edge(g.edge_count(), -1);
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        double forest_total = 0.0;
        do {
            for (int r = 0; r < k; ++r)
                rank_of_edge[f.edge_ids[perm[r]]] = r;
            // min rank along the path, per connected pair
            std::vector<std::vector<int>> min_rank(
                n, std::vector<int>(n, -1));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (comp[a] == comp[b]) {
                        int best = k;
                        for (int e : forest_path(g, f, a, b))
                            best = std::min(best, rank_of_edge[e]);
                        min_rank[a][b] = min_rank[b][a] = best;
                    }

            // per component: expectation as a polynomial in rank variables
            std::map<std::vector<int>, double> cellpoly;
            cellpoly[std::vector<int>(k, 0)] = 1.0;
            int ncomp = 1 + *std::max_element(comp.begin(), comp.end());
            for (int cid = 0; cid < ncomp; ++cid) {
                std::vector<int> members;
                for (int i = 0; i < n; ++i)
                    if (comp[i] == cid) members.push_back(i);
                // expand the product of member polynomials
                std::map<std::vector<int>, double> comp_poly;
                std::vector<std::size_t> pick(members.size(), 0);
                while (true) {
                    double coeff = 1.0;
                    std::vector<int> vars;
                    for (std::size_t t = 0; t < members.size(); ++t) {
                        coeff *= dpolys[members[t]][pick[t]];
                        for (std::size_t rep = 0; rep < pick[t]; ++rep)
                            vars.push_back(members[t]);
                    }
                    if (coeff != 0.0 && vars.size() % 2 == 0) {
                        std::vector<int> expo(k, 0);
                        isserlis(vars, 0, coeff, min_rank, expo, C, comp_poly);
                    }
                    std::size_t t = 0;
                    while (t < members.size() &&
                           ++pick[t] == dpolys[members[t]].size())
                        pick[t++] = 0;
                    if (t == members.size()) break;
                }
                // multiply into cellpoly
                std::map<std::vector<int>, double> merged;
                for (const auto& [ea, ca] : cellpoly)
                    for (const auto& [eb, cb] : comp_poly) {
                        std::vector<int> e(k);
                        for (int r = 0; r < k; ++r) e[r] = ea[r] + eb[r];
                        merged[e] += ca * cb;
                    }
                cellpoly = std::move(merged);
            }
            for (const auto& [expo, coeff] : cellpoly)
                forest_total += coeff * ordered_monomial_integral(expo);
        } while (std::next_permutation(perm.begin(), perm.end()));

        rhs += std::pow(C, k) * forest_total;
    }

    ReplicaReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.abs_residual = std::abs(lhs - rhs);
    rep.rel_residual = rep.abs_residual / std::max(1.0, std::abs(lhs));
    return rep;
}

}  // namespace cft::comb
