#include "cft/mlve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>

#include "cft/errors.hpp"
#include "cft/grassmann.hpp"
#include "cft/quadrature.hpp"

namespace cft::mlve {

namespace {

constexpr double kPi = 3.14159265358979323846;

unsigned long long checked_pow(unsigned base, int exponent) {
    unsigned long long v = 1;
    for (int t = 0; t < exponent; ++t) {
        require(v <= (1ull << 62) / base, "slice bound overflows 62 bits");
        v *= base;
    }
    return v;
}

}  // namespace

std::pair<unsigned long long, unsigned long long> slice_range(unsigned M, int j) {
    require(M >= 2 && M <= 64, "slice base must lie in [2, 64]");
    require(j >= 1 && j <= 62, "slice index must lie in [1, 62]");
    const unsigned long long hi = checked_pow(M, j);
    return {hi / M, hi - 1};
}

Complex log2_fn(Complex x) {
    if (x == Complex{1.0, 0.0}) throw singularity_error("log2(1 - x) is singular at x = 1");
    if (std::abs(x) < 1e-3) {
        Complex sum = 0.0, xp = x * x;
        for (int k = 2; k <= 14; ++k) {
            sum -= xp / static_cast<double>(k);
            xp *= x;
        }
        return sum;
    }
    return x + std::log(1.0 - x);
}

BigRational harmonic_counterterm_exact(unsigned long long N) {
    require(N >= 1, "harmonic sum needs N >= 1");
    if (N > 4096) throw size_limit_error("exact harmonic sums capped at N = 4096");
    BigRational sum(0);
    for (unsigned long long p = 1; p <= N; ++p)
        sum += BigRational(BigInt(1), BigInt(p));
    return sum;
}

double harmonic_counterterm(unsigned long long N) {
    require(N >= 1, "harmonic sum needs N >= 1");
    if (N <= 4096) return to_double(harmonic_counterterm_exact(N));
    if (N <= 100000000ull) {
        double sum = 0.0, comp = 0.0;
        for (unsigned long long p = 1; p <= N; ++p) {
            const double y = 1.0 / static_cast<double>(p) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }
    const double n = static_cast<double>(N);
    constexpr double euler_gamma = 0.57721566490153286;
    return std::log(n) + euler_gamma + 0.5 / n - 1.0 / (12.0 * n * n);
}

SliceModel make_slice_model(unsigned M, int j_min, int j_max, Complex lambda) {
    require(j_min >= 1 && j_min <= j_max && j_max <= 40,
            "need 1 <= j_min <= j_max <= 40");
    slice_range(M, j_max);  // validates the base and the whole slice family
    SliceModel m;
    m.M = M;
    m.j_min = j_min;
    m.j_max = j_max;
    m.lambda = lambda;
    m.N = checked_pow(M, j_max) - 1;
    m.counterterm = harmonic_counterterm(m.N);
    return m;
}

namespace {

constexpr int kTailK = 40;
constexpr unsigned long long kPrefixCap = 512;

// full potential V(sigma) = sum_{p in [p_min, p_max]} log2(1 - i lambda sigma / p):
// exact below an adaptive threshold, geometric series with power-sum tails above
struct PotentialEvaluator {
    Complex lambda;
    unsigned long long p_min, p_max;
    std::array<double, kTailK + 1> total{};
    std::vector<std::array<double, kTailK + 1>> prefix;

    PotentialEvaluator(Complex lam, unsigned long long lo, unsigned long long hi)
        : lambda(lam), p_min(lo), p_max(hi) {
        const unsigned long long cap = std::min(p_max, kPrefixCap);
        prefix.assign(static_cast<std::size_t>(cap) + 1, {});
        for (unsigned long long p = p_min; p <= p_max; ++p) {
            const double invp = 1.0 / static_cast<double>(p);
            double pw = invp;
            for (int k = 1; k <= kTailK; ++k) {
                total[static_cast<std::size_t>(k)] += pw;
                pw *= invp;
            }
            if (p <= cap) prefix[static_cast<std::size_t>(p)] = total;
        }
    }

    Complex operator()(double sigma) const {
        const Complex x0 = Complex{0.0, 1.0} * lambda * sigma;
        const double ax = std::abs(x0);
        unsigned long long split = std::max<unsigned long long>(
            10, static_cast<unsigned long long>(std::ceil(4.0 * ax)));
        if (split > kPrefixCap && split < p_max) {
            Complex v = 0.0;
            for (unsigned long long p = p_min; p <= p_max; ++p)
                v += log2_fn(x0 / static_cast<double>(p));
            return v;
        }
        split = std::min(split, p_max);
        Complex v = 0.0;
        for (unsigned long long p = p_min; p <= split; ++p)
            v += log2_fn(x0 / static_cast<double>(p));
        if (split < p_max) {
            static const std::array<double, kTailK + 1> zero{};
            const auto& base = split >= p_min ? prefix[static_cast<std::size_t>(split)] : zero;
            Complex xp = x0 * x0;
            for (int k = 2; k <= kTailK; ++k) {
                const double s = total[static_cast<std::size_t>(k)] -
                                 base[static_cast<std::size_t>(k)];
                const Complex term = xp * (s / static_cast<double>(k));
                v -= term;
                if (std::abs(term) < 1e-19 * (1.0 + std::abs(v))) break;
                xp *= x0;
            }
        }
        return v;
    }
};

}  // namespace

Complex oracle_logZ(const SliceModel& model) {
    const Complex lam = model.lambda;
    if (lam.imag() == 0.0) {
        require(std::abs(lam.real()) <= 1.0, "real coupling must lie in [-1, 1]");
    } else {
        const double g = std::arg(lam);
        require(std::cos(2.0 * g) > 0.0 && std::norm(lam) < std::cos(2.0 * g),
                "complex coupling needs |lambda|^2 < cos(2 arg lambda)");
    }
    if (model.N > (1ull << 20)) throw size_limit_error("oracle capped at N = 2^20");
    const unsigned long long p_min = slice_range(model.M, model.j_min).first;
    const PotentialEvaluator V(lam, p_min, model.N);
    const double span = std::max(30.0, 8.0 + 2.0 * std::abs(lam.imag()) * V.total[1]);
    const auto f = [&](double s) {
        return std::exp(Complex{-0.5 * s * s, 0.0} - V(s));
    };
    const Complex I = quad::integrate(f, -span, span, 1e-12) / std::sqrt(2.0 * kPi);
    if (!(std::abs(I) > 1e-300) || !std::isfinite(std::abs(I)))
        throw numeric_error("sigma quadrature for log Z failed");
    return std::log(I);
}

SliceVertex make_slice_vertex(const SliceModel& model, int j) {
    require(j >= model.j_min && j <= model.j_max, "slice outside the model range");
    SliceVertex v;
    v.M = model.M;
    v.j = j;
    v.lambda = model.lambda;
    const auto r = slice_range(model.M, j);
    v.p_lo = r.first;
    v.p_hi = r.second;
    return v;
}

namespace {

// V^{(m)} for m = 0..k in one pass over the slice indices
std::array<Complex, 5> potential_derivatives(Complex lambda, unsigned long long p_lo,
                                             unsigned long long p_hi, double sigma,
                                             unsigned k) {
    std::array<Complex, 5> out{};
    const Complex il = Complex{0.0, 1.0} * lambda;
    for (unsigned long long p = p_lo; p <= p_hi; ++p) {
        const double invp = 1.0 / static_cast<double>(p);
        const Complex x = il * (sigma * invp);
        const Complex one_minus = 1.0 - x;
        if (std::abs(one_minus) < 1e-14)
            throw singularity_error("slice resolvent singular at this sigma");
        out[0] += log2_fn(x);
        if (k >= 1) {
            const Complex xp = il * invp;
            out[1] += -xp * x / one_minus;
            Complex pw = xp * xp;
            Complex rp = one_minus * one_minus;
            double fact = 1.0;
            for (unsigned m = 2; m <= k; ++m) {
                out[m] += -fact * pw / rp;
                fact *= static_cast<double>(m);
                pw *= xp;
                rp *= one_minus;
            }
        }
    }
    return out;
}

// W^{(k)} = e^{-V} B_k(-V', ..., -V^{(k)}) through the complete Bell recursion
Complex bell_combine(const std::array<Complex, 5>& V, unsigned k) {
    static const int binom[5][5] = {{1, 0, 0, 0, 0},
                                    {1, 1, 0, 0, 0},
                                    {1, 2, 1, 0, 0},
                                    {1, 3, 3, 1, 0},
                                    {1, 4, 6, 4, 1}};
    std::array<Complex, 5> B{};
    B[0] = 1.0;
    for (unsigned kk = 1; kk <= k; ++kk) {
        Complex acc = 0.0;
        for (unsigned m = 1; m <= kk; ++m)
            acc += static_cast<double>(binom[kk - 1][m - 1]) * (-V[m]) * B[kk - m];
        B[kk] = acc;
    }
    return std::exp(-V[0]) * B[k];
}

}  // namespace

Complex slice_potential(const SliceVertex& v, double sigma, unsigned k) {
    require(k <= 4, "potential derivatives supported to order 4");
    require(v.p_hi >= v.p_lo && v.p_hi - v.p_lo < (1ull << 22),
            "slice too wide to sum directly");
    return potential_derivatives(v.lambda, v.p_lo, v.p_hi, sigma, k)[k];
}

Complex slice_vertex_derivatives(const SliceVertex& v, double sigma, unsigned k) {
    require(k <= 4, "vertex derivatives supported to order 4");
    require(v.p_hi >= v.p_lo && v.p_hi - v.p_lo < (1ull << 22),
            "slice too wide to sum directly");
    const auto V = potential_derivatives(v.lambda, v.p_lo, v.p_hi, sigma, k);
    if (k == 0) return std::exp(-V[0]) - 1.0;
    return bell_combine(V, k);
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

}  // namespace

std::vector<TwoLevelJungle> enumerate_two_level_trees(int n) {
    require(n >= 1, "need at least one vertex");
    if (n > 6) throw size_limit_error("two-level tree enumeration capped at 6 vertices");
    std::vector<TwoLevelJungle> out;
    const int k = n - 1;
    if (k == 0) {
        out.push_back(TwoLevelJungle{1, {}, {}});
        return out;
    }
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
    const int m = static_cast<int>(all.size());
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Dsu d(n);
        bool spanning = true;
        for (int i : pick)
            spanning = d.unite(all[static_cast<std::size_t>(i)].first,
                               all[static_cast<std::size_t>(i)].second) &&
                       spanning;
        if (spanning) {
            for (int mask = 0; mask < (1 << k); ++mask) {
                TwoLevelJungle j;
                j.n = n;
                for (int t = 0; t < k; ++t) {
                    const auto& e = all[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])];
                    j.edges.push_back({e.first, e.second,
                                       (mask >> t) & 1 ? jungle_level::fermionic
                                                       : jungle_level::bosonic});
                }
                out.push_back(std::move(j));
            }
        }
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t)
            pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

std::vector<int> bosonic_blocks(const TwoLevelJungle& jungle) {
    Dsu d(jungle.n);
    for (const auto& e : jungle.edges)
        if (e.level == jungle_level::bosonic) d.unite(e.a, e.b);
    std::vector<int> id(static_cast<std::size_t>(jungle.n), -1);
    std::vector<int> rootid(static_cast<std::size_t>(jungle.n), -1);
    int next = 0;
    for (int v = 0; v < jungle.n; ++v) {
        const int r = d.find(v);
        if (rootid[static_cast<std::size_t>(r)] < 0) rootid[static_cast<std::size_t>(r)] = next++;
        id[static_cast<std::size_t>(v)] = rootid[static_cast<std::size_t>(r)];
    }
    return id;
}

FermionicFactor fermionic_factor(const TwoLevelJungle& jungle, const Eigen::MatrixXd& Y) {
    require(jungle.n >= 1 && jungle.n <= 8, "jungle size out of range");
    require(static_cast<int>(jungle.slices.size()) == jungle.n,
            "jungle needs a slice assignment");
    Dsu acyc(jungle.n);
    for (const auto& e : jungle.edges) {
        require(e.a >= 0 && e.a < jungle.n && e.b >= 0 && e.b < jungle.n && e.a != e.b,
                "jungle edge endpoints out of range");
        require(acyc.unite(e.a, e.b), "jungle edges must form a forest");
    }
    const auto block = bosonic_blocks(jungle);
    const int nb = 1 + *std::max_element(block.begin(), block.end());
    require(Y.rows() == nb && Y.cols() == nb, "Y must be sized by bosonic blocks");
    for (int r = 0; r < nb; ++r) {
        require(std::abs(Y(r, r) - 1.0) <= 1e-12, "Y needs a unit diagonal");
        for (int c = 0; c < nb; ++c) {
            require(std::abs(Y(r, c) - Y(c, r)) <= 1e-12, "Y must be symmetric");
            require(Y(r, c) >= -1e-12 && Y(r, c) <= 1.0 + 1e-12,
                    "Y entries must lie in [0, 1]");
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-9, "Y must be positive semidefinite");

    FermionicFactor out;
    for (int a = 0; a < jungle.n; ++a)
        for (int b = a + 1; b < jungle.n; ++b)
            if (block[static_cast<std::size_t>(a)] == block[static_cast<std::size_t>(b)] &&
                jungle.slices[static_cast<std::size_t>(a)] ==
                    jungle.slices[static_cast<std::size_t>(b)])
                out.hard_core_ok = false;
    for (const auto& e : jungle.edges)
        if (e.level == jungle_level::fermionic &&
            jungle.slices[static_cast<std::size_t>(e.a)] !=
                jungle.slices[static_cast<std::size_t>(e.b)])
            out.slice_deltas_ok = false;
    if (!out.hard_core_ok || !out.slice_deltas_ok) return out;

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(jungle.n, jungle.n);
    for (int u = 0; u < jungle.n; ++u)
        for (int v = 0; v < jungle.n; ++v)
            K(u, v) = jungle.slices[static_cast<std::size_t>(u)] ==
                              jungle.slices[static_cast<std::size_t>(v)]
                          ? Y(block[static_cast<std::size_t>(u)],
                              block[static_cast<std::size_t>(v)])
                          : 0.0;

    std::vector<std::pair<int, int>> fedges;
    for (const auto& e : jungle.edges)
        if (e.level == jungle_level::fermionic) fedges.emplace_back(e.a, e.b);
    const int k = static_cast<int>(fedges.size());
    for (int bits = 0; bits < (1 << k); ++bits) {
        GrassmannWord word;
        for (int a = 0; a < jungle.n; ++a) {
            word.gens.push_back({a, false});
            word.gens.push_back({a, true});
        }
        bool alive = true;
        for (int i = k - 1; i >= 0 && alive; --i) {
            const bool flip = (bits >> i) & 1;
            const int head = flip ? fedges[static_cast<std::size_t>(i)].second
                                  : fedges[static_cast<std::size_t>(i)].first;
            const int tail = flip ? fedges[static_cast<std::size_t>(i)].first
                                  : fedges[static_cast<std::size_t>(i)].second;
            alive = apply_left_derivative(word, tail, false) &&
                    apply_left_derivative(word, head, true);
        }
        if (!alive) {
            out.determinants.push_back(0.0);
            continue;
        }
        out.determinants.push_back(minor_determinant(word, K));
        out.total += gaussian_expectation(word, K);
    }
    return out;
}

namespace {

// path-infimum interpolation matrix: unit diagonal, w on edges, bottleneck
// closure elsewhere (unique paths, so the closure is the forest path min)
Eigen::MatrixXd interpolation_matrix(int n, const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<double>& w) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    for (std::size_t t = 0; t < edges.size(); ++t) {
        m(edges[t].first, edges[t].second) = w[t];
        m(edges[t].second, edges[t].first) = w[t];
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                const double via = std::min(m(a, k), m(k, b));
                if (via > m(a, b)) m(a, b) = via;
            }
    return m;
}

// deterministic sweep of [0,1]^k (k <= 2) split along the diagonal so that
// min(w1, w2) stays smooth on each piece
template <class F>
void sweep_unit_cube(int k, const quad::rule& gl, F&& f) {
    std::vector<double> w;
    if (k == 0) {
        f(w, 1.0);
        return;
    }
    const int g = static_cast<int>(gl.x.size());
    if (k == 1) {
        w.resize(1);
        for (int i = 0; i < g; ++i) {
            w[0] = gl.x[static_cast<std::size_t>(i)];
            f(w, gl.w[static_cast<std::size_t>(i)]);
        }
        return;
    }
    w.resize(2);
    for (int wedge = 0; wedge < 2; ++wedge)
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                const double a = gl.x[static_cast<std::size_t>(i)];
                const double b = gl.x[static_cast<std::size_t>(j)];
                w[static_cast<std::size_t>(wedge)] = a;
                w[static_cast<std::size_t>(1 - wedge)] = a + (1.0 - a) * b;
                f(w, (1.0 - a) * gl.w[static_cast<std::size_t>(i)] *
                         gl.w[static_cast<std::size_t>(j)]);
            }
}

// W^{(k)}_j(sigma) for every slice of the model in one pass
void slice_row(const SliceModel& model, double sigma, unsigned k,
               std::vector<Complex>& out) {
    const int ns = model.j_max - model.j_min + 1;
    out.assign(static_cast<std::size_t>(ns), Complex{0.0, 0.0});
    for (int j = model.j_min; j <= model.j_max; ++j) {
        const auto r = slice_range(model.M, j);
        const auto V = potential_derivatives(model.lambda, r.first, r.second, sigma, k);
        out[static_cast<std::size_t>(j - model.j_min)] =
            k == 0 ? std::exp(-V[0]) - 1.0 : bell_combine(V, k);
    }
}

}  // namespace

std::vector<Complex> mlve_order_terms(const SliceModel& model, unsigned n_max,
                                      std::size_t budget) {
    require(n_max >= 1 && n_max <= 3, "truncation order must lie in 1..3");
    require(model.lambda.imag() == 0.0 && std::abs(model.lambda.real()) <= 0.5,
            "truncated sums need real coupling in [-0.5, 0.5]");
    require(budget >= 1, "budget must be positive");
    if (model.N > 4096) throw size_limit_error("truncated sums capped at N = 4096");

    const int ns = model.j_max - model.j_min + 1;
    static const double fac[4] = {1.0, 1.0, 2.0, 6.0};
    std::vector<Complex> orders(n_max, Complex{0.0, 0.0});
    std::vector<std::vector<Complex>> table(3);

    for (unsigned n = 1; n <= n_max; ++n) {
        const int nv = static_cast<int>(n);
        int gh = n == 1 ? 48 : (n == 2 ? 20 : 10);
        int gl = n == 1 ? 0 : (n == 2 ? 20 : 10);
        const double jungle_count = n == 1 ? 1.0 : (n == 2 ? 2.0 : 12.0);
        const auto point_estimate = [&]() {
            const double cube =
                gl == 0 ? 1.0 : std::pow(gl, nv - 1.0) * (n == 3 ? 2.0 : 1.0);
            return jungle_count * cube * std::pow(gh, nv);
        };
        while (point_estimate() > static_cast<double>(budget)) {
            const int gh2 = std::max(6, gh * 4 / 5);
            const int gl2 = gl == 0 ? 0 : std::max(4, gl * 4 / 5);
            if (gh2 == gh && gl2 == gl) break;
            gh = gh2;
            gl = gl2;
        }
        const quad::rule ghr = quad::gauss_hermite_prob(gh);
        const quad::rule glr = gl > 0 ? quad::gauss_legendre01(gl) : quad::rule{};

        for (const auto& jungle : enumerate_two_level_trees(nv)) {
            const auto block = bosonic_blocks(jungle);
            const int nb = 1 + *std::max_element(block.begin(), block.end());
            std::vector<std::pair<int, int>> bedges, fedges_blocks;
            std::vector<unsigned> kdeg(static_cast<std::size_t>(nv), 0);
            for (const auto& e : jungle.edges) {
                if (e.level == jungle_level::bosonic) {
                    bedges.emplace_back(e.a, e.b);
                    ++kdeg[static_cast<std::size_t>(e.a)];
                    ++kdeg[static_cast<std::size_t>(e.b)];
                } else {
                    fedges_blocks.emplace_back(block[static_cast<std::size_t>(e.a)],
                                               block[static_cast<std::size_t>(e.b)]);
                }
            }

            // admissible slice assignments and their equality patterns
            std::vector<std::vector<int>> assigns, patterns;
            std::vector<int> tuple(static_cast<std::size_t>(nv), 0);
            while (true) {
                bool ok = true;
                for (int a = 0; a < nv && ok; ++a)
                    for (int b = a + 1; b < nv && ok; ++b)
                        if (block[static_cast<std::size_t>(a)] ==
                                block[static_cast<std::size_t>(b)] &&
                            tuple[static_cast<std::size_t>(a)] ==
                                tuple[static_cast<std::size_t>(b)])
                            ok = false;
                for (const auto& e : jungle.edges)
                    if (ok && e.level == jungle_level::fermionic &&
                        tuple[static_cast<std::size_t>(e.a)] !=
                            tuple[static_cast<std::size_t>(e.b)])
                        ok = false;
                if (ok) {
                    std::vector<int> js(static_cast<std::size_t>(nv));
                    std::vector<int> pattern(static_cast<std::size_t>(nv));
                    for (int v = 0; v < nv; ++v) {
                        js[static_cast<std::size_t>(v)] =
                            model.j_min + tuple[static_cast<std::size_t>(v)];
                        int first = v;
                        for (int u = 0; u < v; ++u)
                            if (tuple[static_cast<std::size_t>(u)] ==
                                tuple[static_cast<std::size_t>(v)]) {
                                first = u;
                                break;
                            }
                        pattern[static_cast<std::size_t>(v)] = first;
                    }
                    assigns.push_back(std::move(js));
                    patterns.push_back(std::move(pattern));
                }
                int v = 0;
                while (v < nv && ++tuple[static_cast<std::size_t>(v)] == ns) {
                    tuple[static_cast<std::size_t>(v)] = 0;
                    ++v;
                }
                if (v == nv) break;
            }
            if (assigns.empty()) continue;

            // fermionic integral per slice-equality pattern
            std::map<std::vector<int>, double> ferm;
            for (const auto& pattern : patterns) {
                if (ferm.count(pattern)) continue;
                double val = 0.0;
                sweep_unit_cube(static_cast<int>(fedges_blocks.size()), glr,
                                [&](const std::vector<double>& wf, double wt) {
                                    const Eigen::MatrixXd Y =
                                        interpolation_matrix(nb, fedges_blocks, wf);
                                    TwoLevelJungle assigned = jungle;
                                    assigned.slices = pattern;
                                    val += wt * fermionic_factor(assigned, Y).total;
                                });
                ferm[pattern] = val;
            }

            // bosonic integral accumulated per assignment
            std::vector<Complex> acc(assigns.size(), Complex{0.0, 0.0});
            sweep_unit_cube(
                static_cast<int>(bedges.size()), glr,
                [&](const std::vector<double>& wb, double wtw) {
                    const Eigen::MatrixXd X = interpolation_matrix(nv, bedges, wb);
                    Eigen::LLT<Eigen::MatrixXd> llt(X);
                    if (llt.info() != Eigen::Success)
                        throw numeric_error("interpolated covariance not positive");
                    const Eigen::MatrixXd L = llt.matrixL();
                    std::vector<int> idx(static_cast<std::size_t>(nv), 0);
                    Eigen::VectorXd gvec(nv);
                    while (true) {
                        double wtg = wtw;
                        for (int v = 0; v < nv; ++v) {
                            gvec(v) = ghr.x[static_cast<std::size_t>(
                                idx[static_cast<std::size_t>(v)])];
                            wtg *= ghr.w[static_cast<std::size_t>(
                                idx[static_cast<std::size_t>(v)])];
                        }
                        const Eigen::VectorXd sig = L * gvec;
                        for (int v = 0; v < nv; ++v)
                            slice_row(model, sig(v), kdeg[static_cast<std::size_t>(v)],
                                      table[static_cast<std::size_t>(v)]);
                        for (std::size_t t = 0; t < assigns.size(); ++t) {
                            Complex prod{wtg, 0.0};
                            for (int v = 0; v < nv; ++v)
                                prod *= table[static_cast<std::size_t>(v)]
                                             [static_cast<std::size_t>(
                                                 assigns[t][static_cast<std::size_t>(v)] -
                                                 model.j_min)];
                            acc[t] += prod;
                        }
                        int v = 0;
                        while (v < nv && ++idx[static_cast<std::size_t>(v)] == gh) {
                            idx[static_cast<std::size_t>(v)] = 0;
                            ++v;
                        }
                        if (v == nv) break;
                    }
                });

            Complex jungle_term = 0.0;
            for (std::size_t t = 0; t < assigns.size(); ++t)
                jungle_term += acc[t] * ferm[patterns[t]];
            orders[n - 1] += jungle_term / fac[n];
        }
    }
    return orders;
}

Complex mlve_truncated_sum(const SliceModel& model, unsigned n_max, std::size_t budget) {
    const auto orders = mlve_order_terms(model, n_max, budget);
    Complex sum = 0.0;
    for (const auto& term : orders) sum += term;
    return sum;
}

}  // namespace cft::mlve
