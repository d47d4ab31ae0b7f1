#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "cft/errors.hpp"
#include "cft/exact.hpp"
#include "cft/grassmann.hpp"
#include "cft/mlve.hpp"
#include "cft/quadrature.hpp"
#include "cft/rng.hpp"
#include "doctest.h"

namespace mlve = cft::mlve;
using mlve::Complex;

namespace {

// five-point central stencil for d/dsigma
template <class F>
Complex stencil(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

}  // namespace

TEST_CASE("slice ranges partition the index space") {
    for (unsigned M : {2u, 3u, 4u}) {
        unsigned long long expected_lo = 1;
        for (int j = 1; j <= 12; ++j) {
            const auto [lo, hi] = mlve::slice_range(M, j);
            CHECK(lo == expected_lo);
            CHECK(hi + 1 == lo * M);
            expected_lo = hi + 1;
        }
    }
    CHECK(mlve::slice_range(2, 1) == std::pair{1ull, 1ull});
    CHECK(mlve::slice_range(2, 3) == std::pair{4ull, 7ull});
    CHECK(mlve::slice_range(3, 2) == std::pair{3ull, 8ull});
    CHECK_THROWS_AS(mlve::slice_range(1, 1), cft::validation_error);
    CHECK_THROWS_AS(mlve::slice_range(65, 2), cft::validation_error);
    CHECK_THROWS_AS(mlve::slice_range(2, 0), cft::validation_error);
    CHECK_THROWS_AS(mlve::slice_range(2, 63), cft::validation_error);
}

TEST_CASE("subtracted logarithm is quadratically small") {
    const Complex at_half = mlve::log2_fn(Complex{0.5, 0.0});
    CHECK(at_half.real() == doctest::Approx(0.5 + std::log(0.5)).epsilon(1e-14));
    CHECK(at_half.imag() == 0.0);
    const Complex tiny = mlve::log2_fn(Complex{1e-6, 0.0});
    CHECK(tiny.real() == doctest::Approx(-5.0000003333335e-13).epsilon(1e-9));

    auto gen = cft::substream(417, 0);
    std::uniform_real_distribution<double> mag(0.0, 0.5), ang(0.0, 6.283185307179586);
    for (int t = 0; t < 10000; ++t) {
        const double r = mag(gen), th = ang(gen);
        const Complex x = std::polar(r, th);
        CHECK(std::abs(mlve::log2_fn(x)) <= r * r + 1e-15);
    }
    // series and direct branches agree across the switch
    for (double r : {9e-4, 1.1e-3})
        for (double th : {0.3, 2.1, 4.0}) {
            const Complex x = std::polar(r, th);
            const Complex direct = x + std::log(1.0 - x);
            CHECK(std::abs(mlve::log2_fn(x) - direct) <= 1e-15);
        }
    CHECK_THROWS_AS(mlve::log2_fn(Complex{1.0, 0.0}), cft::singularity_error);
}

TEST_CASE("harmonic counterterms") {
    CHECK(mlve::harmonic_counterterm_exact(1) == cft::BigRational(1));
    CHECK(mlve::harmonic_counterterm_exact(3) == cft::BigRational(11, 6));
    CHECK(mlve::harmonic_counterterm_exact(7) == cft::BigRational(363, 140));
    CHECK(mlve::harmonic_counterterm(7) ==
          doctest::Approx(363.0 / 140.0).epsilon(1e-15));
    CHECK_THROWS_AS(mlve::harmonic_counterterm_exact(5000), cft::size_limit_error);
    CHECK_THROWS_AS(mlve::harmonic_counterterm(0), cft::validation_error);

    // exact and compensated branches agree across the switch
    const double h_a = mlve::harmonic_counterterm(4096);
    const double h_b = mlve::harmonic_counterterm(4097);
    CHECK(h_b - h_a == doctest::Approx(1.0 / 4097.0).epsilon(1e-10));
    // compensated and asymptotic branches agree across theirs
    const double h_c = mlve::harmonic_counterterm(100000000ull);
    const double h_d = mlve::harmonic_counterterm(100000001ull);
    CHECK(h_d - h_c == doctest::Approx(1e-8).epsilon(1e-4));
    // Euler-Mascheroni spot check far out
    const double n = 1e9;
    CHECK(mlve::harmonic_counterterm(1000000000ull) ==
          doctest::Approx(std::log(n) + 0.5772156649015329 + 0.5 / n).epsilon(1e-14));
}

TEST_CASE("slice model assembly") {
    const auto m = mlve::make_slice_model(2, 1, 3, Complex{0.1, 0.0});
    CHECK(m.M == 2);
    CHECK(m.j_min == 1);
    CHECK(m.j_max == 3);
    CHECK(m.N == 7);
    CHECK(m.counterterm == doctest::Approx(363.0 / 140.0).epsilon(1e-15));
    CHECK(m.lambda == Complex{0.1, 0.0});

    const auto narrow = mlve::make_slice_model(3, 2, 4, Complex{0.0, 0.0});
    CHECK(narrow.N == 80);
    CHECK(mlve::make_slice_vertex(narrow, 2).p_lo == 3);
    CHECK(mlve::make_slice_vertex(narrow, 4).p_hi == 80);

    CHECK_THROWS_AS(mlve::make_slice_model(2, 3, 2, Complex{0, 0}),
                    cft::validation_error);
    CHECK_THROWS_AS(mlve::make_slice_model(1, 1, 1, Complex{0, 0}),
                    cft::validation_error);
    CHECK_THROWS_AS(mlve::make_slice_vertex(m, 4), cft::validation_error);
    CHECK_THROWS_AS(mlve::make_slice_vertex(m, 0), cft::validation_error);
}

TEST_CASE("vertex derivatives at the origin") {
    const double lam = 0.3;
    const auto m = mlve::make_slice_model(2, 1, 2, Complex{lam, 0.0});
    const auto v1 = mlve::make_slice_vertex(m, 1);
    const auto v2 = mlve::make_slice_vertex(m, 2);
    CHECK(v1.p_lo == 1);
    CHECK(v1.p_hi == 1);
    CHECK(v2.p_lo == 2);
    CHECK(v2.p_hi == 3);

    CHECK(std::abs(mlve::slice_potential(v1, 0.0, 0)) < 1e-15);
    CHECK(std::abs(mlve::slice_potential(v1, 0.0, 1)) < 1e-15);
    CHECK(mlve::slice_potential(v1, 0.0, 2).real() ==
          doctest::Approx(lam * lam).epsilon(1e-14));

    // W(0) = W'(0) = 0 and W''(0) = -lambda^2 sum p^{-2}
    CHECK(std::abs(mlve::slice_vertex_derivatives(v1, 0.0, 0)) < 1e-15);
    CHECK(std::abs(mlve::slice_vertex_derivatives(v1, 0.0, 1)) < 1e-15);
    CHECK(mlve::slice_vertex_derivatives(v1, 0.0, 2).real() ==
          doctest::Approx(-lam * lam).epsilon(1e-14));
    CHECK(std::abs(mlve::slice_vertex_derivatives(v1, 0.0, 2).imag()) < 1e-15);
    CHECK(mlve::slice_vertex_derivatives(v2, 0.0, 2).real() ==
          doctest::Approx(-lam * lam * (1.0 / 4.0 + 1.0 / 9.0)).epsilon(1e-13));

    CHECK_THROWS_AS(mlve::slice_vertex_derivatives(v1, 0.0, 5), cft::validation_error);
    CHECK_THROWS_AS(mlve::slice_potential(v1, 0.0, 5), cft::validation_error);
    // 1 - i lambda sigma = 0 at sigma = 1 when lambda = -i
    const auto sing = mlve::make_slice_model(2, 1, 1, Complex{0.0, -1.0});
    CHECK_THROWS_AS(mlve::slice_potential(mlve::make_slice_vertex(sing, 1), 1.0, 0),
                    cft::singularity_error);
}

TEST_CASE("finite differences confirm slice derivatives") {
    const double h = 1e-2;
    for (int trial = 0; trial < 100; ++trial) {
        auto gen = cft::substream(905, static_cast<std::uint64_t>(trial));
        std::uniform_real_distribution<double> mag(0.05, 0.3), ang(0.0, 6.2831853);
        std::uniform_real_distribution<double> sig(-2.0, 2.0);
        std::uniform_int_distribution<int> slice(1, 3);
        const Complex lam = std::polar(mag(gen), ang(gen));
        const auto m = mlve::make_slice_model(3, 1, 3, lam);
        const auto v = mlve::make_slice_vertex(m, slice(gen));
        const double s = sig(gen);
        for (unsigned k = 1; k <= 4; ++k) {
            const Complex dv = stencil(
                [&](double x) { return mlve::slice_potential(v, x, k - 1); }, s, h);
            const Complex ev = mlve::slice_potential(v, s, k);
            CHECK(std::abs(dv - ev) <= 1e-7 + 1e-5 * std::abs(ev));
            const Complex dw = stencil(
                [&](double x) { return mlve::slice_vertex_derivatives(v, x, k - 1); },
                s, h);
            const Complex ew = mlve::slice_vertex_derivatives(v, s, k);
            CHECK(std::abs(dw - ew) <= 1e-7 + 1e-5 * std::abs(ew));
        }
    }
}

TEST_CASE("log Z oracle") {
    SUBCASE("free theory") {
        const auto m = mlve::make_slice_model(2, 1, 5, Complex{0.0, 0.0});
        CHECK(std::abs(mlve::oracle_logZ(m)) < 1e-12);
    }
    SUBCASE("matches a direct slice sum") {
        for (Complex lam : {Complex{0.4, 0.0}, std::polar(0.3, 0.39269908)}) {
            const auto m = mlve::make_slice_model(2, 1, 10, lam);
            const auto f = [&](double s) {
                Complex v = 0.0;
                for (unsigned long long p = 1; p <= m.N; ++p)
                    v += mlve::log2_fn(Complex{0.0, 1.0} * lam * s /
                                       static_cast<double>(p));
                return std::exp(Complex{-0.5 * s * s, 0.0} - v);
            };
            const Complex ref =
                std::log(cft::quad::integrate(f, -30.0, 30.0, 1e-12) /
                         std::sqrt(2.0 * 3.14159265358979323846));
            CHECK(std::abs(mlve::oracle_logZ(m) - ref) < 1e-9);
        }
    }
    SUBCASE("bounded at the coupling boundary with shrinking slice increments") {
        std::vector<double> vals;
        for (int jmax = 4; jmax <= 10; ++jmax) {
            const auto m = mlve::make_slice_model(2, 1, jmax, Complex{1.0, 0.0});
            const Complex lz = mlve::oracle_logZ(m);
            CHECK(std::abs(lz.imag()) < 1e-9);
            CHECK(std::abs(lz) < 5.0);
            vals.push_back(lz.real());
        }
        for (std::size_t i = 2; i < vals.size(); ++i)
            CHECK(std::abs(vals[i] - vals[i - 1]) <
                  std::abs(vals[i - 1] - vals[i - 2]));
    }
    SUBCASE("complex coupling inside the sector") {
        const auto m = mlve::make_slice_model(2, 1, 8, std::polar(0.6, 0.39269908));
        const Complex lz = mlve::oracle_logZ(m);
        CHECK(std::isfinite(lz.real()));
        CHECK(std::isfinite(lz.imag()));
        CHECK(std::abs(lz) < 5.0);
    }
    SUBCASE("domain rejections") {
        CHECK_THROWS_AS(
            mlve::oracle_logZ(mlve::make_slice_model(2, 1, 3, Complex{1.2, 0.0})),
            cft::validation_error);
        CHECK_THROWS_AS(
            mlve::oracle_logZ(mlve::make_slice_model(2, 1, 3, std::polar(0.9, 0.3926990))),
            cft::validation_error);
        CHECK_THROWS_AS(
            mlve::oracle_logZ(mlve::make_slice_model(2, 1, 3, std::polar(0.1, 1.0471975))),
            cft::validation_error);
        CHECK_THROWS_AS(
            mlve::oracle_logZ(mlve::make_slice_model(2, 1, 21, Complex{0.1, 0.0})),
            cft::size_limit_error);
    }
}

TEST_CASE("two-level spanning trees") {
    const unsigned long long expected[] = {1, 2, 12, 128, 2000, 41472};
    for (int n = 1; n <= 6; ++n) {
        const auto jungles = mlve::enumerate_two_level_trees(n);
        CHECK(jungles.size() == expected[n - 1]);
        std::set<std::vector<std::tuple<int, int, int>>> seen;
        for (const auto& j : jungles) {
            CHECK(j.n == n);
            CHECK(static_cast<int>(j.edges.size()) == n - 1);
            CHECK(j.slices.empty());
            std::vector<int> parent(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
            const auto find = [&](int x) {
                while (parent[static_cast<std::size_t>(x)] != x)
                    x = parent[static_cast<std::size_t>(x)];
                return x;
            };
            int merges = 0;
            std::vector<std::tuple<int, int, int>> key;
            for (const auto& e : j.edges) {
                const int ra = find(e.a), rb = find(e.b);
                if (ra != rb) {
                    parent[static_cast<std::size_t>(ra)] = rb;
                    ++merges;
                }
                key.emplace_back(e.a, e.b, e.level == mlve::jungle_level::fermionic);
            }
            CHECK(merges == n - 1);  // the union spans
            seen.insert(key);
        }
        CHECK(seen.size() == jungles.size());
    }
    CHECK_THROWS_AS(mlve::enumerate_two_level_trees(7), cft::size_limit_error);
    CHECK_THROWS_AS(mlve::enumerate_two_level_trees(0), cft::validation_error);
}

TEST_CASE("bosonic blocks") {
    mlve::TwoLevelJungle j;
    j.n = 4;
    j.edges = {{0, 1, mlve::jungle_level::bosonic},
               {2, 3, mlve::jungle_level::fermionic},
               {1, 2, mlve::jungle_level::bosonic}};
    CHECK(mlve::bosonic_blocks(j) == std::vector<int>{0, 0, 0, 1});

    mlve::TwoLevelJungle lone;
    lone.n = 3;
    lone.edges = {{1, 2, mlve::jungle_level::fermionic}};
    CHECK(mlve::bosonic_blocks(lone) == std::vector<int>{0, 1, 2});
}

TEST_CASE("Grassmann kernel") {
    Eigen::MatrixXd K(2, 2);
    K << 1.0, 0.7, 0.7, 1.0;

    mlve::GrassmannWord pair;
    pair.gens = {{0, false}, {0, true}};
    CHECK(mlve::gaussian_expectation(pair, K) == doctest::Approx(1.0));
    CHECK(mlve::minor_determinant(pair, K) == doctest::Approx(1.0));

    // <chi_0 bar_1 chi_1 bar_0> = K01 K10 - K00 K11
    mlve::GrassmannWord crossed;
    crossed.gens = {{0, false}, {1, true}, {1, false}, {0, true}};
    CHECK(mlve::gaussian_expectation(crossed, K) ==
          doctest::Approx(0.7 * 0.7 - 1.0).epsilon(1e-14));

    // derivatives anticommute past earlier generators
    mlve::GrassmannWord word;
    word.gens = {{0, false}, {0, true}, {1, false}, {1, true}};
    CHECK(mlve::apply_left_derivative(word, 1, false));
    CHECK(word.sign == doctest::Approx(1.0));  // even position
    CHECK(mlve::apply_left_derivative(word, 0, true));
    CHECK(word.sign == doctest::Approx(-1.0));  // odd position
    CHECK(word.gens.size() == 2);
    CHECK_FALSE(mlve::apply_left_derivative(word, 1, false));  // already consumed
}

TEST_CASE("fermionic factor") {
    SUBCASE("single vertex") {
        mlve::TwoLevelJungle j;
        j.n = 1;
        j.slices = {3};
        const auto ff = mlve::fermionic_factor(j, Eigen::MatrixXd::Identity(1, 1));
        CHECK(ff.hard_core_ok);
        CHECK(ff.slice_deltas_ok);
        CHECK(ff.determinants == std::vector<double>{1.0});
        CHECK(ff.total == doctest::Approx(1.0));
    }
    SUBCASE("independent blocks on distinct slices") {
        mlve::TwoLevelJungle j;
        j.n = 2;
        j.slices = {1, 2};
        const auto ff = mlve::fermionic_factor(j, Eigen::MatrixXd::Identity(2, 2));
        CHECK(ff.total == doctest::Approx(1.0));
        CHECK(ff.determinants == std::vector<double>{1.0});
    }
    SUBCASE("hard core excludes equal slices inside a block") {
        mlve::TwoLevelJungle j;
        j.n = 2;
        j.edges = {{0, 1, mlve::jungle_level::bosonic}};
        j.slices = {5, 5};
        const auto ff = mlve::fermionic_factor(j, Eigen::MatrixXd::Identity(1, 1));
        CHECK_FALSE(ff.hard_core_ok);
        CHECK(ff.total == 0.0);
        CHECK(ff.determinants.empty());
    }
    SUBCASE("fermionic edges force equal slices") {
        mlve::TwoLevelJungle j;
        j.n = 2;
        j.edges = {{0, 1, mlve::jungle_level::fermionic}};
        j.slices = {1, 2};
        const auto ff = mlve::fermionic_factor(j, Eigen::MatrixXd::Identity(2, 2));
        CHECK_FALSE(ff.slice_deltas_ok);
        CHECK(ff.total == 0.0);
    }
    SUBCASE("single fermionic edge sums to -2y") {
        auto gen = cft::substream(2718, 5);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            const double y = t == 0 ? 0.0 : (t == 1 ? 1.0 : unit(gen));
            Eigen::MatrixXd Y(2, 2);
            Y << 1.0, y, y, 1.0;
            mlve::TwoLevelJungle j;
            j.n = 2;
            j.edges = {{0, 1, mlve::jungle_level::fermionic}};
            j.slices = {2, 2};
            const auto ff = mlve::fermionic_factor(j, Y);
            REQUIRE(ff.determinants.size() == 2);
            CHECK(ff.determinants[0] == doctest::Approx(y).epsilon(1e-13));
            CHECK(ff.determinants[1] == doctest::Approx(y).epsilon(1e-13));
            CHECK(ff.total == doctest::Approx(-2.0 * y).epsilon(1e-13));
        }
    }
    SUBCASE("fermionic chain doubles the path minimum") {
        for (double w1 : {0.2, 0.5, 0.8})
            for (double w2 : {0.2, 0.5, 0.8}) {
                Eigen::MatrixXd Y(3, 3);
                const double m = std::min(w1, w2);
                Y << 1.0, w1, m, w1, 1.0, w2, m, w2, 1.0;
                mlve::TwoLevelJungle j;
                j.n = 3;
                j.edges = {{0, 1, mlve::jungle_level::fermionic},
                           {1, 2, mlve::jungle_level::fermionic}};
                j.slices = {4, 4, 4};
                const auto ff = mlve::fermionic_factor(j, Y);
                CHECK(ff.determinants.size() == 4);
                CHECK(ff.total == doctest::Approx(2.0 * m).epsilon(1e-12));
            }
    }
    SUBCASE("minors obey the Hadamard bound") {
        mlve::TwoLevelJungle j;
        j.n = 3;
        j.edges = {{0, 1, mlve::jungle_level::fermionic},
                   {1, 2, mlve::jungle_level::fermionic}};
        j.slices = {7, 7, 7};
        for (int t = 0; t < 1000; ++t) {
            auto gen = cft::substream(31337, static_cast<std::uint64_t>(t));
            std::normal_distribution<double> gauss;
            Eigen::MatrixXd U(3, 3);
            for (int r = 0; r < 3; ++r) {
                Eigen::Vector3d u;
                for (int c = 0; c < 3; ++c) u(c) = std::abs(gauss(gen)) + 1e-12;
                U.row(r) = u.normalized();
            }
            const Eigen::MatrixXd Y = U * U.transpose();
            for (double det : mlve::fermionic_factor(j, Y).determinants)
                CHECK(std::abs(det) <= 1.0 + 1e-9);
        }
    }
    SUBCASE("input validation") {
        mlve::TwoLevelJungle chain;
        chain.n = 3;
        chain.edges = {{0, 1, mlve::jungle_level::fermionic},
                       {1, 2, mlve::jungle_level::fermionic}};
        chain.slices = {4, 4, 4};
        CHECK_THROWS_AS(mlve::fermionic_factor(chain, Eigen::MatrixXd::Identity(2, 2)),
                        cft::validation_error);
        Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
        bad(0, 1) = 0.3;  // asymmetric
        CHECK_THROWS_AS(mlve::fermionic_factor(chain, bad), cft::validation_error);
        Eigen::MatrixXd offdiag = Eigen::MatrixXd::Identity(3, 3);
        offdiag(2, 2) = 0.9;
        CHECK_THROWS_AS(mlve::fermionic_factor(chain, offdiag), cft::validation_error);
        Eigen::MatrixXd indefinite(3, 3);
        indefinite << 1, 1, 0, 1, 1, 1, 0, 1, 1;
        CHECK_THROWS_AS(mlve::fermionic_factor(chain, indefinite),
                        cft::validation_error);

        mlve::TwoLevelJungle cycle;
        cycle.n = 3;
        cycle.edges = {{0, 1, mlve::jungle_level::bosonic},
                       {1, 2, mlve::jungle_level::bosonic},
                       {0, 2, mlve::jungle_level::fermionic}};
        cycle.slices = {1, 2, 3};
        CHECK_THROWS_AS(mlve::fermionic_factor(cycle, Eigen::MatrixXd::Identity(1, 1)),
                        cft::validation_error);

        mlve::TwoLevelJungle unassigned;
        unassigned.n = 2;
        CHECK_THROWS_AS(
            mlve::fermionic_factor(unassigned, Eigen::MatrixXd::Identity(2, 2)),
            cft::validation_error);
    }
}

TEST_CASE("jungle expansion orders") {
    SUBCASE("vanish at zero coupling") {
        const auto m = mlve::make_slice_model(2, 1, 3, Complex{0.0, 0.0});
        for (const Complex& term : mlve::mlve_order_terms(m, 2, 30000))
            CHECK(std::abs(term) < 1e-14);
    }
    SUBCASE("first order equals the sum of slice expectations") {
        const auto m = mlve::make_slice_model(2, 1, 2, Complex{0.2, 0.0});
        Complex direct = 0.0;
        for (int j = 1; j <= 2; ++j) {
            const auto v = mlve::make_slice_vertex(m, j);
            direct += cft::quad::integrate(
                [&](double s) {
                    return std::exp(-0.5 * s * s) *
                           mlve::slice_vertex_derivatives(v, s, 0) /
                           std::sqrt(2.0 * 3.14159265358979323846);
                },
                -10.0, 10.0, 1e-13);
        }
        const auto orders = mlve::mlve_order_terms(m, 1, 2000);
        REQUIRE(orders.size() == 1);
        CHECK(std::abs(orders[0] - direct) < 1e-10);
    }
    SUBCASE("first-order truncation lands near the oracle") {
        const auto m = mlve::make_slice_model(2, 1, 3, Complex{0.1, 0.0});
        const Complex oracle = mlve::oracle_logZ(m);
        const Complex t1 = mlve::mlve_truncated_sum(m, 1, 2000);
        CHECK(std::abs(t1 - oracle) < 1e-4);
    }
    SUBCASE("second order tightens the truncation") {
        const auto m = mlve::make_slice_model(2, 1, 4, Complex{0.2, 0.0});
        const Complex oracle = mlve::oracle_logZ(m);
        const double r1 = std::abs(mlve::mlve_truncated_sum(m, 1, 60000) - oracle);
        const double r2 = std::abs(mlve::mlve_truncated_sum(m, 2, 60000) - oracle);
        CHECK(r2 < r1);
    }
    SUBCASE("third order runs within a budget") {
        const auto m = mlve::make_slice_model(2, 1, 2, Complex{0.15, 0.0});
        const Complex oracle = mlve::oracle_logZ(m);
        const Complex s3 = mlve::mlve_truncated_sum(m, 3, 100000);
        CHECK(std::isfinite(s3.real()));
        CHECK(std::abs(s3 - oracle) <
              std::abs(mlve::mlve_truncated_sum(m, 1, 100000) - oracle));
    }
    SUBCASE("budget degradation stays close") {
        const auto m = mlve::make_slice_model(2, 1, 3, Complex{0.1, 0.0});
        const Complex coarse = mlve::mlve_truncated_sum(m, 2, 100);
        const Complex fine = mlve::mlve_truncated_sum(m, 2, 100000);
        CHECK(std::abs(coarse - fine) < 1e-3);
    }
    SUBCASE("domain validation") {
        const auto m = mlve::make_slice_model(2, 1, 3, Complex{0.6, 0.0});
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(m, 1, 1000), cft::validation_error);
        const auto c = mlve::make_slice_model(2, 1, 3, Complex{0.0, 0.1});
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(c, 1, 1000), cft::validation_error);
        const auto ok = mlve::make_slice_model(2, 1, 3, Complex{0.1, 0.0});
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(ok, 0, 1000), cft::validation_error);
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(ok, 4, 1000), cft::validation_error);
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(ok, 1, 0), cft::validation_error);
        const auto wide = mlve::make_slice_model(2, 1, 13, Complex{0.1, 0.0});
        CHECK_THROWS_AS(mlve::mlve_truncated_sum(wide, 1, 1000), cft::size_limit_error);
    }
}
