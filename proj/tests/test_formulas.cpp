#include <cmath>
#include <random>

#include "cft/formulas.hpp"
#include "doctest.h"

using namespace cft::comb;

TEST_CASE("two point forest formula reproduces e^t") {
    Eigen::MatrixXd t(2, 2);
    t << 0, 1, 1, 0;
    auto rep = forest_formula_verify(2, t);
    CHECK(rep.forest_count == 2);
    CHECK(rep.lhs == doctest::Approx(std::exp(1.0)));
    CHECK(rep.rel_residual < 1e-10);
}

TEST_CASE("zero couplings are exact") {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(3, 3);
    auto rep = forest_formula_verify(3, t);
    CHECK(rep.forest_count == 7);
    CHECK(rep.lhs == 1.0);
    CHECK(rep.abs_residual < 1e-13);
}

TEST_CASE("forest formula on random couplings") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) t(i, j) = t(j, i) = uni(rng);
            auto rep = forest_formula_verify(n, t);
            CHECK(rep.rel_residual < 1e-8);
        }
    }
}

TEST_CASE("gaussian replica: quadratic integrands") {
    // n=2, f_i = tau^2: E[tau^4] = 3
    auto rep = gaussian_replica_verify(2, 1.0, {{0, 0, 1}, {0, 0, 1}});
    CHECK(rep.lhs == doctest::Approx(3.0));
    CHECK(rep.abs_residual < 1e-12);

    // n=3: E[tau^6] = 15
    auto rep3 =
        gaussian_replica_verify(3, 1.0, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
    CHECK(rep3.lhs == doctest::Approx(15.0));
    CHECK(rep3.abs_residual < 1e-12);
}

TEST_CASE("gaussian replica: random small instances") {
    std::mt19937_64 rng(99173);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Poly> polys;
            for (int i = 0; i < n; ++i) {
                Poly p(5);
                for (double& c : p) c = uni(rng);
                polys.push_back(p);
            }
            auto rep = gaussian_replica_verify(n, 1.0, polys);
            CHECK(rep.rel_residual < 1e-8);
        }
    }
}

TEST_CASE("gaussian replica: non-unit covariance") {
    auto rep = gaussian_replica_verify(2, 2.5, {{1, 2, 3}, {0, 1, 0, 2}});
    CHECK(rep.rel_residual < 1e-12);
}
