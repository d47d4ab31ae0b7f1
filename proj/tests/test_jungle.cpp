#include <random>

#include "cft/errors.hpp"
#include "cft/forest_matrix.hpp"
#include "cft/jungle.hpp"
#include "doctest.h"

using namespace cft;
using namespace cft::comb;

TEST_CASE("jungle counts") {
    CHECK(enumerate_jungles(2, 2).size() == 3);
    CHECK(enumerate_jungles(3, 1).size() == 7);
    // sum over forests of m^{|F|}: 1 + 3*2 + 3*4 = 19 on K_3
    CHECK(enumerate_jungles(3, 2).size() == 19);
    CHECK(enumerate_jungles(3, 3).size() == 1 + 3 * 3 + 3 * 9);
}

TEST_CASE("jungles are nested") {
    LabeledGraph g = complete_graph(4);
    for (const Jungle& j : enumerate_jungles(4, 2)) {
        CHECK_NOTHROW(validate_jungle(g, j));
    }
}

TEST_CASE("validate_jungle rejects broken nesting") {
    LabeledGraph g = complete_graph(3);
    Jungle j;
    j.levels.push_back(Forest{{0, 1}});
    j.levels.push_back(Forest{{0}});
    CHECK_THROWS_AS(validate_jungle(g, j), validation_error);
}

TEST_CASE("two point jungle matrices") {
    LabeledGraph g = complete_graph(2);
    Jungle j;
    j.levels.push_back(Forest{{0}});
    j.levels.push_back(Forest{{0}});
    Eigen::VectorXd w(1);
    w << 0.5;
    auto mats = jungle_matrices(g, j, w);
    REQUIRE(mats.size() == 2);
    CHECK(mats[0](0, 1) == doctest::Approx(0.5));
    CHECK(mats[1](0, 1) == doctest::Approx(1.0));
}

TEST_CASE("level matrices: zero across top components, min over new edges") {
    LabeledGraph g = complete_graph(4);
    // top forest: (0,1) and (1,2); first level only (0,1)
    Jungle j;
    j.levels.push_back(Forest{{0}});
    j.levels.push_back(Forest{{0, 3}});
    Eigen::VectorXd w(2);
    w << 0.9, 0.2;
    auto mats = jungle_matrices(g, j, w);
    CHECK(mats[0](0, 1) == doctest::Approx(0.9));
    CHECK(mats[0](0, 2) == 0.0);
    CHECK(mats[1](0, 1) == 1.0);          // connected at level 1
    CHECK(mats[1](0, 2) == doctest::Approx(0.2));  // min over new edge only
    CHECK(mats[1](0, 3) == 0.0);
}

TEST_CASE("jungle matrices are positive semidefinite") {
    std::mt19937_64 rng(451);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int n = 2; n <= 5; ++n) {
        LabeledGraph g = complete_graph(n);
        auto jungles = enumerate_jungles(n, 2);
        for (int trial = 0; trial < 200; ++trial) {
            const Jungle& j = jungles[rng() % jungles.size()];
            Eigen::VectorXd w(j.top().size());
            for (int i = 0; i < w.size(); ++i) w[i] = uni(rng);
            for (const Eigen::MatrixXd& X : jungle_matrices(g, j, w))
                CHECK(min_eigenvalue(X) >= -1e-12 * n);
        }
    }
}
