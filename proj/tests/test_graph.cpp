#include <Eigen/Dense>

#include <algorithm>
#include <random>

#include "cft/errors.hpp"
#include "cft/graph.hpp"
#include "doctest.h"

using namespace cft;
using namespace cft::comb;

namespace {

// Kirchhoff matrix-tree count, used as an independent oracle.
double kirchhoff_count(const LabeledGraph& g) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
    for (auto [u, v] : g.edges) {
        if (u == v) continue;
        L(u, u) += 1;
        L(v, v) += 1;
        L(u, v) -= 1;
        L(v, u) -= 1;
    }
    return L.block(1, 1, g.n - 1, g.n - 1).determinant();
}

}  // namespace

TEST_CASE("forest counts on complete graphs") {
    CHECK(enumerate_forests_complete(1).size() == 1);
    CHECK(enumerate_forests_complete(2).size() == 2);
    CHECK(enumerate_forests_complete(3).size() == 7);
    CHECK(enumerate_forests_complete(4).size() == 38);
    CHECK(enumerate_forests_complete(5).size() == 291);
}

TEST_CASE("forest enumeration is sorted and acyclic") {
    auto forests = enumerate_forests_complete(4);
    LabeledGraph g = complete_graph(4);
    for (std::size_t i = 1; i < forests.size(); ++i)
        CHECK(forests[i - 1].edge_ids < forests[i].edge_ids);
    for (const auto& f : forests) CHECK(is_forest(g, f.edge_ids));
}

TEST_CASE("spanning tree counts match Cayley and Kirchhoff") {
    CHECK(enumerate_spanning_trees(complete_graph(3)).size() == 3);
    CHECK(enumerate_spanning_trees(complete_graph(4)).size() == 16);
    CHECK(enumerate_spanning_trees(complete_graph(5)).size() == 125);

    LabeledGraph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    auto trees = enumerate_spanning_trees(g);
    CHECK(static_cast<double>(trees.size()) ==
          doctest::Approx(kirchhoff_count(g)));
}

TEST_CASE("self loops and parallel edges") {
    LabeledGraph g = make_graph(2, {{0, 0}, {0, 1}, {0, 1}});
    CHECK(enumerate_spanning_trees(g).size() == 2);
    CHECK(!is_forest(g, {0}));   // self loop is a cycle
    CHECK(!is_forest(g, {1, 2}));  // parallel pair is a cycle
}

TEST_CASE("kruskal leading tree basics") {
    LabeledGraph tri = complete_graph(3);
    Forest t = kruskal_leading_tree(tri, {0, 1, 2});
    CHECK(t.edge_ids == std::vector<int>{0, 1});
    Forest t2 = kruskal_leading_tree(tri, {2, 1, 0});
    CHECK(t2.edge_ids == std::vector<int>{1, 2});

    LabeledGraph loops = make_graph(2, {{0, 0}, {0, 1}});
    Forest t3 = kruskal_leading_tree(loops, {0, 1});
    CHECK(t3.edge_ids == std::vector<int>{1});

    CHECK_THROWS_AS(
        kruskal_leading_tree(make_graph(2, {{0, 0}}), EdgeOrdering{0}),
        validation_error);
    CHECK_THROWS_AS(kruskal_leading_tree(tri, {0, 0, 1}), validation_error);
}

TEST_CASE("kruskal result minimizes the ordering over all spanning trees") {
    LabeledGraph g = complete_graph(4);
    auto trees = enumerate_spanning_trees(g);
    EdgeOrdering ordering(g.edge_count());
    std::iota(ordering.begin(), ordering.end(), 0);
    do {
        std::vector<int> rank(g.edge_count());
        for (int r = 0; r < g.edge_count(); ++r) rank[ordering[r]] = r;
        const Forest* best = nullptr;
        long best_cost = 0;
        for (const Forest& t : trees) {
            long cost = 0;
            for (int e : t.edge_ids) cost += 1L << rank[e];
            if (!best || cost < best_cost) {
                best = &t;
                best_cost = cost;
            }
        }
        Forest got = kruskal_leading_tree(g, ordering);
        REQUIRE(best != nullptr);
        CHECK(got.edge_ids == best->edge_ids);
    } while (std::next_permutation(ordering.begin(), ordering.end()));
}

TEST_CASE("forest_path finds the unique tree path") {
    LabeledGraph g = complete_graph(4);
    Forest f{{0, 3}};  // edges (0,1) and (1,2)
    auto p = forest_path(g, f, 0, 2);
    CHECK(p == std::vector<int>{0, 3});
    CHECK(forest_path(g, f, 0, 3).empty());
}

TEST_CASE("labeled phi4 vacuum graph counts") {
    CHECK(count_labeled_phi4_graphs(0) == 1);
    CHECK(count_labeled_phi4_graphs(1) == 3);
    CHECK(count_labeled_phi4_graphs(2) == 105);
    CHECK(count_labeled_phi4_graphs(3) == 10395);
    // (4n-1)!! == (4n)! / (2^{2n} (2n)!)
    for (int n = 1; n <= 12; ++n) {
        BigInt lhs = count_labeled_phi4_graphs(n);
        BigInt rhs = factorial(4 * n) /
                     (boost::multiprecision::pow(BigInt(2), 2 * n) *
                      factorial(2 * n));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("size guards throw size_limit_error") {
    CHECK_THROWS_AS(enumerate_forests_complete(9), size_limit_error);
    CHECK_THROWS_AS(enumerate_spanning_trees(complete_graph(9)),
                    size_limit_error);
}
