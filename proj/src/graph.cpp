#include "cft/graph.hpp"

#include <algorithm>
#include <numeric>

#include "cft/errors.hpp"

namespace cft::comb {

LabeledGraph complete_graph(int n) {
    require(n >= 1, "complete_graph: need n >= 1");
    LabeledGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

LabeledGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    require(n >= 1, "make_graph: need n >= 1");
    for (auto& [u, v] : edges) {
        require(0 <= u && u < n && 0 <= v && v < n,
                "make_graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    return LabeledGraph{n, std::move(edges)};
}

bool Forest::contains(int e) const {
    return std::binary_search(edge_ids.begin(), edge_ids.end(), e);
}

bool is_forest(const LabeledGraph& g, const std::vector<int>& edge_ids) {
    DisjointSets ds(g.n);
    for (int e : edge_ids) {
        auto [u, v] = g.edges[e];
        if (u == v || !ds.unite(u, v)) return false;
    }
    return true;
}

bool is_connected(const LabeledGraph& g) {
    DisjointSets ds(g.n);
    int parts = g.n;
    for (auto [u, v] : g.edges)
        if (u != v && ds.unite(u, v)) --parts;
    return parts == 1;
}

std::vector<int> components(const LabeledGraph& g,
                            const std::vector<int>& edge_ids) {
    DisjointSets ds(g.n);
    for (int e : edge_ids) {
        auto [u, v] = g.edges[e];
        if (u != v) ds.unite(u, v);
    }
    std::vector<int> label(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        int r = ds.find(v);
        if (label[r] < 0) label[r] = next++;
        label[v] = label[r];
    }
    return label;
}

namespace {

void extend_forests(const LabeledGraph& g, int from, DisjointSets& ds,
                    std::vector<int>& current, std::vector<Forest>& out) {
    out.push_back(Forest{current});
    for (int e = from; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        if (u == v || ds.find(u) == ds.find(v)) continue;
        DisjointSets saved = ds;
        ds.unite(u, v);
        current.push_back(e);
        extend_forests(g, e + 1, ds, current, out);
        current.pop_back();
        ds = saved;
    }
}

}  // namespace

std::vector<Forest> enumerate_forests(const LabeledGraph& g) {
    if (g.edge_count() > 28)
        throw size_limit_error("enumerate_forests: more than 28 edges");
    DisjointSets ds(g.n);
    std::vector<int> current;
    std::vector<Forest> out;
    extend_forests(g, 0, ds, current, out);
    std::sort(out.begin(), out.end(), [](const Forest& a, const Forest& b) {
        return a.edge_ids < b.edge_ids;
    });
    return out;
}

std::vector<Forest> enumerate_forests_complete(int n) {
    if (n > 8) throw size_limit_error("enumerate_forests_complete: n > 8");
    return enumerate_forests(complete_graph(n));
}

std::vector<Forest> enumerate_spanning_trees(const LabeledGraph& g) {
    require(is_connected(g), "enumerate_spanning_trees: graph not connected");
    if (g.n > 8) throw size_limit_error("enumerate_spanning_trees: n > 8");
    std::vector<Forest> out;
    for (const Forest& f : enumerate_forests(g))
        if (f.size() == g.n - 1) out.push_back(f);
    return out;
}

void validate_ordering(const LabeledGraph& g, const EdgeOrdering& ordering) {
    require(static_cast<int>(ordering.size()) == g.edge_count(),
            "edge ordering has wrong length");
    std::vector<char> seen(g.edge_count(), 0);
    for (int e : ordering) {
        require(0 <= e && e < g.edge_count() && !seen[e],
                "edge ordering is not a permutation");
        seen[e] = 1;
    }
}

Forest kruskal_leading_tree(const LabeledGraph& g,
                            const EdgeOrdering& ordering) {
    validate_ordering(g, ordering);
    require(is_connected(g), "kruskal_leading_tree: graph not connected");
    DisjointSets ds(g.n);
    std::vector<int> picked;
    for (int e : ordering) {
        auto [u, v] = g.edges[e];
        if (u != v && ds.unite(u, v)) picked.push_back(e);
    }
    std::sort(picked.begin(), picked.end());
    return Forest{picked};
}

std::vector<int> forest_path(const LabeledGraph& g, const Forest& f, int a,
                             int b) {
    if (a == b) return {};
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (vertex, edge)
    for (int e : f.edge_ids) {
        auto [u, v] = g.edges[e];
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }
    std::vector<int> via_edge(g.n, -1), via_vertex(g.n, -1);
    std::vector<int> stack{a};
    std::vector<char> seen(g.n, 0);
    seen[a] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == b) break;
        for (auto [y, e] : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                via_edge[y] = e;
                via_vertex[y] = x;
                stack.push_back(y);
            }
    }
    if (!seen[b]) return {};
    std::vector<int> path;
    for (int x = b; x != a; x = via_vertex[x]) path.push_back(via_edge[x]);
    std::reverse(path.begin(), path.end());
    return path;
}

BigInt count_labeled_phi4_graphs(int n) {
    require(n >= 0, "count_labeled_phi4_graphs: negative order");
    if (n > 1000) throw size_limit_error("count_labeled_phi4_graphs: n > 1000");
    return odd_double_factorial(4L * n - 1);
}

}  // namespace cft::comb
