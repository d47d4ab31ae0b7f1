#include "cft/plane_tree.hpp"

#include <utility>

#include "cft/errors.hpp"

namespace cft::plane {

namespace {

// Depth-first generation over Dyck words: an "open" step descends to a fresh
// child, a "close" step returns to the parent.  Each word is a distinct plane
// tree and every tree is reached exactly once.
void generate(int opens_left, std::vector<int>& stack, RootedPlaneTree& work,
              std::vector<RootedPlaneTree>& out) {
    if (opens_left == 0) {
        // remaining moves are forced closes; the tree is already complete
        RootedPlaneTree t = work;
        t.degrees.resize(t.children.size());
        for (std::size_t v = 0; v < t.children.size(); ++v)
            t.degrees[v] = static_cast<int>(t.children[v].size()) + 1;
        out.push_back(std::move(t));
        return;
    }
    const int v = static_cast<int>(work.parent.size());
    work.parent.push_back(stack.back());
    work.children[static_cast<std::size_t>(stack.back())].push_back(v);
    work.children.emplace_back();
    stack.push_back(v);
    generate(opens_left - 1, stack, work, out);
    stack.pop_back();
    work.children.pop_back();
    work.children[static_cast<std::size_t>(work.parent.back())].pop_back();
    work.parent.pop_back();

    if (stack.size() > 1) {
        const int saved = stack.back();
        stack.pop_back();
        generate(opens_left, stack, work, out);
        stack.push_back(saved);
    }
}

}  // namespace

std::vector<RootedPlaneTree> enumerate_rooted_plane_trees(int n) {
    require(n >= 0, "edge count must be nonnegative");
    if (n > 12)
        throw size_limit_error("plane tree enumeration capped at 12 edges");
    RootedPlaneTree work;
    work.edge_count = n;
    work.parent.assign(1, -1);
    work.children.assign(1, {});
    std::vector<int> stack{0};
    std::vector<RootedPlaneTree> out;
    generate(n, stack, work, out);
    return out;
}

BigInt catalan_number(unsigned n) {
    return factorial(2 * n) / (factorial(n) * factorial(n + 1));
}

comb::LabeledGraph tree_graph(const RootedPlaneTree& tree) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(tree.edge_count));
    for (int v = 1; v <= tree.edge_count; ++v)
        edges.emplace_back(tree.parent[static_cast<std::size_t>(v)], v);
    return comb::make_graph(tree.vertex_count(), edges);
}

std::vector<std::vector<std::vector<int>>> tree_path_edges(const RootedPlaneTree& tree) {
    const int m = tree.vertex_count();
    std::vector<int> depth(static_cast<std::size_t>(m), 0);
    for (int v = 1; v < m; ++v)
        depth[static_cast<std::size_t>(v)] =
            depth[static_cast<std::size_t>(tree.parent[static_cast<std::size_t>(v)])] + 1;

    std::vector<std::vector<std::vector<int>>> paths(
        static_cast<std::size_t>(m),
        std::vector<std::vector<int>>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int a = i, b = j;
            std::vector<int> ids;
            while (a != b) {
                // climb the deeper endpoint; edge id of vertex v is v-1
                if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
                    ids.push_back(a - 1);
                    a = tree.parent[static_cast<std::size_t>(a)];
                } else {
                    ids.push_back(b - 1);
                    b = tree.parent[static_cast<std::size_t>(b)];
                }
            }
            paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ids;
            paths[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(ids);
        }
    }
    return paths;
}

}  // namespace cft::plane
