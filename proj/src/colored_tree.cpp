#include "cft/colored_tree.hpp"

#include "cft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cft::tensor {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// one step of the color-c strand walk from the given corner
int strand_step(const ColoredTree& t, const std::vector<int>& offsets, int corner,
                int color) {
    auto [v, i] = corner_host(t, corner);
    const ColoredTree::Edge& e = t.edges[t.slots[v][i]];
    bool crosses = color == 0 || std::binary_search(e.color.members.begin(),
                                                    e.color.members.end(), color);
    if (!crosses) {
        int deg = static_cast<int>(t.slots[v].size());
        return offsets[v] + (i + 1) % deg;
    }
    bool at_a = e.a == v && e.slot_a == i;
    int w = at_a ? e.b : e.a;
    int j = at_a ? e.slot_b : e.slot_a;
    int deg = static_cast<int>(t.slots[w].size());
    return offsets[w] + (j + 1) % deg;
}

std::vector<int> make_offsets(const ColoredTree& t) {
    std::vector<int> offsets(t.vertex_count + 1, 0);
    for (int v = 0; v < t.vertex_count; ++v)
        offsets[v + 1] = offsets[v] + static_cast<int>(t.slots[v].size());
    return offsets;
}

// count cycles of the color-c strand permutation (color 0 = cross everything)
int strand_cycles(const ColoredTree& t, const std::vector<int>& offsets, int color,
                  std::vector<int>* first_cycle) {
    int corners = t.corner_count();
    if (corners == 0) return 1;  // bare loop
    std::vector<bool> seen(corners, false);
    int cycles = 0;
    for (int start = 0; start < corners; ++start) {
        if (seen[start]) continue;
        ++cycles;
        int c = start;
        do {
            seen[c] = true;
            if (first_cycle && cycles == 1) first_cycle->push_back(c);
            c = strand_step(t, offsets, c, color);
        } while (c != start);
    }
    return cycles;
}

}  // namespace

ColoredTree make_colored_tree(
    int rank, int vertex_count,
    const std::vector<std::tuple<int, int, std::vector<int>>>& edges) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(vertex_count >= 1, "need at least one loop vertex");
    require(static_cast<int>(edges.size()) == vertex_count - 1,
            "a tree on v vertices has v - 1 edges");

    ColoredTree t;
    t.rank = rank;
    t.vertex_count = vertex_count;
    t.slots.assign(vertex_count, {});
    Dsu dsu(vertex_count);
    for (const auto& [a, b, members] : edges) {
        require(a >= 0 && a < vertex_count && b >= 0 && b < vertex_count,
                "edge endpoint out of range");
        require(a != b, "loop vertices cannot be joined to themselves");
        require(dsu.unite(a, b), "edges must form a tree, found a cycle");
        ColoredTree::Edge e;
        e.a = a;
        e.b = b;
        e.color = make_color(rank, members);
        e.slot_a = static_cast<int>(t.slots[a].size());
        e.slot_b = static_cast<int>(t.slots[b].size());
        int id = static_cast<int>(t.edges.size());
        t.slots[a].push_back(id);
        t.slots[b].push_back(id);
        t.edges.push_back(std::move(e));
    }
    return t;
}

int corner_offset(const ColoredTree& t, int vertex) {
    require(vertex >= 0 && vertex < t.vertex_count, "vertex out of range");
    int off = 0;
    for (int v = 0; v < vertex; ++v) off += static_cast<int>(t.slots[v].size());
    return off;
}

std::pair<int, int> corner_host(const ColoredTree& t, int corner) {
    require(corner >= 0 && corner < t.corner_count(), "corner out of range");
    int off = 0;
    for (int v = 0; v < t.vertex_count; ++v) {
        int deg = static_cast<int>(t.slots[v].size());
        if (corner < off + deg) return {v, corner - off};
        off += deg;
    }
    throw validation_error("corner out of range");
}

FaceCount count_faces(const ColoredTree& t) {
    std::vector<int> offsets = make_offsets(t);
    FaceCount fc;
    fc.per_color.resize(t.rank);
    for (int c = 1; c <= t.rank; ++c) {
        fc.per_color[c - 1] = strand_cycles(t, offsets, c, nullptr);
        fc.total += fc.per_color[c - 1];
    }
    return fc;
}

std::vector<int> boundary_walk(const ColoredTree& t) {
    std::vector<int> offsets = make_offsets(t);
    std::vector<int> walk;
    if (t.corner_count() == 0) return walk;
    int cycles = strand_cycles(t, offsets, 0, &walk);
    require(cycles == 1 && static_cast<int>(walk.size()) == t.corner_count(),
            "fattened tree boundary must be a single cycle");
    return walk;
}

Complex perturbative_amplitude(const ColoredTree& t, int side, Complex lambda) {
    require(side >= 1, "tensor side must be positive");
    int n = t.order();
    int exponent = count_faces(t).total - (t.rank - 1) * n;
    Complex amp = std::pow(static_cast<double>(side), exponent);
    for (int k = 0; k < n; ++k) amp *= lambda;
    return amp;
}

}  // namespace cft::tensor
