#include "cft/ics.hpp"

#include "cft/errors.hpp"
#include "cft/exact.hpp"
#include "cft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cft::tensor {

namespace {

// digit bookkeeping for operators acting on a subset of the color strands
struct SplitIndexer {
    int rank = 0, side = 1;
    std::vector<int> color_pos, rest_pos;  // 0-based tensor positions
    std::size_t color_dim = 1, rest_dim = 1;

    SplitIndexer(int rank_, int side_, const std::vector<int>& members)
        : rank(rank_), side(side_) {
        std::vector<bool> in(rank, false);
        for (int m : members) in[m - 1] = true;
        for (int p = 0; p < rank; ++p) {
            if (in[p]) {
                color_pos.push_back(p);
                color_dim *= side;
            } else {
                rest_pos.push_back(p);
                rest_dim *= side;
            }
        }
    }

    std::size_t compose(std::size_t cval, std::size_t sval) const {
        std::vector<int> digit(rank, 0);
        for (auto it = color_pos.rbegin(); it != color_pos.rend(); ++it) {
            digit[*it] = static_cast<int>(cval % side);
            cval /= side;
        }
        for (auto it = rest_pos.rbegin(); it != rest_pos.rend(); ++it) {
            digit[*it] = static_cast<int>(sval % side);
            sval /= side;
        }
        std::size_t f = 0;
        for (int p = 0; p < rank; ++p) f = f * side + digit[p];
        return f;
    }
};

double ipow(int base, int exp) {
    return std::pow(static_cast<double>(base), exp);
}

// M(x, y) = sum_s Q[(y, s), (x, s)], the message a subtree sends through an edge
Eigen::MatrixXcd partial_trace_to_color(const Eigen::MatrixXcd& q,
                                        const SplitIndexer& ix) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ix.color_dim, ix.color_dim);
    for (std::size_t x = 0; x < ix.color_dim; ++x)
        for (std::size_t y = 0; y < ix.color_dim; ++y) {
            Complex acc{0.0, 0.0};
            for (std::size_t s = 0; s < ix.rest_dim; ++s)
                acc += q(ix.compose(y, s), ix.compose(x, s));
            m(x, y) = acc;
        }
    return m;
}

struct TreeContractor {
    const ColoredTree& tree;
    const Eigen::MatrixXcd& r;
    Eigen::MatrixXcd rdag;
    int side;
    Eigen::Index dim;
    std::vector<int> offsets;
    std::vector<int> corner_kind;  // 0 bare, 1 resolvent, 2 conjugate

    TreeContractor(const ResolventDressedTree& t, int side_,
                   const Eigen::MatrixXcd& r_)
        : tree(t.tree), r(r_), side(side_) {
        dim = static_cast<Eigen::Index>(ipow(side, tree.rank));
        offsets.assign(tree.vertex_count + 1, 0);
        for (int v = 0; v < tree.vertex_count; ++v)
            offsets[v + 1] = offsets[v] + static_cast<int>(tree.slots[v].size());
        corner_kind.assign(tree.corner_count(), 0);
        for (int c : t.resolvent_corners) corner_kind[c] = 1;
        for (int c : t.conjugate_corners) corner_kind[c] = 2;
        if (!t.resolvent_corners.empty() || !t.conjugate_corners.empty()) {
            require(r.rows() == dim && r.cols() == dim,
                    "resolvent dimension must be side^rank");
            rdag = r.adjoint();
        }
    }

    // cyclic operator product at v; for parent_slot >= 0 the parent insertion
    // is left open and the word starts just after it
    Eigen::MatrixXcd vertex_product(int v, int parent_slot) {
        int q = static_cast<int>(tree.slots[v].size());
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
        int start = parent_slot < 0 ? 0 : parent_slot + 1;
        for (int i = 0; i < q; ++i) {
            int pos = (start + i) % q;
            int kind = corner_kind[offsets[v] + pos];
            if (kind == 1)
                p = p * r;
            else if (kind == 2)
                p = p * rdag;
            if (pos == parent_slot) continue;
            int e = tree.slots[v][pos];
            p = p * child_insertion(e, v);
        }
        return p;
    }

    Eigen::MatrixXcd child_insertion(int e, int from_vertex) {
        const ColoredTree::Edge& edge = tree.edges[e];
        int w = edge.a == from_vertex ? edge.b : edge.a;
        int slot = edge.a == from_vertex ? edge.slot_b : edge.slot_a;
        SplitIndexer ix(tree.rank, side, edge.color.members);
        Eigen::MatrixXcd msg =
            partial_trace_to_color(vertex_product(w, slot), ix);
        // Wick pairing swaps the open indices of the two edge ends
        Eigen::MatrixXcd lifted =
            Eigen::MatrixXcd::Zero(dim, dim);
        for (std::size_t cr = 0; cr < ix.color_dim; ++cr)
            for (std::size_t cc = 0; cc < ix.color_dim; ++cc) {
                Complex val = msg(cc, cr);  // transpose
                if (val == Complex{0.0, 0.0}) continue;
                for (std::size_t s = 0; s < ix.rest_dim; ++s)
                    lifted(ix.compose(cr, s), ix.compose(cc, s)) = val;
            }
        return lifted;
    }
};

std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq,
                                               int vertices) {
    std::vector<int> degree(vertices, 1);
    for (int s : seq) ++degree[s];
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> used(vertices, false);
    for (int s : seq) {
        int leaf = -1;
        for (int v = 0; v < vertices; ++v)
            if (degree[v] == 1 && !used[v]) {
                leaf = v;
                break;
            }
        edges.emplace_back(leaf, s);
        used[leaf] = true;
        --degree[s];
    }
    int u = -1, w = -1;
    for (int v = 0; v < vertices; ++v)
        if (degree[v] == 1 && !used[v]) (u < 0 ? u : w) = v;
    edges.emplace_back(u, w);
    return edges;
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex{gauss(gen), gauss(gen)};
    return (a + a.adjoint()) / 2.0;
}

}  // namespace

ResolventDressedTree make_dressed_tree(ColoredTree tree,
                                       std::vector<int> resolvent_corners,
                                       std::vector<int> conjugate_corners) {
    std::sort(resolvent_corners.begin(), resolvent_corners.end());
    std::sort(conjugate_corners.begin(), conjugate_corners.end());
    std::set<int> seen;
    for (const auto* list : {&resolvent_corners, &conjugate_corners})
        for (int c : *list) {
            require(c >= 0 && c < tree.corner_count(), "dressed corner out of range");
            require(seen.insert(c).second, "a corner carries at most one resolvent");
        }
    return ResolventDressedTree{std::move(tree), std::move(resolvent_corners),
                                std::move(conjugate_corners)};
}

bool cardioid_contains(Complex lambda) {
    double rho = std::abs(lambda);
    if (rho == 0.0) return true;
    double half = std::arg(lambda) / 2.0;
    return rho < std::cos(half) * std::cos(half);
}

Eigen::MatrixXcd lift_color_operator(const Eigen::MatrixXcd& a,
                                     const std::vector<int>& members, int rank,
                                     int side) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(side >= 1, "tensor side must be positive");
    require(!members.empty(), "need at least one color to act on");
    for (std::size_t i = 0; i < members.size(); ++i) {
        require(members[i] >= 1 && members[i] <= rank, "color out of range");
        require(i == 0 || members[i] > members[i - 1],
                "colors must be sorted and distinct");
    }
    SplitIndexer ix(rank, side, members);
    require(a.rows() == static_cast<Eigen::Index>(ix.color_dim) &&
                a.cols() == static_cast<Eigen::Index>(ix.color_dim),
            "operator dimension must be side^|C|");
    if (ipow(side, rank) > 4096.0) throw size_limit_error("lifted operator too large");
    Eigen::Index dim = static_cast<Eigen::Index>(ipow(side, rank));
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t cr = 0; cr < ix.color_dim; ++cr)
        for (std::size_t cc = 0; cc < ix.color_dim; ++cc)
            for (std::size_t s = 0; s < ix.rest_dim; ++s)
                out(ix.compose(cr, s), ix.compose(cc, s)) = a(cr, cc);
    return out;
}

Eigen::MatrixXcd resolvent_build(
    int rank, int side,
    const std::vector<std::pair<GeneralizedColor, Eigen::MatrixXcd>>& sigmas,
    Complex lambda, const std::vector<double>& kernel_diag) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(side >= 1, "tensor side must be positive");
    double dims = ipow(side, rank);
    if (dims > 4096.0) throw size_limit_error("resolvent space larger than 4096");
    Eigen::Index dim = static_cast<Eigen::Index>(dims);

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [color, sigma] : sigmas) {
        require(color.rank == rank, "sigma color rank mismatch");
        require((sigma - sigma.adjoint()).norm() <= 1e-10 * (1.0 + sigma.norm()),
                "sigma fields must be Hermitian");
        total += lift_color_operator(sigma, color.members, rank, side);
    }
    if (!kernel_diag.empty()) {
        require(kernel_diag.size() == static_cast<std::size_t>(dim),
                "kernel diagonal must have side^rank entries");
        Eigen::VectorXd sqrt_c(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            require(kernel_diag[i] >= 0.0, "kernel diagonal must be nonnegative");
            sqrt_c(i) = std::sqrt(kernel_diag[i]);
        }
        total = sqrt_c.asDiagonal() * total * sqrt_c.asDiagonal();
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(dim, dim) -
                         Complex{0.0, 1.0} * std::sqrt(lambda) * total;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    if (!lu.isInvertible())
        throw singularity_error("resolvent operator is singular");
    return lu.inverse();
}

double resolvent_norm(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
    require(es.info() == Eigen::Success, "norm eigensolve failed");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Complex contract_dressed_tree(const ResolventDressedTree& t, int side,
                              Complex lambda, const Eigen::MatrixXcd& r) {
    require(side >= 1, "tensor side must be positive");
    if (ipow(side, t.tree.rank) > 4096.0)
        throw size_limit_error("contraction space larger than 4096");
    TreeContractor ctx(t, side, r);
    Complex value = ctx.vertex_product(0, -1).trace();
    int n = t.tree.order();
    value *= ipow(side, -(t.tree.rank - 1) * n);
    for (int k = 0; k < n; ++k) value *= lambda;
    return value;
}

IcsSplit ics_split(const ResolventDressedTree& t, int corner) {
    int n = t.tree.order();
    require(n >= 1, "splitting needs at least one edge");
    require(corner >= 0 && corner < t.tree.corner_count(), "corner out of range");
    if (t.dressed_count() > 0) {
        bool dressed =
            std::binary_search(t.resolvent_corners.begin(),
                               t.resolvent_corners.end(), corner) ||
            std::binary_search(t.conjugate_corners.begin(),
                               t.conjugate_corners.end(), corner);
        require(dressed, "split corner must carry a resolvent");
    }

    std::vector<int> walk = boundary_walk(t.tree);
    int total = static_cast<int>(walk.size());
    int pos = static_cast<int>(
        std::find(walk.begin(), walk.end(), corner) - walk.begin());

    IcsSplit split;
    split.corner = corner;
    split.opposite = walk[(pos + n) % total];
    for (int i = 0; i < n; ++i) {
        split.first_half.push_back(walk[(pos + i) % total]);
        split.second_half.push_back(walk[(pos + n + i) % total]);
    }
    // transition i crosses the edge at the slot following walk position i
    std::vector<int> transition_edge(total);
    for (int i = 0; i < total; ++i) {
        auto [v, s] = corner_host(t.tree, walk[i]);
        transition_edge[i] = t.tree.slots[v][s];
    }
    auto in_first_arc = [&](int i) {
        int rel = ((i - pos) % total + total) % total;
        return rel < n;
    };
    std::vector<std::vector<int>> edge_sides(t.tree.edges.size());
    for (int i = 0; i < total; ++i) edge_sides[transition_edge[i]].push_back(i);
    for (std::size_t e = 0; e < edge_sides.size(); ++e)
        if (in_first_arc(edge_sides[e][0]) != in_first_arc(edge_sides[e][1]))
            split.cut_edges.push_back(static_cast<int>(e));
    return split;
}

std::vector<ColoredTree> enumerate_order_trees(int rank, int order) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(order >= 0, "order must be nonnegative");
    if (order > 6) throw size_limit_error("tree enumeration capped at order 6");
    std::vector<GeneralizedColor> colors = enumerate_quartic_invariants(rank);
    int vertices = order + 1;
    double count = std::pow(static_cast<double>(vertices),
                            std::max(0, vertices - 2)) *
                   std::pow(static_cast<double>(colors.size()), order);
    if (count > 200000.0) throw size_limit_error("tree enumeration too large");

    std::vector<ColoredTree> out;
    if (order == 0) {
        out.push_back(make_colored_tree(rank, 1, {}));
        return out;
    }
    std::vector<int> seq(std::max(0, vertices - 2), 0);
    bool seq_done = false;
    while (!seq_done) {
        auto edges = prufer_decode(seq, vertices);
        std::vector<int> pick(order, 0);
        bool pick_done = false;
        while (!pick_done) {
            std::vector<std::tuple<int, int, std::vector<int>>> spec;
            for (int e = 0; e < order; ++e)
                spec.emplace_back(edges[e].first, edges[e].second,
                                  colors[pick[e]].members);
            out.push_back(make_colored_tree(rank, vertices, spec));
            pick_done = true;
            for (int e = order - 1; e >= 0; --e) {
                if (++pick[e] < static_cast<int>(colors.size())) {
                    pick_done = false;
                    break;
                }
                pick[e] = 0;
            }
        }
        seq_done = true;
        for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
            if (++seq[i] < vertices) {
                seq_done = false;
                break;
            }
            seq[i] = 0;
        }
        if (seq.empty()) break;
    }
    return out;
}

IcsReport ics_verify(const ResolventDressedTree& t, int side, Complex lambda,
                     std::size_t samples, std::uint64_t seed) {
    require(t.tree.rank == 3, "bound verification runs at rank 3");
    require(t.tree.order() >= 1, "need at least one edge");
    if (t.tree.order() > 4) throw size_limit_error("verification capped at order 4");
    if (side > 6) throw size_limit_error("verification capped at side 6");
    require(side >= 1, "tensor side must be positive");
    require(samples >= 1, "need at least one sample");
    require(cardioid_contains(lambda), "lambda must lie inside the cardioid");

    const int n = t.tree.order();
    const int d = t.tree.rank;
    IcsReport rep;
    rep.order = n;
    rep.side = side;
    rep.samples = samples;
    rep.k_constant = 1.0 / std::cos(std::arg(lambda) / 2.0);

    for (const ColoredTree& other : enumerate_order_trees(d, n)) {
        double amp = std::abs(perturbative_amplitude(other, side, lambda));
        rep.sup_undressed = std::max(rep.sup_undressed, amp);
    }
    rep.bound = std::pow(rep.k_constant, 2 * n) * rep.sup_undressed;

    std::vector<GeneralizedColor> colors = enumerate_quartic_invariants(d);
    for (std::size_t k = 0; k < samples; ++k) {
        auto gen = substream(seed, k);
        std::vector<std::pair<GeneralizedColor, Eigen::MatrixXcd>> sigmas;
        for (const auto& c : colors) {
            int dim = static_cast<int>(ipow(side, c.size()));
            sigmas.emplace_back(c, random_hermitian(dim, gen));
        }
        Eigen::MatrixXcd r = resolvent_build(d, side, sigmas, lambda);
        double amp = std::abs(contract_dressed_tree(t, side, lambda, r));
        rep.max_amplitude = std::max(rep.max_amplitude, amp);
        if (amp > rep.bound * (1.0 + 1e-9)) ++rep.violations;
    }
    if (rep.bound > 0.0) rep.max_ratio = rep.max_amplitude / rep.bound;
    return rep;
}

std::vector<double> rarefaction_trace(int order, int p0, int iterations) {
    require(order >= 1, "order must be positive");
    require(p0 >= 0 && p0 <= 2 * order, "initial count must lie in [0, 2n]");
    require(iterations >= 1 && iterations <= 2000,
            "iterations must lie in [1, 2000]");
    BigInt p = p0;
    BigInt cap = 2 * order;
    std::vector<double> q;
    q.push_back(static_cast<double>(p0));
    for (int r = 1; r <= iterations; ++r) {
        BigInt m = (p + cap - 1) / cap;  // ceil(p / 2n)
        p = 2 * p - 2 * m;
        q.push_back(to_double(BigRational(p, BigInt(1) << r)));
    }
    return q;
}

}  // namespace cft::tensor
