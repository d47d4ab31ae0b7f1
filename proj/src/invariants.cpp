#include "cft/invariants.hpp"

#include "cft/errors.hpp"
#include "cft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace cft::tensor {

namespace {

// evaluation budget: the naive contraction cost N^{2d} stays desk-sized
constexpr double kContractionBudget = 16777216.0;  // 2^24

double pow_int(double base, int exp) {
    double r = std::pow(base, static_cast<double>(exp));
    return r;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int components() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<int> GeneralizedColor::complement() const {
    std::vector<int> out;
    std::size_t k = 0;
    for (int c = 1; c <= rank; ++c) {
        if (k < members.size() && members[k] == c)
            ++k;
        else
            out.push_back(c);
    }
    return out;
}

GeneralizedColor make_color(int rank, std::vector<int> members) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(!members.empty(), "a generalized color needs at least one member");
    members = sorted_unique(std::move(members));
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
        require(members[i] != members[i + 1], "duplicate color in member set");
    require(members.front() >= 1 && members.back() <= rank,
            "color members must lie in [1, rank]");
    require(static_cast<int>(members.size()) < rank,
            "the full color set is not a quartic invariant");
    GeneralizedColor c{rank, std::move(members)};
    std::vector<int> comp = c.complement();
    if (comp.size() < c.members.size() ||
        (comp.size() == c.members.size() && comp < c.members))
        c.members = std::move(comp);
    return c;
}

std::vector<GeneralizedColor> enumerate_quartic_invariants(int rank) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    std::set<std::vector<int>> seen;
    std::vector<GeneralizedColor> out;
    for (unsigned mask = 1; mask + 1 < (1u << rank); ++mask) {
        std::vector<int> members;
        for (int c = 1; c <= rank; ++c)
            if (mask & (1u << (c - 1))) members.push_back(c);
        GeneralizedColor color = make_color(rank, std::move(members));
        if (seen.insert(color.members).second) out.push_back(std::move(color));
    }
    std::sort(out.begin(), out.end(),
              [](const GeneralizedColor& a, const GeneralizedColor& b) {
                  if (a.members.size() != b.members.size())
                      return a.members.size() < b.members.size();
                  return a.members < b.members;
              });
    return out;
}

std::size_t Tensor::flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int c = 0; c < rank; ++c) f = f * static_cast<std::size_t>(side) + idx[c];
    return f;
}

Tensor make_tensor(int rank, int side) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(side >= 1, "tensor side must be positive");
    double size = pow_int(side, rank);
    if (size > kContractionBudget)
        throw size_limit_error("tensor too large to store");
    Tensor t;
    t.rank = rank;
    t.side = side;
    t.entries.assign(static_cast<std::size_t>(size), Complex{0.0, 0.0});
    return t;
}

Tensor random_gaussian_tensor(int rank, int side, std::mt19937_64& gen) {
    Tensor t = make_tensor(rank, side);
    double var = pow_int(side, -(rank - 1));  // E[|T|^2] per entry
    std::normal_distribution<double> comp(0.0, std::sqrt(var / 2.0));
    for (auto& e : t.entries) e = Complex{comp(gen), comp(gen)};
    return t;
}

double quadratic_invariant(const Tensor& t) {
    double s = 0.0;
    for (const auto& e : t.entries) s += std::norm(e);
    return s;
}

Complex evaluate_invariant(const Tensor& t, const GeneralizedColor& color) {
    GeneralizedColor c = make_color(color.rank, color.members);
    require(t.rank == c.rank, "tensor and color rank mismatch");
    if (pow_int(t.side, 2 * t.rank) > kContractionBudget)
        throw size_limit_error("invariant contraction budget exceeded");

    const int d = t.rank;
    const int n = t.side;
    std::vector<bool> in_color(d, false);
    for (int m : c.members) in_color[m - 1] = true;

    Eigen::Index rows = 1, cols = 1;
    for (int p = 0; p < d; ++p) (in_color[p] ? rows : cols) *= n;

    Eigen::MatrixXcd m(rows, cols);
    std::vector<int> idx(d, 0);
    for (std::size_t f = 0; f < t.entries.size(); ++f) {
        std::size_t rest = f;
        for (int p = d - 1; p >= 0; --p) {
            idx[p] = static_cast<int>(rest % n);
            rest /= n;
        }
        Eigen::Index r = 0, s = 0;
        for (int p = 0; p < d; ++p) {
            if (in_color[p])
                r = r * n + idx[p];
            else
                s = s * n + idx[p];
        }
        m(r, s) = t.entries[f];
    }
    Eigen::MatrixXcd b = m * m.adjoint();
    return (b * b).trace();
}

Tensor apply_unitaries(const Tensor& t, const std::vector<Eigen::MatrixXcd>& u) {
    require(static_cast<int>(u.size()) == t.rank, "need one unitary per color");
    for (const auto& m : u)
        require(m.rows() == t.side && m.cols() == t.side,
                "unitary dimension must match the tensor side");
    Tensor cur = t;
    const int n = t.side;
    std::size_t stride = 1;
    for (int p = t.rank - 1; p >= 0; --p) {
        Tensor next = cur;
        for (std::size_t f = 0; f < cur.entries.size(); ++f) {
            int digit = static_cast<int>((f / stride) % n);
            std::size_t base = f - static_cast<std::size_t>(digit) * stride;
            Complex acc{0.0, 0.0};
            for (int m2 = 0; m2 < n; ++m2)
                acc += u[p](digit, m2) * cur.entries[base + m2 * stride];
            next.entries[f] = acc;
        }
        cur = std::move(next);
        stride *= n;
    }
    return cur;
}

double wick_quartic_expectation(int rank, int side, const GeneralizedColor& color) {
    GeneralizedColor c = make_color(color.rank, color.members);
    require(rank == c.rank, "rank and color rank mismatch");
    require(side >= 1, "tensor side must be positive");

    const int d = rank;
    std::vector<bool> in_color(d, false);
    for (int m : c.members) in_color[m - 1] = true;

    // nodes: slot * d + color position; slots are T1, T1bar, T2, T2bar
    auto node = [d](int slot, int p) { return slot * d + p; };
    double total = 0.0;
    for (int pairing = 0; pairing < 2; ++pairing) {
        Dsu dsu(4 * d);
        for (int p = 0; p < d; ++p) {
            if (in_color[p]) {
                dsu.unite(node(0, p), node(3, p));  // n_C = mbar_C
                dsu.unite(node(1, p), node(2, p));  // nbar_C = m_C
            } else {
                dsu.unite(node(0, p), node(1, p));  // within first bracket
                dsu.unite(node(2, p), node(3, p));  // within second bracket
            }
            if (pairing == 0) {
                dsu.unite(node(0, p), node(1, p));  // T1 with T1bar
                dsu.unite(node(2, p), node(3, p));  // T2 with T2bar
            } else {
                dsu.unite(node(0, p), node(3, p));  // T1 with T2bar
                dsu.unite(node(2, p), node(1, p));  // T2 with T1bar
            }
        }
        total += pow_int(side, dsu.components() - 2 * (d - 1));
    }
    return total;
}

MomentReport gaussian_moment_check(int rank, int side, std::size_t samples,
                                   std::uint64_t seed) {
    require(samples >= 2, "need at least two samples");
    if (pow_int(side, 2 * rank) > kContractionBudget)
        throw size_limit_error("invariant contraction budget exceeded");

    std::vector<GeneralizedColor> colors = enumerate_quartic_invariants(rank);
    MomentReport rep;
    rep.rank = rank;
    rep.side = side;
    rep.samples = samples;
    rep.quad_exact = static_cast<double>(side);

    double quad_sum = 0.0, quad_sq = 0.0;
    std::vector<double> inv_sum(colors.size(), 0.0), inv_sq(colors.size(), 0.0);
    for (std::size_t k = 0; k < samples; ++k) {
        auto gen = substream(seed, k);
        Tensor t = random_gaussian_tensor(rank, side, gen);
        double q = quadratic_invariant(t);
        quad_sum += q;
        quad_sq += q * q;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            double v = evaluate_invariant(t, colors[i]).real();
            inv_sum[i] += v;
            inv_sq[i] += v * v;
        }
    }
    auto finish = [samples](double sum, double sq, double& mean, double& err) {
        mean = sum / static_cast<double>(samples);
        double var = std::max(0.0, sq / static_cast<double>(samples) - mean * mean);
        err = std::sqrt(var / static_cast<double>(samples - 1));
    };
    finish(quad_sum, quad_sq, rep.quad_mean, rep.quad_err);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        MomentReport::InvariantMoment im;
        im.color = colors[i];
        im.exact = wick_quartic_expectation(rank, side, colors[i]);
        finish(inv_sum[i], inv_sq[i], im.mean, im.err);
        rep.invariants.push_back(std::move(im));
    }
    return rep;
}

}  // namespace cft::tensor
