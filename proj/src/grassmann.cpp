#include "cft/grassmann.hpp"

#include <cstddef>

namespace cft::mlve {

bool apply_left_derivative(GrassmannWord& word, int label, bool bar) {
    for (std::size_t t = 0; t < word.gens.size(); ++t) {
        if (word.gens[t].label == label && word.gens[t].bar == bar) {
            if (t % 2 == 1) word.sign = -word.sign;
            word.gens.erase(word.gens.begin() + static_cast<std::ptrdiff_t>(t));
            return true;
        }
    }
    return false;
}

namespace {

double wick(std::vector<Generator>& gens, const Eigen::MatrixXd& K) {
    if (gens.empty()) return 1.0;
    const Generator head = gens.front();
    double total = 0.0;
    for (std::size_t t = 1; t < gens.size(); ++t) {
        if (gens[t].bar == head.bar) continue;
        const double crossing = (t % 2 == 1) ? 1.0 : -1.0;
        const double pair = head.bar ? -K(gens[t].label, head.label)
                                     : K(head.label, gens[t].label);
        std::vector<Generator> rest;
        rest.reserve(gens.size() - 2);
        for (std::size_t m = 1; m < gens.size(); ++m)
            if (m != t) rest.push_back(gens[m]);
        total += crossing * pair * wick(rest, K);
    }
    return total;
}

}  // namespace

double gaussian_expectation(const GrassmannWord& word, const Eigen::MatrixXd& K) {
    std::size_t chis = 0;
    for (const auto& g : word.gens) chis += g.bar ? 0 : 1;
    if (2 * chis != word.gens.size()) return 0.0;
    std::vector<Generator> gens = word.gens;
    return word.sign * wick(gens, K);
}

double minor_determinant(const GrassmannWord& word, const Eigen::MatrixXd& K) {
    std::vector<int> rows, cols;
    for (const auto& g : word.gens) (g.bar ? rows : cols).push_back(g.label);
    if (rows.size() != cols.size()) return 0.0;
    const int q = static_cast<int>(rows.size());
    if (q == 0) return 1.0;
    Eigen::MatrixXd sub(q, q);
    for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) sub(r, c) = K(cols[static_cast<std::size_t>(c)],
                                                  rows[static_cast<std::size_t>(r)]);
    return sub.determinant();
}

}  // namespace cft::mlve
