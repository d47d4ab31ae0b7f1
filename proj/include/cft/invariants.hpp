#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace cft::tensor {

using Complex = std::complex<double>;

// proper subset of the color set {1..d}, canonicalized against its complement
struct GeneralizedColor {
    int rank = 2;
    std::vector<int> members;  // sorted ascending, 1-based

    int size() const { return static_cast<int>(members.size()); }
    bool melonic() const { return size() == 1 || size() == rank - 1; }
    std::vector<int> complement() const;
    bool operator==(const GeneralizedColor& o) const {
        return rank == o.rank && members == o.members;
    }
};

GeneralizedColor make_color(int rank, std::vector<int> members);

// the 2^{d-1} - 1 canonical quartic trace invariants, sorted by (size, lexicographic)
std::vector<GeneralizedColor> enumerate_quartic_invariants(int rank);

struct Tensor {
    int rank = 1;
    int side = 1;
    std::vector<Complex> entries;  // row-major over (n_1, ..., n_d), 0-based

    std::size_t flat(const std::vector<int>& idx) const;
    Complex& at(const std::vector<int>& idx) { return entries[flat(idx)]; }
    const Complex& at(const std::vector<int>& idx) const { return entries[flat(idx)]; }
};

Tensor make_tensor(int rank, int side);

// entries are independent complex Gaussians with E[|T|^2] = N^{-(d-1)}
Tensor random_gaussian_tensor(int rank, int side, std::mt19937_64& gen);

// T-vee . T = sum |T_n|^2
double quadratic_invariant(const Tensor& t);

// V_C = Tr[(M M^dagger)^2] for the matricization split along the canonical color
Complex evaluate_invariant(const Tensor& t, const GeneralizedColor& color);

// simultaneous unitary rotation, one U per color
Tensor apply_unitaries(const Tensor& t, const std::vector<Eigen::MatrixXcd>& u);

// exact free-measure expectation of V_C by enumerating the two Wick pairings
// and counting index loops of each delta network
double wick_quartic_expectation(int rank, int side, const GeneralizedColor& color);

struct MomentReport {
    int rank = 0;
    int side = 0;
    std::size_t samples = 0;
    double quad_mean = 0.0, quad_err = 0.0, quad_exact = 0.0;
    struct InvariantMoment {
        GeneralizedColor color;
        double mean = 0.0, err = 0.0, exact = 0.0;
    };
    std::vector<InvariantMoment> invariants;
};

// Monte Carlo moments of the free measure against their Wick values
MomentReport gaussian_moment_check(int rank, int side, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace cft::tensor
