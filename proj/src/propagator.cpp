#include "cft/propagator.hpp"

#include "cft/errors.hpp"

#include <cmath>
#include <cstdint>

namespace cft::tensor {

namespace {

double box_count(int rank, int cutoff) {
    double side = 2.0 * cutoff + 1.0;
    return std::pow(side, rank);
}

// inner sum over one or two free momenta of 1/(n^2 + shift + m^2)
double tadpole_sum_1d(int cutoff, double shift, double mass2) {
    double s = 0.0;
    for (int n = -cutoff; n <= cutoff; ++n)
        s += 1.0 / (static_cast<double>(n) * n + shift + mass2);
    return s;
}

double tadpole_sum_2d(int cutoff, double shift, double mass2) {
    double s = 0.0;
    for (int a = -cutoff; a <= cutoff; ++a)
        for (int b = -cutoff; b <= cutoff; ++b)
            s += 1.0 / (static_cast<double>(a) * a + static_cast<double>(b) * b +
                        shift + mass2);
    return s;
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = k * sxx - sx * sx;
    LineFit f;
    f.slope = (k * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / k;
    double rss = 0.0, lo = y[0], hi = y[0];
    for (std::size_t i = 0; i < k; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        rss += r * r;
        lo = std::min(lo, y[i]);
        hi = std::max(hi, y[i]);
    }
    double spread = hi - lo;
    f.residual = spread > 0.0 ? std::sqrt(rss / k) / spread : std::sqrt(rss / k);
    return f;
}

}  // namespace

Propagator make_propagator(Propagator::Kind kind, int rank, double mass2) {
    require(rank >= 2 && rank <= 8, "tensor rank must lie in [2, 8]");
    require(mass2 > 0.0, "squared mass must be positive");
    return Propagator{kind, rank, mass2};
}

double propagator_value(const Propagator& p, const std::vector<int>& momenta) {
    require(static_cast<int>(momenta.size()) == p.rank,
            "momentum multiplet length must equal the rank");
    if (p.kind == Propagator::Kind::pure) return 1.0;
    double q2 = 0.0;
    std::int64_t total = 0;
    for (int n : momenta) {
        q2 += static_cast<double>(n) * n;
        total += n;
    }
    if (p.kind == Propagator::Kind::tgft_boulatov && total != 0) return 0.0;
    return 1.0 / (q2 + p.mass2);
}

double DiagonalKernel::at(const std::vector<int>& momenta) const {
    require(static_cast<int>(momenta.size()) == rank,
            "momentum multiplet length must equal the rank");
    std::size_t f = 0;
    std::size_t side = 2 * static_cast<std::size_t>(cutoff) + 1;
    for (int n : momenta) {
        require(n >= -cutoff && n <= cutoff, "momentum outside the box");
        f = f * side + static_cast<std::size_t>(n + cutoff);
    }
    return values[f];
}

DiagonalKernel build_propagator(const Propagator& p, int cutoff) {
    require(cutoff >= 0, "cutoff must be nonnegative");
    if (box_count(p.rank, cutoff) > 16777216.0)
        throw size_limit_error("momentum box too large");
    DiagonalKernel k;
    k.rank = p.rank;
    k.cutoff = cutoff;
    std::size_t count = static_cast<std::size_t>(box_count(p.rank, cutoff));
    k.values.resize(count);
    std::vector<int> momenta(p.rank, -cutoff);
    for (std::size_t f = 0; f < count; ++f) {
        k.values[f] = propagator_value(p, momenta);
        for (int pos = p.rank - 1; pos >= 0; --pos) {
            if (++momenta[pos] <= cutoff) break;
            momenta[pos] = -cutoff;
        }
    }
    return k;
}

Growth expected_growth(T43Graph g) {
    switch (g) {
        case T43Graph::divergent_tadpole: return Growth::logarithmic;
        case T43Graph::convergent_tadpole: return Growth::bounded;
        case T43Graph::vacuum_linear: return Growth::linear;
        case T43Graph::vacuum_log: return Growth::logarithmic;
    }
    throw validation_error("unknown graph");
}

double t43_graph_value(T43Graph g, int cutoff, double mass2) {
    require(cutoff >= 1 && cutoff <= 512, "cutoff must lie in [1, 512]");
    require(mass2 > 0.0, "squared mass must be positive");
    switch (g) {
        case T43Graph::divergent_tadpole:
            // the melonic self-contraction frees the two transverse colors
            return tadpole_sum_2d(cutoff, 0.0, mass2);
        case T43Graph::convergent_tadpole:
            // the other contraction frees a single color line
            return tadpole_sum_1d(cutoff, 0.0, mass2);
        case T43Graph::vacuum_linear: {
            // sum_n [sum_{a,b} C(n,a,b)]^2
            double s = 0.0;
            for (int n = -cutoff; n <= cutoff; ++n) {
                double inner =
                    tadpole_sum_2d(cutoff, static_cast<double>(n) * n, mass2);
                s += inner * inner;
            }
            return s;
        }
        case T43Graph::vacuum_log: {
            // sum_{a,b} [sum_n C(n,a,b)]^2
            double s = 0.0;
            for (int a = -cutoff; a <= cutoff; ++a)
                for (int b = -cutoff; b <= cutoff; ++b) {
                    double shift = static_cast<double>(a) * a +
                                   static_cast<double>(b) * b;
                    double inner = tadpole_sum_1d(cutoff, shift, mass2);
                    s += inner * inner;
                }
            return s;
        }
    }
    throw validation_error("unknown graph");
}

PowerCountReport power_count_sweep(T43Graph g, const std::vector<int>& cutoffs,
                                   double mass2) {
    require(cutoffs.size() >= 3, "need at least three cutoffs to see a trend");
    for (std::size_t i = 0; i + 1 < cutoffs.size(); ++i)
        require(cutoffs[i] < cutoffs[i + 1], "cutoffs must increase");

    PowerCountReport rep;
    rep.graph = g;
    rep.expected = expected_growth(g);
    rep.cutoffs = cutoffs;
    std::vector<double> xs_log, xs_lin;
    for (int c : cutoffs) {
        rep.values.push_back(t43_graph_value(g, c, mass2));
        xs_log.push_back(std::log(static_cast<double>(c)));
        xs_lin.push_back(static_cast<double>(c));
    }
    LineFit lf = fit_line(xs_log, rep.values);
    rep.log_fit_slope = lf.slope;
    rep.log_fit_residual = lf.residual;
    LineFit nf = fit_line(xs_lin, rep.values);
    rep.linear_fit_slope = nf.slope;
    rep.linear_fit_residual = nf.residual;
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i) {
        double d = std::abs(rep.values[i + 1] - rep.values[i]);
        rep.max_difference = std::max(rep.max_difference, d);
        rep.last_difference = d;
    }
    return rep;
}

}  // namespace cft::tensor
