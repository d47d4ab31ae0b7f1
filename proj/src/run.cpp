#include "cft/run.hpp"

#include "cft/borel.hpp"
#include "cft/colored_tree.hpp"
#include "cft/errors.hpp"
#include "cft/exact.hpp"
#include "cft/formulas.hpp"
#include "cft/graph.hpp"
#include "cft/ics.hpp"
#include "cft/invariants.hpp"
#include "cft/jungle.hpp"
#include "cft/lve.hpp"
#include "cft/mlve.hpp"
#include "cft/propagator.hpp"
#include "cft/rng.hpp"
#include "cft/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace cft::cli {

namespace {

using Complex = std::complex<double>;

double get_double(const Json& p, const std::string& key, double def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_number()) throw usage_error("parameter '" + key + "' must be a number");
    return p[key].get<double>();
}

int get_int(const Json& p, const std::string& key, int def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_number_integer())
        throw usage_error("parameter '" + key + "' must be an integer");
    return p[key].get<int>();
}

std::vector<int> get_int_array(const Json& p, const std::string& key,
                               std::vector<int> def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_array()) throw usage_error("parameter '" + key + "' must be an array");
    std::vector<int> out;
    for (const auto& v : p[key]) {
        if (!v.is_number_integer())
            throw usage_error("parameter '" + key + "' must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

std::string rational_string(const BigRational& q) {
    return q.numerator().str() + "/" + q.denominator().str();
}

const char* method_name(lve::eval_method m) {
    switch (m) {
        case lve::eval_method::quadrature: return "quadrature";
        case lve::eval_method::monte_carlo: return "monte-carlo";
        case lve::eval_method::closed_form_limit: return "closed-form";
    }
    return "unknown";
}

const char* graph_name(tensor::T43Graph g) {
    switch (g) {
        case tensor::T43Graph::divergent_tadpole: return "divergent-tadpole";
        case tensor::T43Graph::convergent_tadpole: return "convergent-tadpole";
        case tensor::T43Graph::vacuum_linear: return "vacuum-linear";
        case tensor::T43Graph::vacuum_log: return "vacuum-log";
    }
    return "unknown";
}

const char* growth_name(tensor::Growth g) {
    switch (g) {
        case tensor::Growth::bounded: return "bounded";
        case tensor::Growth::logarithmic: return "logarithmic";
        case tensor::Growth::linear: return "linear";
    }
    return "unknown";
}

void cmd_forest_verify(const ExperimentConfig& cfg, ReportBundle& rep) {
    int n = get_int(cfg.params, "n", 3);
    int trials = get_int(cfg.params, "trials", 5);
    double scale = get_double(cfg.params, "scale", 0.3);
    double quad_tol = get_double(cfg.params, "quad_tol", 1e-10);
    require(trials >= 1 && trials <= 10000, "trials must lie in [1, 10000]");
    double max_abs = 0.0, max_rel = 0.0;
    int forests = 0;
    for (int t = 0; t < trials; ++t) {
        auto gen = substream(cfg.seed, t);
        std::uniform_real_distribution<double> unif(-scale, scale);
        Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                couplings(i, j) = couplings(j, i) = unif(gen);
        comb::ForestFormulaReport r = comb::forest_formula_verify(n, couplings, quad_tol);
        forests = r.forest_count;
        max_abs = std::max(max_abs, r.abs_residual);
        max_rel = std::max(max_rel, r.rel_residual);
        rep.records.push_back({{"trial", t},
                               {"lhs", r.lhs},
                               {"rhs", r.rhs},
                               {"abs_residual", r.abs_residual},
                               {"rel_residual", r.rel_residual},
                               {"forest_count", r.forest_count}});
    }
    rep.summary = {{"n", n},
                   {"trials", trials},
                   {"forest_count", forests},
                   {"max_abs_residual", max_abs},
                   {"max_rel_residual", max_rel}};
}

void cmd_weights(const ExperimentConfig& cfg, ReportBundle& rep) {
    int vertices = get_int(cfg.params, "vertices", 3);
    comb::LabeledGraph g;
    if (cfg.params.contains("edges")) {
        if (!cfg.params["edges"].is_array())
            throw usage_error("parameter 'edges' must be an array of pairs");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : cfg.params["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw usage_error("parameter 'edges' must hold [u, v] pairs");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        g = comb::make_graph(vertices, std::move(edges));
    } else {
        g = comb::complete_graph(vertices);
    }
    comb::WeightLimits limits;
    limits.accept_exponential_cost = cfg.accept_exponential_cost;
    BigRational sum(0);
    bool all_match = true;
    auto trees = comb::enumerate_spanning_trees(g);
    for (const auto& tree : trees) {
        comb::WeightResult exact = comb::tree_weight_exact(g, tree, limits);
        BigRational integral = comb::tree_weight_integral(g, tree);
        bool match = exact.value() == integral;
        all_match = all_match && match;
        sum += exact.value();
        rep.records.push_back({{"tree", tree.edge_ids},
                               {"weight", rational_string(exact.value())},
                               {"integral", rational_string(integral)},
                               {"match", match}});
    }
    rep.summary = {{"vertices", vertices},
                   {"edges", g.edge_count()},
                   {"trees", trees.size()},
                   {"weight_sum", rational_string(sum)},
                   {"sum_is_one", sum == BigRational(1)},
                   {"all_match", all_match}};
}

void cmd_jungle_verify(const ExperimentConfig& cfg, ReportBundle& rep) {
    int tree_n_max = get_int(cfg.params, "tree_n_max", 6);
    int jungle_n_max = get_int(cfg.params, "jungle_n_max", 4);
    int m = get_int(cfg.params, "m", 2);
    require(m >= 1 && m <= 4, "jungle depth must lie in [1, 4]");
    bool all_match = true;
    auto ipow = [](long long base, int exp) {
        long long r = 1;
        for (int k = 0; k < exp; ++k) r *= base;
        return r;
    };
    for (int n = 1; n <= tree_n_max; ++n) {
        auto trees = mlve::enumerate_two_level_trees(n);
        long long expected = n >= 2 ? (1LL << (n - 1)) * ipow(n, n - 2) : 1LL;
        bool match = static_cast<long long>(trees.size()) == expected;
        all_match = all_match && match;
        rep.records.push_back({{"kind", "two-level-trees"},
                               {"n", n},
                               {"count", trees.size()},
                               {"expected", expected},
                               {"match", match}});
    }
    for (int n = 2; n <= jungle_n_max; ++n) {
        auto jungles = comb::enumerate_jungles(n, m);
        long long expected = 0;
        for (const auto& f : comb::enumerate_forests_complete(n))
            expected += ipow(m, f.size());
        bool match = static_cast<long long>(jungles.size()) == expected;
        all_match = all_match && match;
        rep.records.push_back({{"kind", "jungles"},
                               {"n", n},
                               {"m", m},
                               {"count", jungles.size()},
                               {"expected", expected},
                               {"match", match}});
    }
    rep.summary = {{"all_match", all_match}};
}

void cmd_borel_check(const ExperimentConfig& cfg, ReportBundle& rep) {
    double z = get_double(cfg.params, "z", -0.03);
    int n = get_int(cfg.params, "N", 1);
    int n_min = get_int(cfg.params, "n_min", 2);
    int n_max = get_int(cfg.params, "n_max", 6);
    require(n > 0, "N must be positive");
    lve::ModelPoint point = lve::make_point(Complex{z, 0.0}, static_cast<unsigned>(n));
    std::vector<borel::RemainderSample> samples;
    for (int order = n_min; order <= n_max; ++order) {
        Complex r = lve::taylor_remainder(point, static_cast<unsigned>(order));
        samples.push_back({order, Complex{z, 0.0}, r});
        rep.records.push_back({{"order", order},
                               {"remainder_re", r.real()},
                               {"remainder_im", r.imag()},
                               {"modulus", std::abs(r)}});
    }
    borel::RemainderFit fit = borel::remainder_fit(samples);
    rep.summary = {{"z", z},          {"N", n},
                   {"K", fit.K},      {"sigma", fit.sigma},
                   {"residual", fit.residual}, {"n_min", fit.n_min},
                   {"n_max", fit.n_max}};
}

void cmd_lve_sum(const ExperimentConfig& cfg, ReportBundle& rep) {
    Complex z{get_double(cfg.params, "z", -0.03),
              get_double(cfg.params, "z_im", 0.0)};
    int n = get_int(cfg.params, "N", 4);
    int n_max = get_int(cfg.params, "n_max", 6);
    require(n > 0, "N must be positive");
    require(n_max >= 0, "n_max must be nonnegative");
    lve::ModelPoint point = lve::make_point(z, static_cast<unsigned>(n));
    lve::PartialSum sum = lve::lve_partial_sum(point, static_cast<unsigned>(n_max),
                                               cfg.budget, cfg.seed);
    struct OrderSlot {
        int trees = 0;
        Complex value{0.0, 0.0};
        double error = 0.0;
        std::string method;
    };
    std::map<int, OrderSlot> by_order;
    for (const auto& term : sum.terms) {
        OrderSlot& slot = by_order[term.order];
        slot.trees += 1;
        slot.value += term.amplitude.value;
        slot.error += term.amplitude.error;
        const char* name = method_name(term.amplitude.method);
        if (slot.method.empty())
            slot.method = name;
        else if (slot.method != name)
            slot.method = "mixed";
    }
    for (const auto& [order, slot] : by_order)
        rep.records.push_back({{"order", order},
                               {"trees", slot.trees},
                               {"value_re", slot.value.real()},
                               {"value_im", slot.value.imag()},
                               {"error", slot.error},
                               {"method", slot.method}});
    rep.summary = {{"g2_re", sum.value.real()},
                   {"g2_im", sum.value.imag()},
                   {"stat_error", sum.stat_error},
                   {"tail_bound", sum.tail_bound},
                   {"n_max", n_max}};
    Complex reference = lve::catalan_g2(z);
    rep.summary["catalan_g2_re"] = reference.real();
    rep.summary["catalan_g2_im"] = reference.imag();
    if (z.imag() == 0.0 && z.real() > -0.25 && z.real() <= 0.0 && n <= 64) {
        double oracle = lve::oracle_g2(point);
        double discrepancy = std::abs(sum.value - Complex{oracle, 0.0});
        rep.summary["oracle_g2"] = oracle;
        rep.summary["oracle_discrepancy"] = discrepancy;
        rep.summary["within_tail_bound"] =
            discrepancy <= sum.tail_bound + 3.0 * sum.stat_error;
    }
}

void cmd_lve_oracle(const ExperimentConfig& cfg, ReportBundle& rep) {
    double z = get_double(cfg.params, "z", -0.03);
    int n = get_int(cfg.params, "N", 4);
    require(n > 0, "N must be positive");
    lve::ModelPoint point = lve::make_point(Complex{z, 0.0}, static_cast<unsigned>(n));
    double g2 = lve::oracle_g2(point);
    double radial = lve::radial_log_z(z, static_cast<unsigned>(n));
    double tau = lve::tau_log_z(z, static_cast<unsigned>(n));
    double sd = lve::schwinger_dyson_residual(point);
    rep.records.push_back({{"z", z},
                           {"N", n},
                           {"g2", g2},
                           {"radial_log_z", radial},
                           {"tau_log_z", tau},
                           {"log_z_gap", std::abs(radial - tau)},
                           {"schwinger_dyson_residual", sd}});
    rep.summary = rep.records.back();
}

void cmd_mean_cut(const ExperimentConfig& cfg, ReportBundle& rep) {
    double z = get_double(cfg.params, "z", 0.05);
    int n = get_int(cfg.params, "N", 4);
    int n_max = get_int(cfg.params, "n_max", 5);
    require(n > 0, "N must be positive");
    lve::MeanCutResult r = lve::mean_cut_functions(
        z, static_cast<unsigned>(n), static_cast<unsigned>(n_max), cfg.budget,
        cfg.seed);
    rep.records.push_back({{"z", z},
                           {"N", n},
                           {"mean", r.mean},
                           {"cut", r.cut},
                           {"mean_error", r.mean_error},
                           {"cut_error", r.cut_error},
                           {"tail_bound", r.tail_bound}});
    rep.summary = rep.records.back();
}

void cmd_mlve_demo(const ExperimentConfig& cfg, ReportBundle& rep) {
    double lambda = get_double(cfg.params, "lambda", 0.2);
    int m = get_int(cfg.params, "M", 2);
    int j_max = get_int(cfg.params, "j_max", 3);
    int n_max = get_int(cfg.params, "n_max", 2);
    mlve::SliceModel model =
        mlve::make_slice_model(m, 1, j_max, Complex{lambda, 0.0});
    std::vector<Complex> orders =
        mlve::mlve_order_terms(model, n_max, cfg.budget);
    Complex total{0.0, 0.0};
    for (std::size_t k = 0; k < orders.size(); ++k) {
        total += orders[k];
        rep.records.push_back({{"order", k + 1},
                               {"value_re", orders[k].real()},
                               {"value_im", orders[k].imag()}});
    }
    rep.summary = {{"lambda", lambda}, {"M", m},
                   {"j_max", j_max},   {"n_max", n_max},
                   {"slices", model.N},
                   {"sum_re", total.real()}, {"sum_im", total.imag()}};
    if (model.N <= (1ull << 20)) {
        Complex oracle = mlve::oracle_logZ(model);
        rep.summary["oracle_re"] = oracle.real();
        rep.summary["oracle_im"] = oracle.imag();
        rep.summary["residual"] = std::abs(total - oracle);
        rep.summary["residual_order1"] = std::abs(orders[0] - oracle);
    }
}

void cmd_logz_oracle(const ExperimentConfig& cfg, ReportBundle& rep) {
    Complex lambda{get_double(cfg.params, "lambda", 0.5),
                   get_double(cfg.params, "lambda_im", 0.0)};
    int m = get_int(cfg.params, "M", 2);
    int j_max = get_int(cfg.params, "j_max", 6);
    mlve::SliceModel model = mlve::make_slice_model(m, 1, j_max, lambda);
    Complex lz = mlve::oracle_logZ(model);
    rep.records.push_back({{"lambda_re", lambda.real()},
                           {"lambda_im", lambda.imag()},
                           {"M", m},
                           {"j_max", j_max},
                           {"slices", model.N},
                           {"logz_re", lz.real()},
                           {"logz_im", lz.imag()}});
    rep.summary = rep.records.back();
}

void cmd_invariants(const ExperimentConfig& cfg, ReportBundle& rep) {
    int d = get_int(cfg.params, "d", 4);
    auto colors = tensor::enumerate_quartic_invariants(d);
    int melonic = 0;
    for (const auto& c : colors) {
        melonic += c.melonic() ? 1 : 0;
        rep.records.push_back({{"members", c.members},
                               {"size", c.size()},
                               {"melonic", c.melonic()},
                               {"complement", c.complement()}});
    }
    rep.summary = {{"d", d},
                   {"count", colors.size()},
                   {"melonic_count", melonic},
                   {"necklace_count", colors.size() - melonic}};
}

void cmd_gaussian_check(const ExperimentConfig& cfg, ReportBundle& rep) {
    int d = get_int(cfg.params, "d", 3);
    int n = get_int(cfg.params, "N", 3);
    int samples = get_int(cfg.params, "samples", 2000);
    require(samples >= 2, "need at least two samples");
    tensor::MomentReport r = tensor::gaussian_moment_check(
        d, n, static_cast<std::size_t>(samples), cfg.seed);
    double max_sigmas = r.quad_err > 0.0
        ? std::abs(r.quad_mean - r.quad_exact) / r.quad_err
        : 0.0;
    rep.records.push_back({{"kind", "quadratic"},
                           {"mean", r.quad_mean},
                           {"err", r.quad_err},
                           {"exact", r.quad_exact},
                           {"sigmas_off", max_sigmas}});
    for (const auto& im : r.invariants) {
        double off = im.err > 0.0 ? std::abs(im.mean - im.exact) / im.err : 0.0;
        max_sigmas = std::max(max_sigmas, off);
        rep.records.push_back({{"kind", "invariant"},
                               {"members", im.color.members},
                               {"mean", im.mean},
                               {"err", im.err},
                               {"exact", im.exact},
                               {"sigmas_off", off}});
    }
    rep.summary = {{"d", d},
                   {"N", n},
                   {"samples", samples},
                   {"max_sigmas_off", max_sigmas},
                   {"within_3_sigma", max_sigmas <= 3.0}};
}

void cmd_power_count(const ExperimentConfig& cfg, ReportBundle& rep) {
    std::vector<int> cutoffs =
        get_int_array(cfg.params, "cutoffs", {8, 16, 32, 64});
    double mass2 = get_double(cfg.params, "mass2", 1.0);
    const tensor::T43Graph graphs[] = {
        tensor::T43Graph::divergent_tadpole, tensor::T43Graph::convergent_tadpole,
        tensor::T43Graph::vacuum_linear, tensor::T43Graph::vacuum_log};
    Json flags = Json::object();
    bool all_ok = true;
    for (tensor::T43Graph g : graphs) {
        tensor::PowerCountReport r = tensor::power_count_sweep(g, cutoffs, mass2);
        rep.records.push_back({{"graph", graph_name(g)},
                               {"expected", growth_name(r.expected)},
                               {"values", r.values},
                               {"log_fit_slope", r.log_fit_slope},
                               {"log_fit_residual", r.log_fit_residual},
                               {"linear_fit_slope", r.linear_fit_slope},
                               {"linear_fit_residual", r.linear_fit_residual},
                               {"max_difference", r.max_difference},
                               {"last_difference", r.last_difference}});
        bool ok = true;
        switch (r.expected) {
            case tensor::Growth::logarithmic: ok = r.log_fit_residual < 0.10; break;
            case tensor::Growth::linear: ok = r.linear_fit_residual < 0.10; break;
            case tensor::Growth::bounded:
                ok = r.last_difference < 0.3 * r.max_difference;
                break;
        }
        flags[graph_name(g)] = ok;
        all_ok = all_ok && ok;
    }
    rep.summary = {{"cutoffs", cutoffs}, {"checks", flags}, {"all_ok", all_ok}};
}

void cmd_ics_demo(const ExperimentConfig& cfg, ReportBundle& rep) {
    int side = get_int(cfg.params, "side", 2);
    int max_order = get_int(cfg.params, "order", 2);
    int samples = get_int(cfg.params, "samples", 50);
    Complex lambda{get_double(cfg.params, "lambda", 0.05),
                   get_double(cfg.params, "lambda_im", 0.0)};
    require(max_order >= 1, "order must be positive");
    require(samples >= 1, "need at least one sample");
    int total_violations = 0;
    double k_constant = 1.0;
    for (int n = 1; n <= max_order; ++n) {
        std::vector<std::tuple<int, int, std::vector<int>>> edges;
        for (int e = 0; e < n; ++e) edges.emplace_back(e, e + 1, std::vector<int>{1 + e % 3});
        tensor::ColoredTree path = tensor::make_colored_tree(3, n + 1, edges);
        std::vector<int> walk = tensor::boundary_walk(path);
        std::vector<int> res, conj;
        for (std::size_t i = 0; i < walk.size(); ++i)
            (i % 2 == 0 ? res : conj).push_back(walk[i]);
        const struct {
            const char* name;
            std::vector<int> r, c;
        } dressings[] = {{"single", {walk[0]}, {walk[walk.size() / 2]}},
                         {"alternating", res, conj}};
        for (const auto& dress : dressings) {
            tensor::ResolventDressedTree t =
                tensor::make_dressed_tree(path, dress.r, dress.c);
            tensor::IcsReport r = tensor::ics_verify(
                t, side, lambda, static_cast<std::size_t>(samples), cfg.seed);
            total_violations += r.violations;
            k_constant = r.k_constant;
            rep.records.push_back({{"order", n},
                                   {"dressing", dress.name},
                                   {"violations", r.violations},
                                   {"bound", r.bound},
                                   {"sup_undressed", r.sup_undressed},
                                   {"max_amplitude", r.max_amplitude},
                                   {"max_ratio", r.max_ratio}});
        }
    }
    std::vector<double> q = tensor::rarefaction_trace(max_order, 2 * max_order,
                                                      60 * max_order);
    bool monotone = true;
    for (std::size_t r = 0; r + 1 < q.size(); ++r)
        monotone = monotone &&
                   q[r + 1] <= q[r] * (1.0 - 1.0 / (2.0 * max_order)) + 1e-12;
    rep.summary = {{"side", side},
                   {"samples", samples},
                   {"k_constant", k_constant},
                   {"total_violations", total_violations},
                   {"rarefaction_monotone", monotone},
                   {"rarefaction_final_q", q.back()}};
}

void cmd_graphs_d0(const ExperimentConfig& cfg, ReportBundle& rep) {
    int orders = get_int(cfg.params, "orders", 10);
    require(orders >= 1 && orders <= 29, "orders must lie in [1, 29]");
    borel::PowerSeries series =
        borel::d0_phi4_series(static_cast<unsigned>(orders) + 1);
    double last_ratio_over_n = 0.0;
    for (int n = 0; n <= orders; ++n) {
        BigRational a = borel::d0_phi4_coefficient_exact(static_cast<unsigned>(n));
        Json record = {{"n", n},
                       {"coefficient", rational_string(a)},
                       {"value", series.coefficients[n].real()},
                       {"graphs", odd_double_factorial(4L * n - 1).str()}};
        if (n >= 1) {
            double ratio = std::abs(series.coefficients[n + 1].real() /
                                    series.coefficients[n].real());
            record["ratio"] = ratio;
            record["ratio_over_n"] = ratio / n;
            last_ratio_over_n = ratio / n;
        }
        rep.records.push_back(std::move(record));
    }
    rep.summary = {{"orders", orders},
                   {"last_ratio_over_n", last_ratio_over_n}};
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buffer.str());  // rejects trailing garbage
    } catch (const Json::exception& e) {
        throw usage_error("malformed config file: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw usage_error("config file must hold a JSON object");
    ExperimentConfig cfg;
    if (doc.contains("command")) {
        if (!doc["command"].is_string())
            throw usage_error("config 'command' must be a string");
        cfg.command = doc["command"].get<std::string>();
    }
    if (doc.contains("params")) {
        if (!doc["params"].is_object())
            throw usage_error("config 'params' must be an object");
        cfg.params = doc["params"];
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            throw usage_error("config 'seed' must be an integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw usage_error("config 'out' must be a string");
        cfg.out = doc["out"].get<std::string>();
    }
    if (doc.contains("budget")) {
        if (!doc["budget"].is_number_integer() || doc["budget"].get<long long>() < 0)
            throw usage_error("config 'budget' must be a nonnegative integer");
        cfg.budget = doc["budget"].get<std::size_t>();
    }
    if (doc.contains("accept_exponential_cost")) {
        if (!doc["accept_exponential_cost"].is_boolean())
            throw usage_error("config 'accept_exponential_cost' must be a boolean");
        cfg.accept_exponential_cost = doc["accept_exponential_cost"].get<bool>();
    }
    if (doc.contains("csv")) {
        if (!doc["csv"].is_boolean()) throw usage_error("config 'csv' must be a boolean");
        cfg.csv = doc["csv"].get<bool>();
    }
    return cfg;
}

std::vector<std::string> list_commands() {
    return {"forest-verify", "weights",   "jungle-verify", "borel-check",
            "lve-sum",       "lve-oracle", "mean-cut",      "mlve-demo",
            "logz-oracle",   "invariants", "gaussian-check", "power-count",
            "ics-demo",      "graphs-d0"};
}

ReportBundle run(const ExperimentConfig& config) {
    ReportBundle rep;
    rep.command = config.command;
    rep.seed = config.seed;
    rep.budget_used = config.budget;
    auto started = std::chrono::steady_clock::now();

    if (config.command == "forest-verify")
        cmd_forest_verify(config, rep);
    else if (config.command == "weights")
        cmd_weights(config, rep);
    else if (config.command == "jungle-verify")
        cmd_jungle_verify(config, rep);
    else if (config.command == "borel-check")
        cmd_borel_check(config, rep);
    else if (config.command == "lve-sum")
        cmd_lve_sum(config, rep);
    else if (config.command == "lve-oracle")
        cmd_lve_oracle(config, rep);
    else if (config.command == "mean-cut")
        cmd_mean_cut(config, rep);
    else if (config.command == "mlve-demo")
        cmd_mlve_demo(config, rep);
    else if (config.command == "logz-oracle")
        cmd_logz_oracle(config, rep);
    else if (config.command == "invariants")
        cmd_invariants(config, rep);
    else if (config.command == "gaussian-check")
        cmd_gaussian_check(config, rep);
    else if (config.command == "power-count")
        cmd_power_count(config, rep);
    else if (config.command == "ics-demo")
        cmd_ics_demo(config, rep);
    else if (config.command == "graphs-d0")
        cmd_graphs_d0(config, rep);
    else
        throw usage_error("unknown command: '" + config.command +
                          "' (see --list-commands)");

    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    return rep;
}

std::string to_json_lines(const ReportBundle& b) {
    std::ostringstream out;
    Json meta = {{"type", "meta"},
                 {"schema_version", b.schema_version},
                 {"command", b.command},
                 {"seed", b.seed},
                 {"budget", b.budget_used},
                 {"wall_ms", b.wall_ms}};
    out << meta.dump() << "\n";
    for (const auto& r : b.records) {
        Json line = r;
        line["type"] = "record";
        out << line.dump() << "\n";
    }
    Json summary = b.summary;
    summary["type"] = "summary";
    out << summary.dump() << "\n";
    return out.str();
}

namespace {

std::string csv_cell(const Json& v) {
    std::string raw;
    if (v.is_string())
        raw = v.get<std::string>();
    else
        raw = v.dump();
    bool quote = raw.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return raw;
    std::string escaped = "\"";
    for (char c : raw) {
        if (c == '"') escaped += '"';
        escaped += c;
    }
    return escaped + "\"";
}

}  // namespace

std::string to_csv(const ReportBundle& b) {
    std::vector<std::string> columns;
    for (const auto& r : b.records)
        for (const auto& [key, value] : r.items())
            if (std::find(columns.begin(), columns.end(), key) == columns.end())
                columns.push_back(key);
    std::sort(columns.begin(), columns.end());
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& r : b.records) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << (i ? "," : "");
            if (r.contains(columns[i])) out << csv_cell(r[columns[i]]);
        }
        out << "\n";
    }
    return out.str();
}

std::string resolve_out_path(const std::string& out, const char* default_dir) {
    if (out.empty() || out.front() == '/' || default_dir == nullptr ||
        *default_dir == '\0')
        return out;
    std::string dir = default_dir;
    if (dir.back() != '/') dir += '/';
    return dir + out;
}

void write_report(const ReportBundle& b, const ExperimentConfig& config) {
    if (config.out.empty()) return;
    std::string path = resolve_out_path(config.out, std::getenv("CFT_OUT_DIR"));
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write report to: " + path);
    out << to_json_lines(b);
    if (config.csv) {
        std::ofstream csv(path + ".csv");
        if (!csv) throw usage_error("cannot write report to: " + path + ".csv");
        csv << to_csv(b);
    }
}

}  // namespace cft::cli
