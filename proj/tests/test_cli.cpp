#include "cft/errors.hpp"
#include "cft/mlve.hpp"
#include "cft/run.hpp"

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

using cft::cli::ExperimentConfig;
using cft::cli::Json;
using cft::cli::ReportBundle;

namespace {

ExperimentConfig make_config(const std::string& command, Json params = Json::object()) {
    ExperimentConfig cfg;
    cfg.command = command;
    cfg.params = std::move(params);
    return cfg;
}

// JSON lines minus the meta line, which carries the wall clock
std::string stable_tail(const ReportBundle& b) {
    std::string all = cft::cli::to_json_lines(b);
    return all.substr(all.find('\n') + 1);
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("command catalog is stable") {
    std::vector<std::string> expected = {
        "forest-verify", "weights",    "jungle-verify",  "borel-check", "lve-sum",
        "lve-oracle",    "mean-cut",   "mlve-demo",      "logz-oracle", "invariants",
        "gaussian-check", "power-count", "ics-demo",     "graphs-d0"};
    CHECK(cft::cli::list_commands() == expected);
    CHECK(cft::cli::list_commands().size() == 14);
}

TEST_CASE("unknown commands and bad parameters raise usage errors") {
    CHECK_THROWS_AS(cft::cli::run(make_config("no-such-command")), cft::cli::usage_error);
    CHECK_THROWS_AS(cft::cli::run(make_config("")), cft::cli::usage_error);
    CHECK_THROWS_AS(cft::cli::run(make_config("forest-verify", {{"n", "three"}})),
                    cft::cli::usage_error);
    CHECK_THROWS_AS(cft::cli::run(make_config("forest-verify", {{"scale", "big"}})),
                    cft::cli::usage_error);
    CHECK_THROWS_AS(cft::cli::run(make_config("power-count", {{"cutoffs", 7}})),
                    cft::cli::usage_error);
}

TEST_CASE("module errors pass through with their kind") {
    try {
        cft::cli::run(make_config("invariants", {{"d", 9}}));
        FAIL("expected a validation error");
    } catch (const cft::error& e) {
        CHECK(e.kind() == cft::error_kind::validation);
    }
    try {
        cft::cli::run(make_config("ics-demo", {{"order", 5}, {"samples", 1}}));
        FAIL("expected a size-limit error");
    } catch (const cft::error& e) {
        CHECK(e.kind() == cft::error_kind::size_limit);
    }
}

TEST_CASE("forest-verify reports seven forests on K3 with tiny residuals") {
    ReportBundle rep = cft::cli::run(make_config("forest-verify", {{"n", 3}, {"trials", 4}}));
    CHECK(rep.summary["forest_count"] == 7);
    CHECK(rep.records.size() == 4);
    CHECK(rep.summary["max_abs_residual"].get<double>() < 1e-8);
    for (const auto& r : rep.records) CHECK(r["forest_count"] == 7);
}

TEST_CASE("weights on K3 gives three trees of weight one third") {
    ReportBundle rep = cft::cli::run(make_config("weights", {{"vertices", 3}}));
    CHECK(rep.records.size() == 3);
    for (const auto& r : rep.records) {
        CHECK(r["weight"] == "1/3");
        CHECK(r["integral"] == "1/3");
        CHECK(r["match"] == true);
    }
    CHECK(rep.summary["weight_sum"] == "1/1");
    CHECK(rep.summary["sum_is_one"] == true);
    CHECK(rep.summary["all_match"] == true);
}

TEST_CASE("weights accepts an explicit edge list") {
    Json params = {{"vertices", 2}, {"edges", Json::array({Json::array({0, 1}),
                                                           Json::array({0, 1})})}};
    ReportBundle rep = cft::cli::run(make_config("weights", params));
    CHECK(rep.records.size() == 2);  // the two parallel edges are distinct trees
    CHECK(rep.summary["weight_sum"] == "1/1");
    CHECK_THROWS_AS(
        cft::cli::run(make_config("weights", {{"vertices", 2}, {"edges", 5}})),
        cft::cli::usage_error);
}

TEST_CASE("jungle-verify matches the closed-form counts") {
    ReportBundle rep = cft::cli::run(
        make_config("jungle-verify", {{"tree_n_max", 5}, {"jungle_n_max", 4}, {"m", 2}}));
    CHECK(rep.summary["all_match"] == true);
    bool saw_125 = false;
    for (const auto& r : rep.records) {
        CHECK(r["match"] == true);
        if (r["kind"] == "two-level-trees" && r["n"] == 5) {
            CHECK(r["count"] == 2000);
            saw_125 = true;
        }
    }
    CHECK(saw_125);
}

TEST_CASE("borel-check fits a finite envelope with small residual") {
    ReportBundle rep = cft::cli::run(
        make_config("borel-check", {{"z", -0.03}, {"N", 1}, {"n_min", 2}, {"n_max", 6}}));
    CHECK(rep.records.size() == 5);
    CHECK(rep.summary["K"].get<double>() > 0.0);
    CHECK(rep.summary["sigma"].get<double>() > 0.0);
    CHECK(rep.summary["residual"].get<double>() < 0.5);
    CHECK(std::isfinite(rep.summary["K"].get<double>()));
}

TEST_CASE("lve-sum agrees with the radial oracle inside the window") {
    ExperimentConfig cfg = make_config("lve-sum", {{"z", -0.03}, {"N", 4}, {"n_max", 4}});
    cfg.budget = 20000;
    cfg.seed = 2026;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.summary.contains("oracle_g2"));
    CHECK(rep.summary["within_tail_bound"] == true);
    CHECK(rep.summary["oracle_discrepancy"].get<double>() <
          rep.summary["tail_bound"].get<double>() +
              3.0 * rep.summary["stat_error"].get<double>());
    // per-order records cover 0..n_max with the Catalan tree counts
    CHECK(rep.records.size() == 5);
    CHECK(rep.records[0]["trees"] == 1);
    CHECK(rep.records[2]["trees"] == 2);
    CHECK(rep.records[4]["trees"] == 14);
}

TEST_CASE("lve-sum skips the oracle outside its window") {
    ExperimentConfig cfg = make_config("lve-sum", {{"z", -0.01}, {"z_im", 0.002},
                                                   {"N", 4}, {"n_max", 2}});
    cfg.budget = 5000;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(!rep.summary.contains("oracle_g2"));
    CHECK(rep.summary.contains("catalan_g2_re"));
}

TEST_CASE("lve-oracle reports consistent log Z representations") {
    ReportBundle rep = cft::cli::run(make_config("lve-oracle", {{"z", -0.03}, {"N", 4}}));
    CHECK(rep.summary["log_z_gap"].get<double>() < 1e-10);
    CHECK(rep.summary["schwinger_dyson_residual"].get<double>() < 1e-8);
    CHECK(rep.summary["g2"].get<double>() > 0.9);
    CHECK(rep.summary["g2"].get<double>() < 1.0);
}

TEST_CASE("mean-cut returns a positive mean and near-real cut") {
    ExperimentConfig cfg = make_config("mean-cut", {{"z", 0.05}, {"N", 4}, {"n_max", 4}});
    cfg.budget = 20000;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.summary["mean"].get<double>() > 1.0);
    CHECK(std::abs(rep.summary["cut"].get<double>()) <
          10.0 * rep.summary["cut_error"].get<double>() +
              rep.summary["tail_bound"].get<double>());
}

TEST_CASE("mlve-demo improves on the first order against the oracle") {
    ExperimentConfig cfg = make_config(
        "mlve-demo", {{"lambda", 0.2}, {"M", 2}, {"j_max", 3}, {"n_max", 2}});
    cfg.budget = 50000;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.records.size() == 2);
    CHECK(rep.summary.contains("oracle_re"));
    CHECK(rep.summary["residual"].get<double>() <
          rep.summary["residual_order1"].get<double>());
}

TEST_CASE("logz-oracle matches a direct model evaluation") {
    ReportBundle rep = cft::cli::run(
        make_config("logz-oracle", {{"lambda", 0.5}, {"M", 2}, {"j_max", 4}}));
    auto model = cft::mlve::make_slice_model(2, 1, 4, std::complex<double>{0.5, 0.0});
    std::complex<double> direct = cft::mlve::oracle_logZ(model);
    CHECK(rep.summary["logz_re"].get<double>() == doctest::Approx(direct.real()).epsilon(1e-14));
    CHECK(rep.summary["slices"] == 15);
}

TEST_CASE("invariants lists the seven rank-four invariants") {
    ReportBundle rep = cft::cli::run(make_config("invariants", {{"d", 4}}));
    CHECK(rep.records.size() == 7);
    CHECK(rep.summary["count"] == 7);
    CHECK(rep.summary["melonic_count"] == 4);
    CHECK(rep.summary["necklace_count"] == 3);
    CHECK(rep.records[0]["members"] == Json::array({1}));
    CHECK(rep.records[4]["members"] == Json::array({1, 2}));
}

TEST_CASE("gaussian-check stays within three sigma at a frozen seed") {
    ExperimentConfig cfg = make_config("gaussian-check",
                                       {{"d", 3}, {"N", 3}, {"samples", 800}});
    cfg.seed = 314159;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.summary["within_3_sigma"] == true);
    CHECK(rep.records.size() == 4);  // quadratic + three invariants
    CHECK(rep.records[0]["kind"] == "quadratic");
    CHECK(rep.records[0]["exact"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("power-count classifies all four graphs") {
    ReportBundle rep = cft::cli::run(make_config("power-count"));
    CHECK(rep.summary["all_ok"] == true);
    CHECK(rep.records.size() == 4);
    for (const auto& r : rep.records) CHECK(r["values"].size() == 4);
}

TEST_CASE("ics-demo finds no bound violations") {
    ExperimentConfig cfg = make_config("ics-demo", {{"order", 2}, {"samples", 20}});
    cfg.seed = 777;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.summary["total_violations"] == 0);
    CHECK(rep.summary["rarefaction_monotone"] == true);
    CHECK(rep.summary["rarefaction_final_q"].get<double>() < 1e-3);
    CHECK(rep.records.size() == 4);  // two dressings per order
}

TEST_CASE("graphs-d0 lists exact coefficients and the honest ratio") {
    ReportBundle rep = cft::cli::run(make_config("graphs-d0", {{"orders", 12}}));
    CHECK(rep.records.size() == 13);
    CHECK(rep.records[1]["coefficient"] == "-3/1");
    CHECK(rep.records[2]["coefficient"] == "105/2");
    CHECK(rep.records[1]["graphs"] == "3");
    CHECK(rep.records[2]["graphs"] == "105");
    CHECK(rep.records[3]["graphs"] == "10395");
    double r1 = rep.records[1]["ratio"].get<double>();
    CHECK(r1 == doctest::Approx(17.5));  // (4n+3)(4n+1)/(n+1) at n = 1
    double last = rep.summary["last_ratio_over_n"].get<double>();
    CHECK(last > 15.0);
    CHECK(last < 17.0);
}

TEST_CASE("reruns with one seed are bit-identical outside the meta line") {
    for (const char* command : {"gaussian-check", "lve-sum"}) {
        ExperimentConfig cfg = make_config(command);
        cfg.params["samples"] = 100;
        cfg.params["n_max"] = 3;
        cfg.budget = 5000;
        cfg.seed = 42;
        std::string a = stable_tail(cft::cli::run(cfg));
        std::string b = stable_tail(cft::cli::run(cfg));
        CHECK(a == b);
        CHECK(!a.empty());
    }
}

TEST_CASE("json lines carry typed meta, record, and summary rows") {
    ReportBundle rep = cft::cli::run(make_config("invariants", {{"d", 3}}));
    std::istringstream lines(cft::cli::to_json_lines(rep));
    std::string line;
    std::vector<std::string> types;
    while (std::getline(lines, line)) types.push_back(Json::parse(line)["type"]);
    CHECK(types.size() == 5);
    CHECK(types.front() == "meta");
    CHECK(types.back() == "summary");
    for (std::size_t i = 1; i + 1 < types.size(); ++i) CHECK(types[i] == "record");
}

TEST_CASE("csv projection has sorted headers and quoted cells") {
    ReportBundle rep;
    rep.records.push_back({{"b", 1}, {"a", "x,y"}});
    rep.records.push_back({{"a", "plain"}, {"c", 2.5}});
    std::string csv = cft::cli::to_csv(rep);
    std::istringstream lines(csv);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "a,b,c");
    CHECK(row1 == "\"x,y\",1,");
    CHECK(row2 == "plain,,2.5");
}

TEST_CASE("output paths resolve against the default directory") {
    CHECK(cft::cli::resolve_out_path("r.jsonl", "/tmp/reports") == "/tmp/reports/r.jsonl");
    CHECK(cft::cli::resolve_out_path("r.jsonl", "/tmp/reports/") == "/tmp/reports/r.jsonl");
    CHECK(cft::cli::resolve_out_path("/abs/r.jsonl", "/tmp/reports") == "/abs/r.jsonl");
    CHECK(cft::cli::resolve_out_path("r.jsonl", nullptr) == "r.jsonl");
    CHECK(cft::cli::resolve_out_path("r.jsonl", "") == "r.jsonl");
    CHECK(cft::cli::resolve_out_path("", "/tmp/reports") == "");
}

TEST_CASE("write_report round-trips through a file") {
    ExperimentConfig cfg = make_config("invariants", {{"d", 2}});
    cfg.out = temp_file("cft_cli_roundtrip.jsonl");
    cfg.csv = true;
    ReportBundle rep = cft::cli::run(cfg);
    cft::cli::write_report(rep, cfg);
    std::ifstream in(cfg.out);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == cft::cli::to_json_lines(rep));
    std::ifstream csv(cfg.out + ".csv");
    CHECK(csv.good());
    std::remove(cfg.out.c_str());
    std::remove((cfg.out + ".csv").c_str());
}

TEST_CASE("config files load, validate, and reject junk") {
    std::string path = temp_file("cft_cli_config.json");
    {
        std::ofstream out(path);
        out << R"({"command":"invariants","params":{"d":3},"seed":9,"budget":1000,)"
            << R"("accept_exponential_cost":true,"csv":true,"out":"x.jsonl"})";
    }
    ExperimentConfig cfg = cft::cli::load_config(path);
    CHECK(cfg.command == "invariants");
    CHECK(cfg.params["d"] == 3);
    CHECK(cfg.seed == 9);
    CHECK(cfg.budget == 1000);
    CHECK(cfg.accept_exponential_cost == true);
    CHECK(cfg.csv == true);
    CHECK(cfg.out == "x.jsonl");

    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(cft::cli::load_config(path), cft::cli::usage_error);
    {
        std::ofstream out(path);
        out << R"({"command":"invariants"} trailing junk)";
    }
    CHECK_THROWS_AS(cft::cli::load_config(path), cft::cli::usage_error);
    {
        std::ofstream out(path);
        out << R"({"seed":"high"})";
    }
    CHECK_THROWS_AS(cft::cli::load_config(path), cft::cli::usage_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(cft::cli::load_config(path), cft::cli::usage_error);
}

TEST_CASE("run echoes the command, seed, and budget into the bundle") {
    ExperimentConfig cfg = make_config("invariants", {{"d", 2}});
    cfg.seed = 555;
    cfg.budget = 123;
    ReportBundle rep = cft::cli::run(cfg);
    CHECK(rep.command == "invariants");
    CHECK(rep.seed == 555);
    CHECK(rep.budget_used == 123);
    CHECK(rep.schema_version == 1);
    CHECK(rep.wall_ms >= 0.0);
}
