#pragma once

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cft::cli {

using Json = nlohmann::json;

// bad flags, unknown commands, malformed manifests; exit code 1
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;
    Json params = Json::object();
    std::uint64_t seed = 1;
    std::string out;                       // empty = stdout only
    std::size_t budget = 200000;
    bool accept_exponential_cost = false;
    bool csv = false;
};

// JSON manifest: {"command": ..., "params": {...}, "seed": ..., "out": ...,
// "budget": ..., "accept_exponential_cost": ..., "csv": ...}
ExperimentConfig load_config(const std::string& path);

struct ReportBundle {
    int schema_version = 1;
    std::string command;
    std::uint64_t seed = 0;
    std::size_t budget_used = 0;
    double wall_ms = 0.0;
    Json records = Json::array();
    Json summary = Json::object();
};

std::vector<std::string> list_commands();

ReportBundle run(const ExperimentConfig& config);

// one JSON object per line: meta, then records, then the summary
std::string to_json_lines(const ReportBundle& b);

// flat projection of the records; nested values are dumped as JSON strings
std::string to_csv(const ReportBundle& b);

// relative paths land in the default output directory when one is set
std::string resolve_out_path(const std::string& out, const char* default_dir);

// writes the report (and optionally its CSV projection) honoring CFT_OUT_DIR
void write_report(const ReportBundle& b, const ExperimentConfig& config);

}  // namespace cft::cli
