#include "cft/errors.hpp"
#include "cft/run.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

const char* kind_name(cft::error_kind k) {
    switch (k) {
        case cft::error_kind::validation: return "validation";
        case cft::error_kind::size_limit: return "size-limit";
        case cft::error_kind::numeric: return "numeric";
        case cft::error_kind::singularity: return "singularity";
    }
    return "unknown";
}

int kind_exit_code(cft::error_kind k) {
    switch (k) {
        case cft::error_kind::validation: return 2;
        case cft::error_kind::size_limit: return 3;
        case cft::error_kind::numeric: return 4;
        case cft::error_kind::singularity: return 5;
    }
    return 4;
}

int fail(const std::string& kind, const std::string& message, int code) {
    cft::cli::Json err = {{"type", "error"}, {"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive field theory toolbox"};

    std::string command, config_path, out_path;
    std::uint64_t seed = 1;
    std::size_t budget = 200000;
    bool accept_exponential = false, csv = false, list = false;
    std::vector<std::string> param_flags;

    app.add_option("--command,-c", command, "experiment to run (see --list-commands)");
    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--seed", seed, "master seed for every random stream");
    app.add_option("--out,-o", out_path,
                   "report file (relative paths resolve under $CFT_OUT_DIR)");
    app.add_option("--budget", budget, "evaluation budget for stochastic commands");
    app.add_flag("--accept-exponential-cost", accept_exponential,
                 "allow factorial-size exhaustive enumerations");
    app.add_flag("--csv", csv, "also write a CSV projection next to --out");
    app.add_flag("--list-commands", list, "print the command catalog and exit");
    app.add_option("--param,-p", param_flags,
                   "module parameter as key=value (repeatable; value parsed as JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("usage", e.what(), 1);
    }

    if (list) {
        for (const auto& name : cft::cli::list_commands()) std::cout << name << "\n";
        return 0;
    }

    try {
        cft::cli::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = cft::cli::load_config(config_path);
        if (app.count("--command") > 0) cfg.command = command;
        if (app.count("--seed") > 0) cfg.seed = seed;
        if (app.count("--out") > 0) cfg.out = out_path;
        if (app.count("--budget") > 0) cfg.budget = budget;
        if (app.count("--accept-exponential-cost") > 0)
            cfg.accept_exponential_cost = accept_exponential;
        if (app.count("--csv") > 0) cfg.csv = csv;
        for (const auto& kv : param_flags) {
            auto pos = kv.find('=');
            if (pos == std::string::npos || pos == 0)
                throw cft::cli::usage_error("--param expects key=value, got '" + kv + "'");
            std::string key = kv.substr(0, pos);
            std::string raw = kv.substr(pos + 1);
            cft::cli::Json value = cft::cli::Json::parse(raw, nullptr, false);
            if (value.is_discarded()) value = raw;
            cfg.params[key] = value;
        }
        if (cfg.command.empty())
            throw cft::cli::usage_error("no command given (see --list-commands)");

        cft::cli::ReportBundle rep = cft::cli::run(cfg);
        std::cout << cft::cli::to_json_lines(rep);
        cft::cli::write_report(rep, cfg);
        return 0;
    } catch (const cft::cli::usage_error& e) {
        return fail("usage", e.what(), 1);
    } catch (const cft::error& e) {
        return fail(kind_name(e.kind()), e.what(), kind_exit_code(e.kind()));
    }
}
