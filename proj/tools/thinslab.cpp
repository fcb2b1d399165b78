#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "thinslab/error.hpp"
#include "thinslab/harness.hpp"

namespace {

// Flags that map one-to-one onto config keys.
const char* const kOptionKeys[] = {"scenario", "n_points", "period", "dim",        "s",         "Z",
                                   "Ns",       "variant",  "reference", "seed",   "output_dir", "norm_points",
                                   "max_thickness"};

void add_experiment_options(CLI::App* cmd, std::string& config_file, std::map<std::string, std::string>& flags) {
    cmd->add_option("--config", config_file, "flat key = value config file; flags override it");
    for (const char* key : kOptionKeys) cmd->add_option(std::string("--") + key, flags[key]);
}

thinslab::ExperimentConfig build_config(const std::string& config_file, const std::map<std::string, std::string>& flags,
                                        CLI::App* cmd) {
    thinslab::ExperimentConfig config;
    if (!config_file.empty()) thinslab::load_config_file(config, config_file);
    for (const auto& [key, value] : flags)
        if (cmd->count("--" + key) > 0) thinslab::set_option(config, key, value);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thin-slab propagator experiments"};
    app.set_version_flag("--version", std::string("thinslab ") + thinslab::kVersion);
    app.require_subcommand(1);

    std::string run_config;
    std::map<std::string, std::string> run_flags;
    CLI::App* run = app.add_subcommand("run", "run a convergence study, norm sweep and property suite");
    add_experiment_options(run, run_config, run_flags);

    bool list_json = false;
    CLI::App* list = app.add_subcommand("list", "list registered scenarios");
    list->add_flag("--json", list_json, "emit JSON");

    std::string check_config;
    std::map<std::string, std::string> check_flags;
    CLI::App* check = app.add_subcommand("check", "check the admissibility of a scenario's symbol");
    add_experiment_options(check, check_config, check_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : thinslab::kExitConfig;
    }

    try {
        if (*list) {
            thinslab::list_scenarios(std::cout, list_json);
            return thinslab::kExitOk;
        }
        if (*run) return thinslab::run(build_config(run_config, run_flags, run), std::cout, std::cerr);
        return thinslab::check(build_config(check_config, check_flags, check), std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << thinslab::error_json(e) << '\n';
        return thinslab::exit_code_for(e);
    }
}
