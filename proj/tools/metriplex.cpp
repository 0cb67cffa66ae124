#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "metriplex/run.hpp"

using namespace metriplex;

int main(int argc, char** argv)
{
    CLI::App app{"metriplex: thermodynamic bracket verification runner"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    double h = 0.0, t_end = 0.0;
    int stride = 1;
    std::uint64_t seed = 0;
    std::string scenario, out;
    auto* run_cmd = app.add_subcommand("run", "integrate a scenario and run verification suites");
    run_cmd->set_help_flag("--help", "print this help and exit");
    run_cmd->add_option("config", config_path, "JSON config file");
    auto* o_scenario = run_cmd->add_option("--scenario", scenario, "scenario name");
    auto* o_h = run_cmd->add_option("--h", h, "RK4 step");
    auto* o_t = run_cmd->add_option("--t-end", t_end, "final time");
    auto* o_stride = run_cmd->add_option("--stride", stride, "record every stride-th step");
    auto* o_seed = run_cmd->add_option("--seed", seed, "seed (default METRIPLEX_SEED, else 0)");
    run_cmd->add_option("--suite", overrides.suites, "suite to run (repeatable): laws axioms equivalence jacobi casimir all");
    auto* o_out = run_cmd->add_option("--out", out, "output directory");
    run_cmd->add_option("--param", overrides.params, "scenario parameter key=value (repeatable)");
    run_cmd->add_flag("--sabotage", overrides.sabotage, "flip the sign of the dissipative laws");

    auto* list_cmd = app.add_subcommand("list-scenarios", "list built-in scenarios and their parameters");

    std::string check;
    auto* explain_cmd = app.add_subcommand("explain", "describe what a check certifies");
    explain_cmd->add_option("check", check, "check name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    if (*list_cmd) {
        for (const ScenarioInfo& s : scenario_catalog()) {
            std::cout << s.name << "\n    " << s.description << "\n   ";
            for (const auto& [k, v] : s.defaults) std::cout << " " << k << "=" << v;
            std::cout << "\n";
        }
        return 0;
    }

    if (*explain_cmd) {
        const CheckInfo* info = find_check(check);
        if (info == nullptr) {
            std::cerr << "unknown check '" << check << "'; known checks:\n";
            for (const CheckInfo& c : check_catalog()) std::cerr << "  " << c.name << "\n";
            return exit_config_error;
        }
        std::cout << info->name << ": " << info->statement << "\n";
        return 0;
    }

    RunConfig config;
    try {
        const std::uint64_t default_seed = seed_from_environment();
        if (config_path.empty()) {
            config.seed = default_seed;
        } else {
            config = load_config(config_path, default_seed);
        }
        if (*o_scenario) overrides.scenario = scenario;
        if (*o_h) overrides.h = h;
        if (*o_t) overrides.t_end = t_end;
        if (*o_stride) overrides.stride = stride;
        if (*o_seed) overrides.seed = seed;
        if (*o_out) overrides.out = out;
        apply_overrides(config, overrides);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    return run(config, std::cerr).exit_code;
}
