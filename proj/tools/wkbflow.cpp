// Command-line driver: simulation runs for the three model tiers, the
// cross-tier comparison harness, eps-refinement studies, and the invariant
// check suites. Exit codes: 0 success, 2 configuration error, 3 solver
// error, 4 check-suite failure.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wkbflow/checks.hpp"
#include "wkbflow/run.hpp"
#include "wkbflow/slow_manifold.hpp"

namespace {

using namespace wkbflow;

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto slash = item.find('/');
        if (slash != std::string::npos)
            out.push_back(std::stod(item.substr(0, slash)) /
                          std::stod(item.substr(slash + 1)));
        else
            out.push_back(std::stod(item));
    }
    if (out.empty()) throw ConfigError("empty eps list");
    return out;
}

int do_run(const std::string& config_path, Tier tier) {
    RunConfig cfg = parse_config_file(config_path);
    if (cfg.tier != tier)
        throw ConfigError(std::string("config selects tier '") + tier_name(cfg.tier) +
                          "' but the subcommand runs '" + tier_name(tier) + "'");
    RunResult res = run_simulation(cfg);
    std::printf("completed %d steps to t = %.6g; series at %s\n", res.steps, res.t,
                res.csv_path.c_str());
    return 0;
}

void print_suite(const CheckSuite& s) {
    std::printf("suite %-16s %s  (%.2fs)\n", s.name.c_str(),
                s.all_pass ? "PASS" : "FAIL", s.seconds);
    for (const auto& it : s.items)
        std::printf("  [%s] %-60s measured=%.6g %s %.6g\n", it.pass ? "ok" : "FAIL",
                    it.name.c_str(), it.measured, it.greater_is_pass ? ">=" : "<=",
                    it.threshold);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for wave--mean-flow model hierarchies"};
    app.require_subcommand(1);

    std::string config_path, config_reduced_path, eps_text = "1/16,1/32,1/64";
    std::string suite_name = "operators", json_path, study = "glm-identity";

    auto* run_base = app.add_subcommand("run-base", "advance the base model");
    run_base->add_option("--config", config_path, "configuration file")->required();

    auto* run_ext = app.add_subcommand("run-extended", "advance the extended model");
    run_ext->add_option("--config", config_path, "configuration file")->required();

    auto* run_red = app.add_subcommand("run-reduced", "advance the reduced model");
    run_red->add_option("--config", config_path, "configuration file")->required();

    auto* compare = app.add_subcommand(
        "compare", "full-vs-reduced error against eps with matched initial data");
    compare->add_option("--config-full", config_path, "base or extended tier config")
        ->required();
    compare->add_option("--config-reduced", config_reduced_path, "reduced tier config")
        ->required();
    compare->add_option("--eps", eps_text, "comma-separated eps list (fractions ok)");

    auto* conv = app.add_subcommand("convergence", "eps-refinement studies");
    conv->add_option("--study", study, "glm-identity | slow-manifold");

    auto* check = app.add_subcommand("check", "run a named invariant suite");
    check->add_option("suite", suite_name, "suite name, 'all', or 'acceptance'");
    check->add_option("--json", json_path, "write a machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_base->parsed()) return do_run(config_path, Tier::Base);
        if (run_ext->parsed()) return do_run(config_path, Tier::Extended);
        if (run_red->parsed()) return do_run(config_path, Tier::Reduced);

        if (compare->parsed()) {
            RunConfig full = parse_config_file(config_path);
            RunConfig red = parse_config_file(config_reduced_path);
            CompareReport rep =
                compare_full_reduced(full, red, parse_eps_list(eps_text));
            std::printf("eps,rel_error\n");
            for (size_t i = 0; i < rep.eps_list.size(); ++i)
                std::printf("%.17g,%.17g\n", rep.eps_list[i], rep.errors[i]);
            std::printf("fitted slope: %.4f\n", rep.slope);
            return 0;
        }

        if (conv->parsed()) {
            const std::string suite =
                study == "slow-manifold" ? "slow-manifold" : "glm-identity";
            CheckSuite s = run_check_suite(suite);
            print_suite(s);
            return s.all_pass ? 0 : 4;
        }

        if (check->parsed()) {
            std::vector<CheckSuite> suites;
            if (suite_name == "all") {
                for (const auto& n : check_suite_names())
                    suites.push_back(run_check_suite(n));
            } else if (suite_name == "acceptance") {
                suites = run_acceptance();
            } else {
                suites.push_back(run_check_suite(suite_name));
            }
            bool all = true;
            for (const auto& s : suites) {
                print_suite(s);
                all &= s.all_pass;
            }
            if (!json_path.empty()) {
                std::ofstream out(json_path);
                out << checks_to_json(suites) << "\n";
            }
            return all ? 0 : 4;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
