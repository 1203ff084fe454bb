// Command-line driver: `rlboost run <config.json>` and `rlboost verify <scope>`.
//
// Exit codes: 0 success, 1 configuration error, 2 failed check.

#include "rlboost/experiment.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kCheckFailed = 2;

int config_error(const std::string& message) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", message}}.dump() << '\n';
    return kConfigError;
}

int run_command(const std::string& path, const std::optional<std::uint64_t>& seed,
                const std::optional<std::string>& output_dir, bool check) {
    rlboost::ExperimentConfig cfg;
    try {
        std::ifstream in(path);
        if (!in) return config_error("cannot open " + path);
        const auto j = nlohmann::json::parse(in);
        cfg = rlboost::experiment_config_from_json(j);
        if (seed) cfg.boost.seed = *seed;
        if (output_dir) cfg.output_dir = *output_dir;
    } catch (const nlohmann::json::exception& e) {
        return config_error(e.what());
    } catch (const rlboost::ConfigError& e) {
        return config_error(e.what());
    }

    rlboost::ExperimentOutcome outcome;
    try {
        outcome = rlboost::run_experiment(cfg);
    } catch (const rlboost::ConfigError& e) {
        return config_error(e.what());
    }
    const auto& r = outcome.report;
    std::cout << std::setprecision(6) << "V = " << r.final_value << "  V* = " << r.v_star
              << "  relative gap = " << r.relative_gap << "  episodes = " << r.total_episodes << '\n';
    for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
    if (check) {
        std::cout << "check: relative gap " << r.relative_gap << (outcome.check_passed ? " <= " : " > ")
                  << cfg.check_max_relative_gap << (outcome.check_passed ? "  PASS" : "  FAIL") << '\n';
        if (!outcome.check_passed) return kCheckFailed;
    }
    return kOk;
}

int verify_command(const std::string& scope, std::uint64_t seed, const std::optional<std::string>& output_dir) {
    rlboost::VerificationReport report;
    try {
        report = rlboost::run_verification_suite(scope, seed);
    } catch (const rlboost::ConfigError& e) {
        return config_error(e.what());
    }
    for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << '[' << c.suite << "] " << c.name << ": " << std::setprecision(6)
                  << c.measured << " (bound " << c.bound << ")\n";
    if (output_dir) {
        std::filesystem::create_directories(*output_dir);
        std::ofstream out(std::filesystem::path(*output_dir) / "verification.json");
        out << rlboost::to_json(report).dump(2) << '\n';
    }
    return report.all_passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boosting for tabular reinforcement learning"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    bool check = false;
    app.add_option("--seed", seed, "override the RNG seed");
    app.add_option("--output-dir", output_dir, "override the output directory");
    app.add_flag("--check", check, "exit 2 when the final relative gap exceeds the configured threshold");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run a boosting experiment");
    run->add_option("config", config_path, "experiment config (JSON)")->required();

    std::string scope = "all";
    auto* verify = app.add_subcommand("verify", "run property checks");
    verify->add_option("scope", scope, "all | sampler | smoothing | fw | inequalities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return run_command(config_path, seed, output_dir, check);
        return verify_command(scope, seed.value_or(0), output_dir);
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
        return kConfigError;
    }
}
