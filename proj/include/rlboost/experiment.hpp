#pragma once

#include "rlboost/boosting.hpp"
#include "rlboost/envs.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlboost {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnvConfig {
    std::string kind = "chain";  ///< chain | gridworld | random
    double gamma = 0.9;
    // chain
    std::size_t n_states = 5;
    double slip = 0.0;
    // gridworld
    std::size_t width = 3;
    std::size_t height = 3;
    Cell goal{2, 2};
    std::vector<Cell> obstacles;
    std::optional<Cell> start;
    // random
    std::size_t n_actions = 2;
    std::size_t branching = 2;
    std::uint64_t mdp_seed = 0;
};

struct WeakLearnerConfig {
    std::string kind = "erm";  ///< erm | erm_alpha_mix | hedge
    double mixture_alpha = 1.0;  ///< only for erm_alpha_mix
    std::string base_class = "all_deterministic";  ///< all_deterministic | random_deterministic | threshold
    std::size_t base_count = 16;  ///< random_deterministic class size
    std::uint64_t base_seed = 0;
    std::vector<double> feature;  ///< threshold feature per state; defaults to the state index
};

struct DiagnosticsConfig {
    bool smoothness_check = false;
    bool domination_check = false;
    bool unbiasedness_check = false;
    std::size_t completeness_probes = 0;
    std::size_t unbiasedness_episodes = 20000;

    bool any() const { return smoothness_check || domination_check || unbiasedness_check || completeness_probes > 0; }
};

struct ExperimentConfig {
    EnvConfig env;
    BoostConfig boost;
    WeakLearnerConfig weak_learner;
    DiagnosticsConfig diagnostics;
    std::string output_dir = "out";
    double check_max_relative_gap = 0.05;  ///< threshold used by --check
};

/// Parses and validates; throws ConfigError with the offending field.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

TabularMDP build_env(const EnvConfig& cfg);
BasePolicyClass build_base_class(const WeakLearnerConfig& cfg, const TabularMDP& mdp);

struct ExperimentOutcome {
    RunReport report;
    nlohmann::json diagnostics;  ///< null when no flag is set
    bool check_passed = true;    ///< relative gap within check_max_relative_gap
    std::vector<std::filesystem::path> files;
};

/**
 * Runs one boosting experiment and writes run_report.json, curve.csv,
 * policy_tree.json and, when any diagnostic flag is set, diagnostics.json
 * into cfg.output_dir.
 */
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

struct VerificationCheck {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_passed() const;
};

/// Scope: all | sampler | smoothing | fw | inequalities. Throws ConfigError on an unknown scope.
VerificationReport run_verification_suite(const std::string& scope, std::uint64_t seed);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace rlboost
