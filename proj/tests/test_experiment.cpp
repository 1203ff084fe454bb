#include "rlboost/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rlboost;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json small_config(const fs::path& out) {
    return {{"env", {{"kind", "chain"}, {"n_states", 4}, {"gamma", 0.8}}},
            {"boost", {{"t_rounds", 4}, {"n_inner", 3}, {"m_episodes", 15}, {"c_inf_hint", 1.0}, {"seed", 3}}},
            {"weak_learner", {{"kind", "erm"}}},
            {"output_dir", out.string()},
            {"check", {{"max_relative_gap", 1.0}}}};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("rlboost_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing rejects unknown keys and bad values") {
    const auto ok = small_config("x");
    CHECK_NOTHROW(experiment_config_from_json(ok));
    auto bad = ok;
    bad["env"]["colour"] = "red";
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["extra"] = 1;
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["boost"]["t_rounds"] = 0;
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["env"]["gamma"] = 1.0;
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["weak_learner"]["kind"] = "svm";
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["env"]["n_states"] = "five";
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
    bad = ok;
    bad["weak_learner"]["mixture_alpha"] = 0.5;  // only meaningful for erm_alpha_mix
    CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
}

TEST_CASE("alpha mixture learner sets the boosting alpha unless given") {
    auto j = small_config("x");
    j["weak_learner"] = {{"kind", "erm_alpha_mix"}, {"mixture_alpha", 0.25}};
    CHECK(experiment_config_from_json(j).boost.alpha == 0.25);
    j["boost"]["alpha"] = 0.5;
    CHECK(experiment_config_from_json(j).boost.alpha == 0.5);
}

TEST_CASE("config round trip") {
    for (const std::string kind : {"chain", "gridworld", "random"}) {
        auto j = small_config("x");
        j["env"] = {{"kind", kind}, {"gamma", 0.85}};
        if (kind == "gridworld") j["env"]["obstacles"] = nlohmann::json::array({nlohmann::json::array({1, 1})});
        const ExperimentConfig cfg = experiment_config_from_json(j);
        CHECK(to_json(experiment_config_from_json(to_json(cfg))) == to_json(cfg));
    }
}

TEST_CASE("run writes the report, curve and tree, reproducibly") {
    // the report embeds the config, output_dir included, so both runs use one directory
    const fs::path a = scratch("a");
    const auto out_a = run_experiment(experiment_config_from_json(small_config(a)));
    const std::vector<std::string> names{"run_report.json", "curve.csv", "policy_tree.json"};
    std::vector<std::string> first;
    for (const auto& name : names) {
        REQUIRE(fs::exists(a / name));
        first.push_back(slurp(a / name));
    }
    run_experiment(experiment_config_from_json(small_config(a)));
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(slurp(a / names[i]) == first[i]);
    CHECK_FALSE(fs::exists(a / "diagnostics.json"));
    CHECK(out_a.files.size() == 3);

    const std::string curve = slurp(a / "curve.csv");
    CHECK(std::count(curve.begin(), curve.end(), '\n') == 5);  // header + T rows
    CHECK(curve.rfind("t,eta,exact_value,episodes_cum\n", 0) == 0);

    const auto report = nlohmann::json::parse(slurp(a / "run_report.json"));
    CHECK(report.at("total_episodes").get<std::size_t>() == 4 * 3 * 15);
    CHECK(report.at("rounds").size() == 4);
    CHECK(report.at("config").at("boost").at("seed") == 3);
    CHECK(out_a.check_passed);
    fs::remove_all(a);
}

TEST_CASE("diagnostics are written when requested") {
    const fs::path dir = scratch("diag");
    auto j = small_config(dir);
    j["diagnostics"] = {{"smoothness_check", true},
                        {"domination_check", true},
                        {"unbiasedness_check", true},
                        {"unbiasedness_episodes", 4000},
                        {"completeness_probes", 3}};
    const auto outcome = run_experiment(experiment_config_from_json(j));
    REQUIRE(fs::exists(dir / "diagnostics.json"));
    const auto diag = outcome.diagnostics;
    CHECK(diag.at("smoothness").at("violations") == 0);
    CHECK(diag.at("domination").at("violations") == 0);
    for (const auto& probe : diag.at("unbiasedness")) CHECK(probe.at("z").get<double>() <= 4.0);
    CHECK(diag.at("completeness").at("completeness").get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    fs::remove_all(dir);
}

TEST_CASE("failed check is reported") {
    const fs::path dir = scratch("check");
    auto j = small_config(dir);
    j["check"]["max_relative_gap"] = 0.0;
    const auto outcome = run_experiment(experiment_config_from_json(j));
    CHECK(outcome.report.relative_gap > 0.0);
    CHECK_FALSE(outcome.check_passed);
    fs::remove_all(dir);
}

TEST_CASE("online and nu-reset runs") {
    const fs::path dir = scratch("modes");
    auto j = small_config(dir);
    j["weak_learner"] = {{"kind", "hedge"}};
    j["boost"]["mode"] = "nu_reset";
    j["boost"]["p_episodes"] = 10;
    const auto outcome = run_experiment(experiment_config_from_json(j));
    CHECK(outcome.report.total_episodes == 4 * (15 + 10));
    CHECK(outcome.report.hedge_regret.size() == 3);
    fs::remove_all(dir);
}

TEST_CASE("verification suites") {
    const auto report = run_verification_suite("fw", 0);
    CHECK(report.all_passed());
    CHECK_FALSE(report.checks.empty());
    for (const auto& c : report.checks) CHECK(c.suite == "fw");
    CHECK_THROWS_AS(run_verification_suite("everything", 0), ConfigError);
}
