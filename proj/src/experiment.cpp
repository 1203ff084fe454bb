#include "rlboost/experiment.hpp"

#include "rlboost/geometry.hpp"
#include "rlboost/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace rlboost {

namespace {

void reject_unknown(const nlohmann::json& j, const std::vector<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(where + ": unknown key '" + key + "'");
}

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

Cell cell_from_json(const nlohmann::json& j, const std::string& where) {
    const auto index = [](const nlohmann::json& v) { return v.is_number_integer() && v.get<long long>() >= 0; };
    if (!j.is_array() || j.size() != 2 || !index(j[0]) || !index(j[1]))
        throw ConfigError(where + ": a cell is [column, row] with nonnegative integers");
    return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

nlohmann::json cell_to_json(Cell c) { return nlohmann::json::array({c.first, c.second}); }

EnvConfig env_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"kind", "gamma", "n_states", "slip", "width", "height", "goal", "obstacles", "start", "n_actions",
                       "branching", "mdp_seed"},
                   "env");
    EnvConfig env;
    env.kind = field(j, "kind", env.kind, "env");
    env.gamma = field(j, "gamma", env.gamma, "env");
    env.n_states = field(j, "n_states", env.n_states, "env");
    env.slip = field(j, "slip", env.slip, "env");
    env.width = field(j, "width", env.width, "env");
    env.height = field(j, "height", env.height, "env");
    if (j.contains("goal")) env.goal = cell_from_json(j.at("goal"), "env.goal");
    if (j.contains("obstacles")) {
        if (!j.at("obstacles").is_array()) throw ConfigError("env.obstacles: expected an array of cells");
        for (const auto& c : j.at("obstacles")) env.obstacles.push_back(cell_from_json(c, "env.obstacles"));
    }
    if (j.contains("start") && !j.at("start").is_null()) env.start = cell_from_json(j.at("start"), "env.start");
    env.n_actions = field(j, "n_actions", env.n_actions, "env");
    env.branching = field(j, "branching", env.branching, "env");
    env.mdp_seed = field(j, "mdp_seed", env.mdp_seed, "env");
    if (env.kind != "chain" && env.kind != "gridworld" && env.kind != "random")
        throw ConfigError("env.kind: unknown generator '" + env.kind + "'");
    if (!(env.gamma >= 0.0 && env.gamma < 1.0)) throw ConfigError("env.gamma: must lie in [0, 1)");
    return env;
}

nlohmann::json env_to_json(const EnvConfig& env) {
    nlohmann::json j = {{"kind", env.kind}, {"gamma", env.gamma}};
    if (env.kind == "chain") {
        j["n_states"] = env.n_states;
        j["slip"] = env.slip;
    } else if (env.kind == "gridworld") {
        j["width"] = env.width;
        j["height"] = env.height;
        j["goal"] = cell_to_json(env.goal);
        j["obstacles"] = nlohmann::json::array();
        for (const Cell& c : env.obstacles) j["obstacles"].push_back(cell_to_json(c));
        if (env.start) j["start"] = cell_to_json(*env.start);
    } else {
        j["n_states"] = env.n_states;
        j["n_actions"] = env.n_actions;
        j["branching"] = env.branching;
        j["mdp_seed"] = env.mdp_seed;
    }
    return j;
}

WeakLearnerConfig learner_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"kind", "mixture_alpha", "base_class", "base_count", "base_seed", "feature"}, "weak_learner");
    WeakLearnerConfig wl;
    wl.kind = field(j, "kind", wl.kind, "weak_learner");
    wl.mixture_alpha = field(j, "mixture_alpha", wl.mixture_alpha, "weak_learner");
    wl.base_class = field(j, "base_class", wl.base_class, "weak_learner");
    wl.base_count = field(j, "base_count", wl.base_count, "weak_learner");
    wl.base_seed = field(j, "base_seed", wl.base_seed, "weak_learner");
    wl.feature = field(j, "feature", wl.feature, "weak_learner");
    if (wl.kind != "erm" && wl.kind != "erm_alpha_mix" && wl.kind != "hedge")
        throw ConfigError("weak_learner.kind: unknown learner '" + wl.kind + "'");
    if (wl.base_class != "all_deterministic" && wl.base_class != "random_deterministic" && wl.base_class != "threshold")
        throw ConfigError("weak_learner.base_class: unknown class '" + wl.base_class + "'");
    if (!(wl.mixture_alpha > 0.0 && wl.mixture_alpha <= 1.0))
        throw ConfigError("weak_learner.mixture_alpha: must lie in (0, 1]");
    if (wl.kind != "erm_alpha_mix" && wl.mixture_alpha != 1.0)
        throw ConfigError("weak_learner.mixture_alpha: only used by erm_alpha_mix");
    return wl;
}

nlohmann::json learner_to_json(const WeakLearnerConfig& wl) {
    nlohmann::json j = {{"kind", wl.kind}, {"base_class", wl.base_class}};
    if (wl.kind == "erm_alpha_mix") j["mixture_alpha"] = wl.mixture_alpha;
    if (wl.base_class == "random_deterministic") {
        j["base_count"] = wl.base_count;
        j["base_seed"] = wl.base_seed;
    }
    if (!wl.feature.empty()) j["feature"] = wl.feature;
    return j;
}

DiagnosticsConfig diagnostics_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"smoothness_check", "domination_check", "unbiasedness_check", "completeness_probes",
                       "unbiasedness_episodes"},
                   "diagnostics");
    DiagnosticsConfig d;
    d.smoothness_check = field(j, "smoothness_check", d.smoothness_check, "diagnostics");
    d.domination_check = field(j, "domination_check", d.domination_check, "diagnostics");
    d.unbiasedness_check = field(j, "unbiasedness_check", d.unbiasedness_check, "diagnostics");
    d.completeness_probes = field(j, "completeness_probes", d.completeness_probes, "diagnostics");
    d.unbiasedness_episodes = field(j, "unbiasedness_episodes", d.unbiasedness_episodes, "diagnostics");
    if (d.unbiasedness_episodes < 2) throw ConfigError("diagnostics.unbiasedness_episodes: need at least 2");
    return d;
}

nlohmann::json diagnostics_to_json(const DiagnosticsConfig& d) {
    return {{"smoothness_check", d.smoothness_check},
            {"domination_check", d.domination_check},
            {"unbiasedness_check", d.unbiasedness_check},
            {"completeness_probes", d.completeness_probes},
            {"unbiasedness_episodes", d.unbiasedness_episodes}};
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"env", "boost", "weak_learner", "diagnostics", "output_dir", "check"}, "config");
    ExperimentConfig cfg;
    if (j.contains("env")) cfg.env = env_from_json(j.at("env"));
    if (j.contains("weak_learner")) cfg.weak_learner = learner_from_json(j.at("weak_learner"));
    if (j.contains("diagnostics")) cfg.diagnostics = diagnostics_from_json(j.at("diagnostics"));
    cfg.output_dir = field(j, "output_dir", cfg.output_dir, "config");
    if (j.contains("check")) {
        reject_unknown(j.at("check"), {"max_relative_gap"}, "check");
        cfg.check_max_relative_gap = field(j.at("check"), "max_relative_gap", cfg.check_max_relative_gap, "check");
        if (!(cfg.check_max_relative_gap >= 0.0)) throw ConfigError("check.max_relative_gap: must be nonnegative");
    }
    nlohmann::json boost = j.contains("boost") ? j.at("boost") : nlohmann::json::object();
    if (!boost.is_object()) throw ConfigError("boost: expected an object");
    // the booster assumes the edge of the mixture unless told otherwise
    if (cfg.weak_learner.kind == "erm_alpha_mix" && !boost.contains("alpha"))
        boost["alpha"] = cfg.weak_learner.mixture_alpha;
    try {
        cfg.boost = boost_config_from_json(boost);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("boost: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("boost: ") + e.what());
    }
    return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    return {{"env", env_to_json(cfg.env)},
            {"boost", to_json(cfg.boost)},
            {"weak_learner", learner_to_json(cfg.weak_learner)},
            {"diagnostics", diagnostics_to_json(cfg.diagnostics)},
            {"output_dir", cfg.output_dir},
            {"check", {{"max_relative_gap", cfg.check_max_relative_gap}}}};
}

TabularMDP build_env(const EnvConfig& cfg) {
    try {
        if (cfg.kind == "chain") return make_chain(cfg.n_states, cfg.slip, cfg.gamma);
        if (cfg.kind == "gridworld")
            return make_gridworld(cfg.width, cfg.height, cfg.goal, cfg.obstacles, cfg.gamma, cfg.start);
        if (cfg.kind == "random")
            return make_random_mdp(cfg.n_states, cfg.n_actions, cfg.branching, cfg.mdp_seed, cfg.gamma);
    } catch (const std::logic_error& e) {
        throw ConfigError(std::string("env: ") + e.what());
    }
    throw ConfigError("env.kind: unknown generator '" + cfg.kind + "'");
}

BasePolicyClass build_base_class(const WeakLearnerConfig& cfg, const TabularMDP& mdp) {
    try {
        if (cfg.base_class == "all_deterministic") return all_deterministic_policies(mdp.n_states(), mdp.n_actions());
        if (cfg.base_class == "random_deterministic") {
            Rng rng(cfg.base_seed);
            return random_deterministic_policies(mdp.n_states(), mdp.n_actions(), cfg.base_count, rng);
        }
        if (cfg.base_class == "threshold") {
            std::vector<double> feature = cfg.feature;
            if (feature.empty()) {
                feature.resize(mdp.n_states());
                std::iota(feature.begin(), feature.end(), 0.0);
            }
            if (feature.size() != mdp.n_states()) throw ConfigError("weak_learner.feature: one value per state");
            return threshold_policies(feature, mdp.n_actions());
        }
    } catch (const std::logic_error& e) {
        throw ConfigError(std::string("weak_learner: ") + e.what());
    }
    throw ConfigError("weak_learner.base_class: unknown class '" + cfg.base_class + "'");
}

namespace {

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json smoothness_diagnostic(const TabularMDP& mdp, const std::vector<PolicyMatrix>& iterates) {
    const double gamma = mdp.gamma();
    const double curvature = gamma / std::pow(1.0 - gamma, 3);
    const Eigen::VectorXd& d0 = mdp.start_dist();
    double worst_ratio = 0.0;
    std::size_t violations = 0;
    for (std::size_t t = 1; t < iterates.size(); ++t) {
        const PolicyMatrix delta = iterates[t] - iterates[t - 1];
        const double lhs = std::abs(exact_value(mdp, iterates[t], d0) - exact_value(mdp, iterates[t - 1], d0) -
                                    exact_gradient(mdp, iterates[t - 1], d0).cwiseProduct(delta).sum());
        const double n = norm_inf1(delta);
        const double bound = curvature * n * n;
        if (lhs > bound + 1e-12) ++violations;
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, lhs / bound);
    }
    return {{"pairs", iterates.size() - 1}, {"violations", violations}, {"worst_ratio", worst_ratio}};
}

nlohmann::json domination_diagnostic(const TabularMDP& mdp, const std::vector<PolicyMatrix>& iterates,
                                     const BasePolicyClass& base) {
    const double gamma = mdp.gamma();
    const Eigen::VectorXd& d0 = mdp.start_dist();
    std::vector<PolicyMatrix> base_tables;
    for (std::size_t k = 0; k < base.size(); ++k) base_tables.push_back(base.table(k));
    const auto mm = mismatch_coefficients(mdp, iterates, d0);
    const double e = policy_completeness(mdp, iterates, base_tables, d0);
    const double v_star = optimal_policy(mdp).v_star;
    std::size_t violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (const PolicyMatrix& pi : iterates) {
        const Eigen::MatrixXd grad = exact_gradient(mdp, pi, d0);
        double best = -std::numeric_limits<double>::infinity();
        for (const PolicyMatrix& b : base_tables) best = std::max(best, grad.cwiseProduct(b - pi).sum());
        const double lhs = v_star - exact_value(mdp, pi, d0);
        const double rhs = mm.c_inf * (e / (1.0 - gamma) + best);
        if (lhs > rhs + 1e-9) ++violations;
        worst_slack = std::min(worst_slack, rhs - lhs);
    }
    return {{"c_inf", finite_or_null(mm.c_inf)},
            {"completeness", e},
            {"violations", violations},
            {"min_slack", finite_or_null(worst_slack)}};
}

nlohmann::json unbiasedness_diagnostic(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& mu,
                                       const BasePolicyClass& base, std::size_t episodes, std::uint64_t seed,
                                       std::size_t cap) {
    const double gamma = mdp.gamma();
    const TabularPolicy policy(pi, "final");
    const Eigen::MatrixXd grad = exact_gradient(mdp, pi, mu);
    const PolicyMatrix uniform = PolicyMatrix::Constant(pi.rows(), pi.cols(), 1.0 / static_cast<double>(pi.cols()));
    const std::vector<std::pair<std::string, PolicyMatrix>> probes = {{"uniform", uniform},
                                                                      {base.identifier(0), base.table(0)}};
    Rng rng(derive_seed(seed, 0xd1a6));
    const auto samples = batch_sample(mdp, policy, mu, rng, episodes, cap);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [name, probe] : probes) {
        double sum = 0.0;
        double sq = 0.0;
        for (const auto& q : samples) {
            const double x = q.q_hat.dot(probe.row(static_cast<Eigen::Index>(q.state)).transpose()) / (1.0 - gamma);
            sum += x;
            sq += x * x;
        }
        const double n = static_cast<double>(samples.size());
        const double mean = sum / n;
        const double se = std::sqrt(std::max(sq / n - mean * mean, 0.0) / (n - 1.0));
        const double exact = grad.cwiseProduct(probe).sum();
        const double z = se > 0.0 ? std::abs(mean - exact) / se : 0.0;
        out.push_back({{"probe", name}, {"mean", mean}, {"exact", exact}, {"std_error", se}, {"z", z}, {"passed", z <= 4.0}});
    }
    return out;
}

nlohmann::json completeness_diagnostic(const TabularMDP& mdp, const BasePolicyClass& base, std::size_t probes,
                                       const Eigen::VectorXd& mu, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xc0de));
    std::vector<PolicyMatrix> tables;
    for (std::size_t i = 0; i < probes; ++i) {
        PolicyMatrix p(static_cast<Eigen::Index>(mdp.n_states()), static_cast<Eigen::Index>(mdp.n_actions()));
        for (Eigen::Index s = 0; s < p.rows(); ++s) {
            for (Eigen::Index a = 0; a < p.cols(); ++a) p(s, a) = -std::log1p(-rng.uniform());
            p.row(s) /= p.row(s).sum();
        }
        tables.push_back(std::move(p));
    }
    std::vector<PolicyMatrix> base_tables;
    for (std::size_t k = 0; k < base.size(); ++k) base_tables.push_back(base.table(k));
    return {{"probes", probes}, {"completeness", policy_completeness(mdp, tables, base_tables, mu)}};
}

void write_file(const std::filesystem::path& path, const std::string& text, std::vector<std::filesystem::path>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    files.push_back(path);
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    const TabularMDP mdp = build_env(cfg.env);
    const BasePolicyClass base = build_base_class(cfg.weak_learner, mdp);
    if (cfg.boost.mode == AccessMode::nu_reset && !mdp.reset_dist())
        throw ConfigError("boost.mode: nu_reset needs an environment with a reset distribution");

    BoostResult result = [&] {
        if (cfg.weak_learner.kind == "hedge") return boost_online(mdp, base, cfg.boost);
        const double mix = cfg.weak_learner.kind == "erm_alpha_mix" ? cfg.weak_learner.mixture_alpha : 1.0;
        const SupervisedWeakLearner learner(base, mix);
        return boost_supervised(mdp, learner, cfg.boost);
    }();

    ExperimentOutcome outcome;
    outcome.report = result.report;
    outcome.check_passed = result.report.relative_gap <= cfg.check_max_relative_gap;

    const Eigen::VectorXd mu =
        cfg.boost.mode == AccessMode::nu_reset ? *mdp.reset_dist() : Eigen::VectorXd(mdp.start_dist());
    if (cfg.diagnostics.any()) {
        nlohmann::json diag = nlohmann::json::object();
        if (cfg.diagnostics.smoothness_check) diag["smoothness"] = smoothness_diagnostic(mdp, result.iterates);
        if (cfg.diagnostics.domination_check) diag["domination"] = domination_diagnostic(mdp, result.iterates, base);
        if (cfg.diagnostics.unbiasedness_check)
            diag["unbiasedness"] = unbiasedness_diagnostic(mdp, result.iterates.back(), mu, base,
                                                           cfg.diagnostics.unbiasedness_episodes, cfg.boost.seed,
                                                           cfg.boost.horizon_cap_or_default(mdp));
        if (cfg.diagnostics.completeness_probes > 0)
            diag["completeness"] =
                completeness_diagnostic(mdp, base, cfg.diagnostics.completeness_probes, mu, cfg.boost.seed);
        outcome.diagnostics = diag;
    }

    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    nlohmann::json report = to_json(result.report);
    report["config"] = to_json(cfg);
    report["check"] = {{"max_relative_gap", cfg.check_max_relative_gap}, {"passed", outcome.check_passed}};
    write_file(dir / "run_report.json", report.dump(2) + "\n", outcome.files);

    std::ostringstream curve;
    write_curve_csv(curve, result.report);
    write_file(dir / "curve.csv", curve.str(), outcome.files);
    write_file(dir / "policy_tree.json", to_json(result.policy).dump() + "\n", outcome.files);
    if (!outcome.diagnostics.is_null())
        write_file(dir / "diagnostics.json", outcome.diagnostics.dump(2) + "\n", outcome.files);
    return outcome;
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.passed; });
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"suite", c.suite},
                          {"name", c.name},
                          {"measured", finite_or_null(c.measured)},
                          {"bound", finite_or_null(c.bound)},
                          {"passed", c.passed}});
    return {{"checks", checks}, {"all_passed", report.all_passed()}};
}

}  // namespace rlboost
