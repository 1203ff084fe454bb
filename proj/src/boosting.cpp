#include "rlboost/boosting.hpp"

#include "rlboost/frank_wolfe.hpp"
#include "rlboost/geometry.hpp"
#include "rlboost/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rlboost {

void BoostConfig::validate() const {
    if (t_rounds == 0 || n_inner == 0 || m_episodes == 0 || p_episodes == 0)
        throw std::invalid_argument("BoostConfig: T, N, M and P must be at least 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("BoostConfig: alpha must lie in (0, 1]");
    if (c_inf_hint && !(*c_inf_hint > 0.0)) throw std::invalid_argument("BoostConfig: c_inf_hint must be positive");
    if (beta && !(*beta > 0.0 && std::isfinite(*beta))) throw std::invalid_argument("BoostConfig: beta must be positive");
    if (g_lip && !(*g_lip > 0.0 && std::isfinite(*g_lip)))
        throw std::invalid_argument("BoostConfig: g_lip must be positive");
    if (horizon_cap && *horizon_cap == 0) throw std::invalid_argument("BoostConfig: horizon_cap must be positive");
    if (hedge_gain_range && !(*hedge_gain_range > 0.0))
        throw std::invalid_argument("BoostConfig: hedge_gain_range must be positive");
}

double BoostConfig::beta_or_default(const TabularMDP& mdp) const {
    if (beta) return *beta;
    // M_b[k f] = k M_{k b}[f]: the unit-loss radius divided by the loss scale
    const double loss_scale = static_cast<double>(mdp.n_actions()) / (1.0 - mdp.gamma());
    return std::sqrt(1.0 / (alpha * static_cast<double>(n_inner))) / loss_scale;
}

double BoostConfig::g_lip_or_default(const TabularMDP& mdp) const {
    return g_lip ? *g_lip : static_cast<double>(mdp.n_actions()) / (1.0 - mdp.gamma());
}

std::size_t BoostConfig::horizon_cap_or_default(const TabularMDP& mdp) const {
    return horizon_cap ? *horizon_cap : mdp.default_horizon_cap();
}

double step_chooser(const TabularMDP& mdp, const Policy& pi_prev, const Policy& pi_new,
                    const Eigen::Ref<const Eigen::VectorXd>& mu, std::size_t p_episodes, Rng& rng,
                    std::size_t horizon_cap, SamplerStats* stats) {
    if (p_episodes == 0) throw std::invalid_argument("step_chooser: P must be at least 1");
    const auto samples = batch_sample(mdp, pi_prev, mu, rng, p_episodes, horizon_cap, stats);
    double diff = 0.0;
    for (const auto& q : samples)
        diff += q.q_hat.dot(pi_new.action_distribution(q.state) - pi_prev.action_distribution(q.state));
    diff /= static_cast<double>(p_episodes);
    const double scale = (1.0 - mdp.gamma()) * (1.0 - mdp.gamma()) / 2.0;
    return std::clamp(scale * diff, 0.0, 1.0);
}

namespace {

const Eigen::VectorXd& sampling_distribution(const TabularMDP& mdp, AccessMode mode) {
    if (mode == AccessMode::episodic) return mdp.start_dist();
    if (!mdp.reset_dist()) throw std::invalid_argument("nu_reset mode needs an MDP with a reset distribution");
    return *mdp.reset_dist();
}

PolicyMatrix project_rows(const PolicyMatrix& values) {
    PolicyMatrix out(values.rows(), values.cols());
    for (Eigen::Index s = 0; s < values.rows(); ++s) out.row(s) = project_simplex(values.row(s).transpose()).transpose();
    return out;
}

/// Affine weights of one shrub under construction; the uniform term is kept last.
struct ShrubBuilder {
    std::vector<double> weights;
    std::vector<PolicyPtr> bases;
    double uniform_weight = 0.0;

    void step(double eta, double alpha, PolicyPtr policy) {
        for (double& w : weights) w *= 1.0 - eta;
        uniform_weight *= 1.0 - eta;
        weights.push_back(eta / alpha);
        bases.push_back(std::move(policy));
        uniform_weight -= eta * (1.0 / alpha - 1.0);
    }

    Shrub build(double alpha, const PolicyPtr& uniform) const {
        auto w = weights;
        auto b = bases;
        if (alpha < 1.0) {
            w.push_back(uniform_weight);
            b.push_back(uniform);
        }
        return Shrub(std::move(w), std::move(b));
    }
};

double inner_eta(std::size_t n) { return std::min(2.0 / static_cast<double>(n), 1.0); }

struct RunState {
    PolicyTree tree;
    PolicyMatrix table;
};

struct Driver {
    const TabularMDP& mdp;
    const BoostConfig& cfg;
    Eigen::VectorXd mu;
    std::size_t cap;
    Rng rng;
    SamplerStats stats;
    RunReport report;
    std::vector<RunState> history;
    double c_inf = 1.0;

    Driver(const TabularMDP& m, const BoostConfig& c, const BasePolicyClass& base)
        : mdp(m), cfg(c), mu(sampling_distribution(m, c.mode)), cap(c.horizon_cap_or_default(m)), rng(c.seed) {
        cfg.validate();
        if (base.n_states() != mdp.n_states() || base.n_actions() != mdp.n_actions())
            throw std::invalid_argument("base class does not match the MDP");
        if (cfg.mode == AccessMode::episodic) {
            if (cfg.c_inf_hint) {
                c_inf = *cfg.c_inf_hint;
            } else {
                std::vector<PolicyMatrix> tables;
                for (std::size_t k = 0; k < base.size(); ++k) tables.push_back(base.table(k));
                const auto mm = mismatch_coefficients(mdp, tables, mdp.start_dist());
                c_inf = mm.c_inf_finite ? mm.c_inf : std::numeric_limits<double>::infinity();
            }
            report.c_inf_used = c_inf;
        }
        if (cfg.init == InitPolicy::first_base) {
            history.push_back({PolicyTree::from_base(base.policy(0)), base.table(0)});
        } else {
            const PolicyPtr uniform = std::make_shared<UniformPolicy>(mdp.n_actions());
            history.push_back({PolicyTree::from_base(uniform), tabulate(*uniform, mdp.n_states())});
        }
    }

    double outer_eta(std::size_t t, const TabularPolicy& prev, const PolicyMatrix& projected) {
        if (cfg.mode == AccessMode::episodic) return fw_step_gd(t, c_inf);
        const TabularPolicy next(projected, "pi_prime");
        return step_chooser(mdp, prev, next, mu, cfg.p_episodes, rng, cap, &stats);
    }

    void record(std::size_t t, double eta, std::size_t episodes_before) {
        const PolicyMatrix& table = history.back().table;
        RoundRecord rec;
        rec.t = t;
        rec.eta = eta;
        rec.exact_value = exact_value(mdp, table, mdp.start_dist());
        rec.exact_value_mu = exact_value(mdp, table, mu);
        rec.episodes_used = stats.episodes - episodes_before;
        rec.episodes_cum = stats.episodes;
        report.rounds.push_back(rec);
    }

    BoostResult finish(std::size_t expected_episodes) {
        std::size_t chosen = cfg.t_rounds;
        if (cfg.mode == AccessMode::nu_reset) {
            // iterate preceding the smallest step, earliest round on ties
            std::size_t best = 0;
            for (std::size_t i = 1; i < report.rounds.size(); ++i)
                if (report.rounds[i].eta < report.rounds[best].eta) best = i;
            chosen = best;
        }
        report.chosen_round = chosen;
        report.sampler = stats;
        report.total_episodes = stats.episodes;
        report.expected_episodes = expected_episodes;
        const auto opt = optimal_policy(mdp);
        report.v_star = opt.v_star;
        report.final_value = exact_value(mdp, history[chosen].table, mdp.start_dist());
        report.gap = report.v_star - report.final_value;
        report.relative_gap = report.v_star > 0.0 ? report.gap / report.v_star : 0.0;

        std::vector<PolicyMatrix> tables;
        for (const auto& h : history) tables.push_back(h.table);
        const auto mm = mismatch_coefficients(mdp, tables, mu);
        report.c_inf_iterates = mm.c_inf_finite ? mm.c_inf : std::numeric_limits<double>::infinity();
        return {history[chosen].tree, std::move(report), std::move(tables)};
    }
};

}  // namespace

InnerBoostResult inner_boost_supervised(const TabularMDP& mdp, const Policy& pi_outer,
                                        const SupervisedWeakLearner& learner, const BoostConfig& cfg,
                                        const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng, SamplerStats* stats) {
    cfg.validate();
    const BasePolicyClass& base = learner.base();
    const auto n_actions = static_cast<double>(mdp.n_actions());
    const SmoothingParams params{cfg.beta_or_default(mdp), cfg.g_lip_or_default(mdp)};
    const std::size_t cap = cfg.horizon_cap_or_default(mdp);
    const PolicyPtr uniform = std::make_shared<UniformPolicy>(mdp.n_actions());

    ShrubBuilder builder;
    PolicyMatrix rho = base.table(0);
    for (std::size_t n = 1; n <= cfg.n_inner; ++n) {
        const auto samples = batch_sample(mdp, pi_outer, mu, rng, cfg.m_episodes, cap, stats);
        GainDataset data;
        data.reserve(samples.size());
        for (const auto& q : samples) {
            const LinearLoss loss{-q.q_hat};
            data.push_back({q.state, -extension_gradient(loss, params, rho.row(static_cast<Eigen::Index>(q.state)).transpose())});
        }
        PolicyPtr out = learner.learn(data);
        if (!out || !learner.admits(*out)) throw ContractViolation("weak learner returned a policy outside its class");
        const PolicyMatrix out_table = tabulate(*out, mdp.n_states());

        const double eta = inner_eta(n);
        rho = (1.0 - eta) * rho + (eta / cfg.alpha) * out_table -
              PolicyMatrix::Constant(rho.rows(), rho.cols(), eta * (1.0 / cfg.alpha - 1.0) / n_actions);
        builder.step(eta, cfg.alpha, std::move(out));
    }
    return {builder.build(cfg.alpha, uniform), rho, project_rows(rho)};
}

BoostResult boost_supervised(const TabularMDP& mdp, const SupervisedWeakLearner& learner, const BoostConfig& cfg) {
    Driver d(mdp, cfg, learner.base());
    for (std::size_t t = 1; t <= cfg.t_rounds; ++t) {
        const std::size_t before = d.stats.episodes;
        const RunState& prev = d.history.back();
        const TabularPolicy prev_policy(prev.table, "pi_prev");
        auto inner = inner_boost_supervised(mdp, prev_policy, learner, cfg, d.mu, d.rng, &d.stats);
        const double eta = d.outer_eta(t, prev_policy, inner.projected);
        PolicyMatrix table = (1.0 - eta) * prev.table + eta * inner.projected;
        PolicyTree tree = mix_tree(prev.tree, std::move(inner.shrub), eta);
        d.history.push_back({std::move(tree), std::move(table)});
        d.record(t, eta, before);
    }
    const std::size_t per_round = cfg.m_episodes * cfg.n_inner + (cfg.mode == AccessMode::nu_reset ? cfg.p_episodes : 0);
    return d.finish(cfg.t_rounds * per_round);
}

BoostResult boost_online(const TabularMDP& mdp, const BasePolicyClass& base, const BoostConfig& cfg) {
    Driver d(mdp, cfg, base);
    const std::size_t n_actions = mdp.n_actions();
    const SmoothingParams params{cfg.beta_or_default(mdp), cfg.g_lip_or_default(mdp)};
    const double gain_range = cfg.hedge_gain_range
                                  ? *cfg.hedge_gain_range
                                  : 2.0 * (static_cast<double>(n_actions) / (1.0 - mdp.gamma()) + params.g_lip);
    const PolicyPtr uniform = std::make_shared<UniformPolicy>(n_actions);
    const auto k_experts = static_cast<Eigen::Index>(base.size());
    const std::size_t n_inner = cfg.n_inner;

    d.report.hedge_regret.assign(n_inner, 0.0);
    d.report.hedge_expected_regret.assign(n_inner, 0.0);
    d.report.hedge_regret_bound =
        std::sqrt(static_cast<double>(cfg.m_episodes) / 2.0 * std::log(static_cast<double>(base.size()))) * gain_range;

    for (std::size_t t = 1; t <= cfg.t_rounds; ++t) {
        const std::size_t before = d.stats.episodes;
        const RunState& prev = d.history.back();
        const TabularPolicy prev_policy(prev.table, "pi_prev");

        std::vector<HedgeState> learners;
        for (std::size_t n = 0; n < n_inner; ++n) learners.push_back(make_hedge(base.size(), cfg.m_episodes, gain_range));
        // per learner: cumulative gain of every expert, of the played experts, and of the mixture
        std::vector<Eigen::VectorXd> expert_gain(n_inner, Eigen::VectorXd::Zero(k_experts));
        std::vector<double> played_gain(n_inner, 0.0);
        std::vector<double> mixture_gain(n_inner, 0.0);

        std::vector<Shrub> shrubs;
        shrubs.reserve(cfg.m_episodes);
        PolicyMatrix projected_sum = PolicyMatrix::Zero(static_cast<Eigen::Index>(mdp.n_states()),
                                                        static_cast<Eigen::Index>(n_actions));
        for (std::size_t m = 0; m < cfg.m_episodes; ++m) {
            const QSample q = sample_q(mdp, prev_policy, d.mu, d.rng, d.cap, &d.stats);
            const auto s = static_cast<Eigen::Index>(q.state);
            const LinearLoss loss{-q.q_hat};

            ShrubBuilder builder;
            PolicyMatrix rho = base.table(0);
            std::vector<std::size_t> picks(n_inner);
            std::vector<Eigen::VectorXd> probs(n_inner);
            for (std::size_t n = 0; n < n_inner; ++n) {
                probs[n] = hedge_probabilities(learners[n]);
                auto [policy, k] = hedge_predict(learners[n], base, d.rng);
                picks[n] = k;
                const Eigen::VectorXd at_prev = rho.row(s).transpose();
                const Eigen::VectorXd gain = -extension_gradient(loss, params, at_prev);
                // gains of every expert at the visited state
                Eigen::VectorXd g(k_experts);
                for (Eigen::Index k = 0; k < k_experts; ++k)
                    g(k) = gain.dot(base.table(static_cast<std::size_t>(k)).row(s).transpose());
                expert_gain[n] += g;
                played_gain[n] += g(static_cast<Eigen::Index>(k));
                mixture_gain[n] += probs[n].dot(g);
                learners[n] = hedge_update(std::move(learners[n]), base, q.state, gain);

                const double eta = inner_eta(n + 1);
                rho = (1.0 - eta) * rho + (eta / cfg.alpha) * base.table(k) -
                      PolicyMatrix::Constant(rho.rows(), rho.cols(), eta * (1.0 / cfg.alpha - 1.0) /
                                                                         static_cast<double>(n_actions));
                builder.step(eta, cfg.alpha, std::move(policy));
            }
            projected_sum += project_rows(rho);
            shrubs.push_back(builder.build(cfg.alpha, uniform));
        }
        for (std::size_t n = 0; n < n_inner; ++n) {
            const double best = expert_gain[n].maxCoeff();
            d.report.hedge_regret[n] = std::max(d.report.hedge_regret[n], best - played_gain[n]);
            d.report.hedge_expected_regret[n] = std::max(d.report.hedge_expected_regret[n], best - mixture_gain[n]);
        }

        const PolicyMatrix projected = projected_sum / static_cast<double>(cfg.m_episodes);
        const double eta = d.outer_eta(t, prev_policy, projected);
        PolicyMatrix table = (1.0 - eta) * prev.table + eta * projected;
        PolicyTree tree = mix_tree(prev.tree, std::move(shrubs), eta);
        d.history.push_back({std::move(tree), std::move(table)});
        d.record(t, eta, before);
    }
    const std::size_t per_round = cfg.m_episodes + (cfg.mode == AccessMode::nu_reset ? cfg.p_episodes : 0);
    return d.finish(cfg.t_rounds * per_round);
}

namespace {

double sample_size(double log_class, double eps, double delta) {
    return log_class / (eps * eps) * std::log(1.0 / delta);
}

void check_inputs(const ScheduleInputs& in) {
    if (!(in.epsilon > 0.0) || !(in.delta > 0.0 && in.delta < 1.0) || !(in.mismatch > 0.0) ||
        !(in.gamma >= 0.0 && in.gamma < 1.0) || !(in.alpha > 0.0 && in.alpha <= 1.0) || in.n_actions == 0 ||
        !(in.log_class_size >= 0.0))
        throw std::invalid_argument("schedule inputs out of range");
}

}  // namespace

BoostSchedule supervised_schedule(const ScheduleInputs& in) {
    check_inputs(in);
    const double a = static_cast<double>(in.n_actions);
    const double h = 1.0 - in.gamma;
    const double c = in.mismatch;
    const double e = in.epsilon;
    BoostSchedule out;
    if (in.mode == AccessMode::episodic) {
        out.t_rounds = std::ceil(16.0 * c * c / (std::pow(h, 3) * e));
        out.n_inner = std::ceil(std::pow(16.0 * a * c / (h * h * in.alpha * e), 2));
        out.m_episodes =
            std::ceil(sample_size(in.log_class_size, h * h * in.alpha * e / (8.0 * c * a), in.delta / (out.n_inner * out.t_rounds)));
        out.p_episodes = 0;
    } else {
        out.t_rounds = std::ceil(8.0 * c * c / (std::pow(h, 6) * e * e));
        out.n_inner = std::ceil(std::pow(16.0 * a * c / (std::pow(h, 3) * in.alpha * e), 2));
        out.p_episodes = std::ceil(200.0 * a * a * c * c / (std::pow(h, 6) * e * e) *
                                   std::log(2.0 * out.t_rounds * out.n_inner / in.delta));
        out.m_episodes = std::ceil(sample_size(in.log_class_size, std::pow(h, 3) * in.alpha * e / (8.0 * a * c),
                                               in.delta / (2.0 * out.n_inner * out.t_rounds)));
    }
    return out;
}

BoostSchedule online_schedule(const ScheduleInputs& in) {
    check_inputs(in);
    const double a = static_cast<double>(in.n_actions);
    const double h = 1.0 - in.gamma;
    const double c = in.mismatch;
    const double e = in.epsilon;
    BoostSchedule out;
    if (in.mode == AccessMode::episodic) {
        out.t_rounds = std::ceil(16.0 * c * c / (std::pow(h, 3) * e));
        out.n_inner = std::ceil(std::pow(16.0 * a * c / (h * h * in.alpha * e), 2));
        const double log_term = std::log(out.t_rounds / in.delta);
        const double concentration =
            1000.0 * a * a * c * c / (std::pow(h, 4) * e * e * in.alpha * in.alpha) * log_term * log_term;
        // M >= k R_W(M) with R_W(M) = sqrt(M log|W|) reduces to M >= k^2 log|W|
        const double k = 8.0 * a * c / (h * h * in.alpha * e);
        out.m_episodes = std::ceil(std::max(concentration, k * k * in.log_class_size));
        out.p_episodes = 0;
    } else {
        out.t_rounds = std::ceil(100.0 * c * c / (std::pow(h, 6) * e * e));
        out.n_inner = std::ceil(std::pow(20.0 * a * c / (std::pow(h, 3) * in.alpha * e), 2));
        const double log_term = std::log(out.t_rounds / in.delta);
        out.p_episodes = std::ceil(250.0 * c * c * a * a / (std::pow(h, 6) * e * e) * log_term * log_term);
        const double concentration = std::pow(40.0 * a * c / (std::pow(h, 3) * in.alpha * e) * log_term, 2);
        const double k = 10.0 * a * c / (std::pow(h, 3) * in.alpha * e);
        out.m_episodes = std::ceil(std::max(concentration, k * k * in.log_class_size));
    }
    return out;
}

namespace {

const char* mode_name(AccessMode mode) { return mode == AccessMode::episodic ? "episodic" : "nu_reset"; }

const char* init_name(InitPolicy init) { return init == InitPolicy::uniform ? "uniform" : "first_base"; }

InitPolicy init_from_name(const std::string& name) {
    if (name == "uniform") return InitPolicy::uniform;
    if (name == "first_base") return InitPolicy::first_base;
    throw std::invalid_argument("unknown initial policy '" + name + "'");
}

AccessMode mode_from_name(const std::string& name) {
    if (name == "episodic") return AccessMode::episodic;
    if (name == "nu_reset") return AccessMode::nu_reset;
    throw std::invalid_argument("unknown access mode '" + name + "'");
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const BoostConfig& cfg) {
    nlohmann::json j = {{"t_rounds", cfg.t_rounds}, {"n_inner", cfg.n_inner},   {"m_episodes", cfg.m_episodes},
                        {"p_episodes", cfg.p_episodes}, {"alpha", cfg.alpha}, {"mode", mode_name(cfg.mode)},
                        {"init_policy", init_name(cfg.init)}, {"seed", cfg.seed}};
    put_optional(j, "c_inf_hint", cfg.c_inf_hint);
    put_optional(j, "beta", cfg.beta);
    put_optional(j, "g_lip", cfg.g_lip);
    put_optional(j, "horizon_cap", cfg.horizon_cap);
    put_optional(j, "hedge_gain_range", cfg.hedge_gain_range);
    return j;
}

BoostConfig boost_config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {"t_rounds", "n_inner",     "m_episodes", "p_episodes",
                                                   "alpha",    "mode",        "seed",       "init_policy",       "c_inf_hint",
                                                   "beta",     "g_lip",       "horizon_cap", "hedge_gain_range"};
    if (!j.is_object()) throw std::invalid_argument("boost config must be an object");
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("unknown boost config key '" + key + "'");
    BoostConfig cfg;
    cfg.t_rounds = j.value("t_rounds", cfg.t_rounds);
    cfg.n_inner = j.value("n_inner", cfg.n_inner);
    cfg.m_episodes = j.value("m_episodes", cfg.m_episodes);
    cfg.p_episodes = j.value("p_episodes", cfg.p_episodes);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.mode = mode_from_name(j.value("mode", std::string("episodic")));
    cfg.seed = j.value("seed", cfg.seed);
    cfg.init = init_from_name(j.value("init_policy", std::string("uniform")));
    get_optional(j, "c_inf_hint", cfg.c_inf_hint);
    get_optional(j, "beta", cfg.beta);
    get_optional(j, "g_lip", cfg.g_lip);
    get_optional(j, "horizon_cap", cfg.horizon_cap);
    get_optional(j, "hedge_gain_range", cfg.hedge_gain_range);
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const RunReport& report) {
    nlohmann::json rounds = nlohmann::json::array();
    nlohmann::json etas = nlohmann::json::array();
    for (const auto& r : report.rounds) {
        rounds.push_back({{"t", r.t},
                          {"eta", r.eta},
                          {"exact_value", r.exact_value},
                          {"exact_value_mu", r.exact_value_mu},
                          {"episodes_used", r.episodes_used},
                          {"episodes_cum", r.episodes_cum}});
        etas.push_back(r.eta);
    }
    nlohmann::json j = {{"final_value", report.final_value},
                        {"v_star", report.v_star},
                        {"gap", report.gap},
                        {"relative_gap", report.relative_gap},
                        {"chosen_round", report.chosen_round},
                        {"total_episodes", report.total_episodes},
                        {"expected_episodes", report.expected_episodes},
                        {"c_inf_used", finite_or_null(report.c_inf_used)},
                        {"c_inf_iterates", finite_or_null(report.c_inf_iterates)},
                        {"eta_trace", etas},
                        {"rounds", rounds},
                        {"sampler",
                         {{"episodes", report.sampler.episodes},
                          {"steps", report.sampler.steps},
                          {"state_cap_hits", report.sampler.state_cap_hits},
                          {"return_cap_hits", report.sampler.return_cap_hits}}}};
    if (!report.hedge_regret.empty()) {
        j["hedge"] = {{"regret", report.hedge_regret},
                      {"expected_regret", report.hedge_expected_regret},
                      {"regret_bound", report.hedge_regret_bound}};
    }
    return j;
}

void write_curve_csv(std::ostream& out, const RunReport& report) {
    out << "t,eta,exact_value,episodes_cum\n" << std::setprecision(17);
    for (const auto& r : report.rounds) out << r.t << ',' << r.eta << ',' << r.exact_value << ',' << r.episodes_cum << '\n';
}

}  // namespace rlboost
