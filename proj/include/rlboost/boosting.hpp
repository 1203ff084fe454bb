#pragma once

#include "rlboost/mdp.hpp"
#include "rlboost/policy_tree.hpp"
#include "rlboost/sampler.hpp"
#include "rlboost/smoothing.hpp"
#include "rlboost/weak_learn.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace rlboost {

/// Episodic: samples start from d0 and the outer step is deterministic.
/// Nu-reset: samples start from the MDP's reset distribution and steps come from StepChooser.
enum class AccessMode { episodic, nu_reset };

/// Starting policy pi_0: the uniform policy (a tree over the base class when
/// it contains one deterministic policy per action) or the first base policy.
enum class InitPolicy { uniform, first_base };

struct BoostConfig {
    std::size_t t_rounds = 50;    ///< T, outer Frank-Wolfe rounds
    std::size_t n_inner = 25;     ///< N, inner boosting steps
    std::size_t m_episodes = 200; ///< M, episodes per weak-learner call (per round when online)
    std::size_t p_episodes = 500; ///< P, StepChooser episodes (nu-reset only)
    double alpha = 1.0;           ///< weak-learning edge assumed by the affine update
    AccessMode mode = AccessMode::episodic;
    InitPolicy init = InitPolicy::uniform;
    /// C_inf used by the episodic step min{1, 2 C / t}. Computed over the
    /// base class when absent.
    std::optional<double> c_inf_hint;
    /// Smoothing radius; default sqrt(1 / (alpha N)) / (|A| / (1 - gamma)), i.e. the
    /// unit-loss radius rescaled to the magnitude of Q-hat.
    std::optional<double> beta;
    std::optional<double> g_lip;   ///< default |A| / (1 - gamma)
    std::optional<std::size_t> horizon_cap;  ///< default ceil(ln(1e6) / (1 - gamma))
    /// Hedge gain range (online learner); default 2 (|A| / (1 - gamma) + G).
    std::optional<double> hedge_gain_range;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;

    double beta_or_default(const TabularMDP& mdp) const;
    double g_lip_or_default(const TabularMDP& mdp) const;
    std::size_t horizon_cap_or_default(const TabularMDP& mdp) const;
};

struct RoundRecord {
    std::size_t t = 0;
    double eta = 0.0;
    double exact_value = 0.0;        ///< V^{pi_t} from the start distribution
    double exact_value_mu = 0.0;     ///< V^{pi_t}_mu from the sampling distribution
    std::size_t episodes_used = 0;   ///< sampler episodes spent in round t
    std::size_t episodes_cum = 0;
};

struct RunReport {
    std::vector<RoundRecord> rounds;
    std::size_t total_episodes = 0;
    std::size_t expected_episodes = 0;  ///< T M N, T(MN + P), T M or T(M + P)
    std::size_t chosen_round = 0;       ///< output is pi_{chosen_round}
    double c_inf_used = 0.0;            ///< C_inf in the episodic step rule
    double final_value = 0.0;
    double v_star = 0.0;
    double gap = 0.0;           ///< V* - V
    double relative_gap = 0.0;  ///< (V* - V) / V*
    SamplerStats sampler;
    /// Online runs: realized and expected regret of each weak learner, worst over rounds.
    std::vector<double> hedge_regret;
    std::vector<double> hedge_expected_regret;
    double hedge_regret_bound = 0.0;
    /// C_inf over the iterates {pi_0..pi_T} measured after the run.
    double c_inf_iterates = 0.0;
};

struct BoostResult {
    PolicyTree policy;
    RunReport report;
    /// Tabulated pi_0..pi_T, kept for diagnostics.
    std::vector<PolicyMatrix> iterates;
};

/**
 * Monte Carlo Frank-Wolfe step: draws P samples under pi_prev from mu and
 * returns clip_[0,1]((1 - gamma)^2 / 2 * (G(pi_new) - G(pi_prev))), where
 * G(pi) averages q_hat^T pi(.|s) over the shared samples.
 */
double step_chooser(const TabularMDP& mdp, const Policy& pi_prev, const Policy& pi_new,
                    const Eigen::Ref<const Eigen::VectorXd>& mu, std::size_t p_episodes, Rng& rng,
                    std::size_t horizon_cap, SamplerStats* stats = nullptr);

/// Output of one inner boosting pass.
struct InnerBoostResult {
    Shrub shrub;             ///< rho_{t,N}
    PolicyMatrix shrub_values;  ///< shrub_eval at every state
    PolicyMatrix projected;  ///< Gamma[rho_{t,N}] at every state, i.e. pi'_t
};

/**
 * Inner loop with a supervised weak learner. For n = 1..N: sample M
 * (s, q_hat) pairs under pi_outer, turn each into the gain
 * -grad F[-q_hat](rho_{n-1}(s)), call the learner, and apply
 *   rho_n = (1 - eta_n) rho_{n-1} + (eta_n / alpha) A_n - eta_n (1/alpha - 1) pi_r,
 * eta_n = min{2/n, 1}. rho_0 is the first base policy.
 */
InnerBoostResult inner_boost_supervised(const TabularMDP& mdp, const Policy& pi_outer,
                                        const SupervisedWeakLearner& learner, const BoostConfig& cfg,
                                        const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng,
                                        SamplerStats* stats = nullptr);

/// Boosting with a supervised weak learner (ERM, optionally alpha-mixed).
BoostResult boost_supervised(const TabularMDP& mdp, const SupervisedWeakLearner& learner, const BoostConfig& cfg);

/// Boosting with N Hedge learners over the base class, refreshed every round.
BoostResult boost_online(const TabularMDP& mdp, const BasePolicyClass& base, const BoostConfig& cfg);

/// Loop sizes suggested by the worst-case guarantees; not meant for desk-scale runs.
struct BoostSchedule {
    double t_rounds = 0;
    double n_inner = 0;
    double m_episodes = 0;
    double p_episodes = 0;
};

struct ScheduleInputs {
    double epsilon;
    double delta;
    double mismatch;  ///< C_inf (episodic) or D_inf (nu-reset)
    double gamma;
    double alpha;
    std::size_t n_actions;
    double log_class_size;  ///< log |W|
    AccessMode mode;
};

/// Supervised loop; sample complexity m(eps, delta) = log|W| / eps^2 * log(1/delta).
BoostSchedule supervised_schedule(const ScheduleInputs& in);

/// Online loop with R_W(M) = sqrt(M log |W|).
BoostSchedule online_schedule(const ScheduleInputs& in);

nlohmann::json to_json(const BoostConfig& cfg);
BoostConfig boost_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunReport& report);

/// CSV with columns t,eta,exact_value,episodes_cum.
void write_curve_csv(std::ostream& out, const RunReport& report);

}  // namespace rlboost
