#pragma once

#include "rlboost/mdp.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace rlboost {

struct GainItem {
    StateIndex state;
    Eigen::VectorXd gain;  ///< linear gain over actions, scored as gain^T pi(.|state)
};

using GainDataset = std::vector<GainItem>;

/**
 * Finite, nonempty base class of policies on an MDP with a known number of
 * states. Tables are materialized once so learners can score policies
 * without virtual calls.
 */
class BasePolicyClass {
public:
    BasePolicyClass(std::vector<PolicyPtr> policies, std::size_t n_states);

    std::size_t size() const { return policies_.size(); }
    std::size_t n_states() const { return n_states_; }
    std::size_t n_actions() const { return policies_.front()->n_actions(); }
    const PolicyPtr& policy(std::size_t k) const { return policies_.at(k); }
    const std::vector<PolicyPtr>& policies() const { return policies_; }
    const PolicyMatrix& table(std::size_t k) const { return tables_.at(k); }
    std::string identifier(std::size_t k) const { return policies_.at(k)->name(); }

    /// Position of `p` in the class (pointer identity), or size() when absent.
    std::size_t index_of(const Policy* p) const;

private:
    std::vector<PolicyPtr> policies_;
    std::vector<PolicyMatrix> tables_;
    std::size_t n_states_;
};

/// All |A|^|S| deterministic policies; policy k plays digit s of k in base |A| at state s.
BasePolicyClass all_deterministic_policies(std::size_t n_states, std::size_t n_actions);

/// `count` distinct deterministic policies drawn uniformly (without replacement).
BasePolicyClass random_deterministic_policies(std::size_t n_states, std::size_t n_actions, std::size_t count, Rng& rng);

/**
 * Threshold rules over a scalar state feature: play a_hi when
 * feature(s) >= theta, a_lo otherwise, for every distinct feature value theta
 * and every ordered action pair. Duplicated tables are dropped.
 */
BasePolicyClass threshold_policies(const std::vector<double>& feature, std::size_t n_actions);

/// (1/m) sum_i gain_i^T pi(.|s_i).
double empirical_objective(const GainDataset& data, const PolicyMatrix& pi);

/// Index of the empirical maximizer; ties go to the lowest index.
std::size_t erm_select(const GainDataset& data, const BasePolicyClass& base);

/// The empirical maximizer over the base class.
PolicyPtr erm_weak_learner(const GainDataset& data, const BasePolicyClass& base);

/// alpha * inner + (1 - alpha) * uniform, state by state.
class AlphaMixturePolicy final : public Policy {
public:
    AlphaMixturePolicy(PolicyPtr inner, double alpha);

    std::size_t n_actions() const override { return inner_->n_actions(); }
    Eigen::VectorXd action_distribution(StateIndex s) const override;
    std::string name() const override;

    const PolicyPtr& inner() const { return inner_; }
    double alpha() const { return alpha_; }

private:
    PolicyPtr inner_;
    double alpha_;
};

PolicyPtr alpha_mixture(PolicyPtr inner, double alpha);

/**
 * Supervised weak learner used by the boosting loop: ERM over the base
 * class, optionally degraded by an alpha-mixture with the uniform policy.
 */
class SupervisedWeakLearner {
public:
    explicit SupervisedWeakLearner(const BasePolicyClass& base, double mixture_alpha = 1.0);

    PolicyPtr learn(const GainDataset& data) const;

    /// True when `p` is an output this learner may legitimately produce.
    bool admits(const Policy& p) const;

    const BasePolicyClass& base() const { return *base_; }
    double mixture_alpha() const { return mixture_alpha_; }

private:
    const BasePolicyClass* base_;
    double mixture_alpha_;
};

/// Exponential-weights (Hedge) state over the experts of a base class.
struct HedgeState {
    Eigen::VectorXd log_weights;
    double learning_rate;
    std::size_t round = 0;
};

/**
 * Fresh Hedge state for `total_rounds` rounds with gains spanning at most
 * `gain_range`: learning rate sqrt(8 ln K / M) / range.
 */
HedgeState make_hedge(std::size_t n_experts, std::size_t total_rounds, double gain_range = 1.0);

/// Normalized weights exp(log_weights) / sum.
Eigen::VectorXd hedge_probabilities(const HedgeState& state);

/// Samples an expert with probability proportional to exp(log_weights).
std::pair<PolicyPtr, std::size_t> hedge_predict(const HedgeState& state, const BasePolicyClass& base, Rng& rng);

/// log_weights[k] += learning_rate * gain^T pi_k(.|s); returns the new state.
HedgeState hedge_update(HedgeState state, const BasePolicyClass& base, StateIndex s, const Eigen::VectorXd& gain);

}  // namespace rlboost
