#pragma once

#include "rlboost/rng.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlboost {

using StateIndex = std::size_t;
using ActionIndex = std::size_t;

/// Row-stochastic policy table, one row per state.
using PolicyMatrix = Eigen::MatrixXd;

/// Thrown when an MDP or policy violates its structural invariants.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tolerance on distribution sums accepted by the validators.
inline constexpr double kSimplexTolerance = 1e-9;

/**
 * Finite discounted MDP.
 *
 * Transitions are stored as one (S*A) x S matrix; the row for (s, a) is
 * s * n_actions + a. Rewards are an S x A matrix with entries in [0, 1].
 * The constructor validates every invariant and throws ModelError.
 */
class TabularMDP {
public:
    TabularMDP(std::size_t n_states, std::size_t n_actions, Eigen::MatrixXd transition,
               Eigen::MatrixXd reward, double gamma, Eigen::VectorXd start_dist,
               std::optional<Eigen::VectorXd> reset_dist = std::nullopt);

    std::size_t n_states() const { return n_states_; }
    std::size_t n_actions() const { return n_actions_; }
    double gamma() const { return gamma_; }

    const Eigen::MatrixXd& transition() const { return transition_; }
    auto transition_row(StateIndex s, ActionIndex a) const { return transition_.row(s * n_actions_ + a); }
    double transition_prob(StateIndex s, ActionIndex a, StateIndex next) const {
        return transition_(s * n_actions_ + a, next);
    }

    const Eigen::MatrixXd& reward() const { return reward_; }
    double reward(StateIndex s, ActionIndex a) const { return reward_(s, a); }

    const Eigen::VectorXd& start_dist() const { return start_dist_; }
    const std::optional<Eigen::VectorXd>& reset_dist() const { return reset_dist_; }

    /// Default episode cap: ceil(ln(1e6) / (1 - gamma)).
    std::size_t default_horizon_cap() const;

    void check_state(StateIndex s) const;
    void check_action(ActionIndex a) const;

private:
    std::size_t n_states_;
    std::size_t n_actions_;
    Eigen::MatrixXd transition_;
    Eigen::MatrixXd reward_;
    double gamma_;
    Eigen::VectorXd start_dist_;
    std::optional<Eigen::VectorXd> reset_dist_;
};

/// Throws ModelError unless `p` is nonnegative and sums to one.
void check_distribution(const Eigen::Ref<const Eigen::VectorXd>& p, const std::string& what);

/**
 * Stochastic stationary policy over a finite action set.
 *
 * Implementations must be immutable after construction: every method is
 * const and may be called concurrently.
 */
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::size_t n_actions() const = 0;

    /// Probability vector of length n_actions().
    virtual Eigen::VectorXd action_distribution(StateIndex s) const = 0;

    /// Samples an action; the default draws from action_distribution().
    virtual ActionIndex sample_action(StateIndex s, Rng& rng) const;

    /// Stable identifier used in serialized reports.
    virtual std::string name() const { return "policy"; }
};

using PolicyPtr = std::shared_ptr<const Policy>;

/// Policy backed by an explicit S x A table.
class TabularPolicy final : public Policy {
public:
    explicit TabularPolicy(PolicyMatrix table, std::string name = "tabular");

    /// Deterministic policy picking actions[s] in state s.
    static TabularPolicy deterministic(const std::vector<ActionIndex>& actions, std::size_t n_actions,
                                       std::string name = "deterministic");

    std::size_t n_actions() const override { return static_cast<std::size_t>(table_.cols()); }
    std::size_t n_states() const { return static_cast<std::size_t>(table_.rows()); }
    Eigen::VectorXd action_distribution(StateIndex s) const override;
    ActionIndex sample_action(StateIndex s, Rng& rng) const override;
    std::string name() const override { return name_; }

    const PolicyMatrix& table() const { return table_; }

private:
    PolicyMatrix table_;
    std::string name_;
};

/// The uniformly random policy (pi_r).
class UniformPolicy final : public Policy {
public:
    explicit UniformPolicy(std::size_t n_actions) : n_actions_(n_actions) {}

    std::size_t n_actions() const override { return n_actions_; }
    Eigen::VectorXd action_distribution(StateIndex) const override;
    ActionIndex sample_action(StateIndex, Rng& rng) const override { return rng.uniform_index(n_actions_); }
    std::string name() const override { return "uniform"; }

private:
    std::size_t n_actions_;
};

/// Evaluates `policy` at every state, validating each row.
PolicyMatrix tabulate(const Policy& policy, std::size_t n_states);

struct Step {
    StateIndex state;
    ActionIndex action;
    double reward;
};

struct Trajectory {
    std::vector<Step> steps;
    /// True when the geometric termination coin fired before the horizon cap.
    bool terminated = false;
};

/// Draws s' ~ P(. | s, a). Throws std::out_of_range on bad indices.
StateIndex sample_transition(const TabularMDP& mdp, StateIndex s, ActionIndex a, Rng& rng);

/// Draws an index from a probability vector.
StateIndex sample_state(const Eigen::Ref<const Eigen::VectorXd>& dist, Rng& rng);

/**
 * Runs `policy` from s0 ~ init_dist. After each recorded step the episode ends
 * with probability 1 - gamma; it is cut after `horizon_cap` steps otherwise.
 */
Trajectory rollout_episode(const TabularMDP& mdp, const Policy& policy,
                           const Eigen::Ref<const Eigen::VectorXd>& init_dist, Rng& rng,
                           std::size_t horizon_cap);

/// Sum of gamma^t r_t over the recorded steps.
double discounted_return(const Trajectory& traj, double gamma);

nlohmann::json to_json(const TabularMDP& mdp);
TabularMDP mdp_from_json(const nlohmann::json& j);

}  // namespace rlboost
