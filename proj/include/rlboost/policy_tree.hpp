#pragma once

#include "rlboost/mdp.hpp"

#include <nlohmann/json_fwd.hpp>

#include <atomic>
#include <memory>
#include <span>
#include <vector>

namespace rlboost {

/// Instrumentation hook: counts base-policy evaluations made through it.
struct EvalCounter {
    std::atomic<std::size_t> base_calls{0};
};

/**
 * Affine combination sum_n w_n pi_n of base policies. Weights may be negative,
 * so a shrub maps states to arbitrary real action vectors.
 */
class Shrub {
public:
    Shrub(std::vector<double> weights, std::vector<PolicyPtr> bases);

    /// Single base policy with weight one.
    explicit Shrub(PolicyPtr base) : Shrub({1.0}, {std::move(base)}) {}

    std::size_t size() const { return weights_.size(); }
    std::size_t n_actions() const { return bases_.front()->n_actions(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<PolicyPtr>& bases() const { return bases_; }

    /// Sum of the affine weights.
    double weight_sum() const;

private:
    std::vector<double> weights_;
    std::vector<PolicyPtr> bases_;
};

using ShrubPtr = std::shared_ptr<const Shrub>;

/// sum_n w_n * bases[n](s); exactly size() base evaluations.
Eigen::VectorXd shrub_eval(const Shrub& shrub, StateIndex s, EvalCounter* counter = nullptr);

/// The policy Gamma[lambda] obtained by projecting a shrub state by state.
class ProjectedShrub final : public Policy {
public:
    explicit ProjectedShrub(ShrubPtr shrub) : shrub_(std::move(shrub)) {}

    std::size_t n_actions() const override { return shrub_->n_actions(); }
    Eigen::VectorXd action_distribution(StateIndex s) const override;
    std::string name() const override { return "projected_shrub"; }

    const Shrub& shrub() const { return *shrub_; }

private:
    ShrubPtr shrub_;
};

/**
 * Two-layer policy circuit sum_t w_t Gamma[lambda_t] with w on the simplex.
 *
 * Shrubs are shared between copies, so snapshotting a tree after every round
 * costs one pointer per shrub.
 */
class PolicyTree final : public Policy {
public:
    PolicyTree(std::vector<double> top_weights, std::vector<ShrubPtr> shrubs);

    /// Tree holding a single base policy.
    static PolicyTree from_base(PolicyPtr base);

    std::size_t n_actions() const override { return shrubs_.front()->n_actions(); }
    Eigen::VectorXd action_distribution(StateIndex s) const override;
    std::string name() const override { return "policy_tree"; }

    std::size_t size() const { return shrubs_.size(); }
    const std::vector<double>& top_weights() const { return top_weights_; }
    const std::vector<ShrubPtr>& shrubs() const { return shrubs_; }

    /// Base-policy evaluations made by one action_distribution() call.
    std::size_t evaluation_cost() const;

private:
    std::vector<double> top_weights_;
    std::vector<ShrubPtr> shrubs_;
};

/// sum_t w_t project_simplex(shrub_eval(shrubs[t], s)).
Eigen::VectorXd tree_action_dist(const PolicyTree& tree, StateIndex s, EvalCounter* counter = nullptr);

/// (1 - eta) * tree + eta * Gamma[new_shrub]; shrubs left with zero weight are dropped.
PolicyTree mix_tree(const PolicyTree& tree, Shrub new_shrub, double eta);

/// (1 - eta) * tree + (eta / M) * sum_m Gamma[new_shrubs[m]].
PolicyTree mix_tree(const PolicyTree& tree, std::vector<Shrub> new_shrubs, double eta);

/// Base policy wrapper that counts its own evaluations.
class CountingPolicy final : public Policy {
public:
    CountingPolicy(PolicyPtr inner, EvalCounter& counter) : inner_(std::move(inner)), counter_(&counter) {}

    std::size_t n_actions() const override { return inner_->n_actions(); }
    Eigen::VectorXd action_distribution(StateIndex s) const override {
        counter_->base_calls.fetch_add(1, std::memory_order_relaxed);
        return inner_->action_distribution(s);
    }
    std::string name() const override { return inner_->name(); }

private:
    PolicyPtr inner_;
    EvalCounter* counter_;
};

nlohmann::json to_json(const Shrub& shrub);
nlohmann::json to_json(const PolicyTree& tree);

}  // namespace rlboost
