#include "rlboost/policy_tree.hpp"

#include "rlboost/geometry.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numeric>

namespace rlboost {

Shrub::Shrub(std::vector<double> weights, std::vector<PolicyPtr> bases)
    : weights_(std::move(weights)), bases_(std::move(bases)) {
    if (weights_.empty()) throw std::invalid_argument("shrub needs at least one base policy");
    if (weights_.size() != bases_.size()) throw std::invalid_argument("shrub weights and bases differ in length");
    for (std::size_t n = 0; n < bases_.size(); ++n) {
        if (!bases_[n]) throw std::invalid_argument("shrub base policy is null");
        if (!std::isfinite(weights_[n])) throw std::invalid_argument("shrub weight is not finite");
        if (bases_[n]->n_actions() != bases_.front()->n_actions())
            throw std::invalid_argument("shrub bases disagree on the action count");
    }
}

double Shrub::weight_sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

Eigen::VectorXd shrub_eval(const Shrub& shrub, StateIndex s, EvalCounter* counter) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shrub.n_actions()));
    for (std::size_t n = 0; n < shrub.size(); ++n) {
        out += shrub.weights()[n] * shrub.bases()[n]->action_distribution(s);
        if (counter) counter->base_calls.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

Eigen::VectorXd ProjectedShrub::action_distribution(StateIndex s) const {
    return project_simplex(shrub_eval(*shrub_, s));
}

PolicyTree::PolicyTree(std::vector<double> top_weights, std::vector<ShrubPtr> shrubs)
    : top_weights_(std::move(top_weights)), shrubs_(std::move(shrubs)) {
    if (shrubs_.empty()) throw std::invalid_argument("policy tree needs at least one shrub");
    if (top_weights_.size() != shrubs_.size())
        throw std::invalid_argument("policy tree weights and shrubs differ in length");
    for (std::size_t t = 0; t < shrubs_.size(); ++t) {
        if (!shrubs_[t]) throw std::invalid_argument("policy tree shrub is null");
        if (shrubs_[t]->n_actions() != shrubs_.front()->n_actions())
            throw std::invalid_argument("policy tree shrubs disagree on the action count");
    }
    const Eigen::Map<const Eigen::VectorXd> w(top_weights_.data(), static_cast<Eigen::Index>(top_weights_.size()));
    check_distribution(w, "policy tree top weights");
}

PolicyTree PolicyTree::from_base(PolicyPtr base) {
    return PolicyTree({1.0}, {std::make_shared<const Shrub>(std::move(base))});
}

Eigen::VectorXd PolicyTree::action_distribution(StateIndex s) const { return tree_action_dist(*this, s); }

std::size_t PolicyTree::evaluation_cost() const {
    std::size_t total = 0;
    for (const auto& shrub : shrubs_) total += shrub->size();
    return total;
}

Eigen::VectorXd tree_action_dist(const PolicyTree& tree, StateIndex s, EvalCounter* counter) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tree.n_actions()));
    for (std::size_t t = 0; t < tree.size(); ++t)
        out += tree.top_weights()[t] * project_simplex(shrub_eval(*tree.shrubs()[t], s, counter));
    return out;
}

PolicyTree mix_tree(const PolicyTree& tree, Shrub new_shrub, double eta) {
    std::vector<Shrub> one;
    one.push_back(std::move(new_shrub));
    return mix_tree(tree, std::move(one), eta);
}

PolicyTree mix_tree(const PolicyTree& tree, std::vector<Shrub> new_shrubs, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("mix_tree: eta must lie in [0, 1]");
    if (new_shrubs.empty()) throw std::invalid_argument("mix_tree: no shrubs to mix in");
    if (eta == 0.0) return tree;

    std::vector<double> weights;
    std::vector<ShrubPtr> shrubs;
    for (std::size_t t = 0; t < tree.size(); ++t) {
        const double w = (1.0 - eta) * tree.top_weights()[t];
        if (w == 0.0) continue;
        weights.push_back(w);
        shrubs.push_back(tree.shrubs()[t]);
    }
    const double share = eta / static_cast<double>(new_shrubs.size());
    for (Shrub& shrub : new_shrubs) {
        if (shrub.n_actions() != tree.n_actions()) throw std::invalid_argument("mix_tree: action count mismatch");
        weights.push_back(share);
        shrubs.push_back(std::make_shared<const Shrub>(std::move(shrub)));
    }
    return PolicyTree(std::move(weights), std::move(shrubs));
}

nlohmann::json to_json(const Shrub& shrub) {
    nlohmann::json bases = nlohmann::json::array();
    for (const auto& base : shrub.bases()) bases.push_back(base->name());
    return {{"weights", shrub.weights()}, {"bases", std::move(bases)}};
}

nlohmann::json to_json(const PolicyTree& tree) {
    nlohmann::json shrubs = nlohmann::json::array();
    for (const auto& shrub : tree.shrubs()) shrubs.push_back(to_json(*shrub));
    return {{"n_actions", tree.n_actions()},
            {"top_weights", tree.top_weights()},
            {"shrubs", std::move(shrubs)},
            {"evaluation_cost", tree.evaluation_cost()}};
}

}  // namespace rlboost
