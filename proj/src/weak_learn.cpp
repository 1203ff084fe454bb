#include "rlboost/weak_learn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rlboost {

BasePolicyClass::BasePolicyClass(std::vector<PolicyPtr> policies, std::size_t n_states)
    : policies_(std::move(policies)), n_states_(n_states) {
    if (policies_.empty()) throw std::invalid_argument("base policy class is empty");
    tables_.reserve(policies_.size());
    for (const PolicyPtr& p : policies_) {
        if (!p) throw std::invalid_argument("base policy class holds a null policy");
        if (p->n_actions() != policies_.front()->n_actions())
            throw std::invalid_argument("base policies disagree on the action count");
        tables_.push_back(tabulate(*p, n_states_));
    }
}

std::size_t BasePolicyClass::index_of(const Policy* p) const {
    for (std::size_t k = 0; k < policies_.size(); ++k)
        if (policies_[k].get() == p) return k;
    return policies_.size();
}

namespace {

std::string deterministic_name(const std::vector<ActionIndex>& actions) {
    std::ostringstream out;
    out << "det:";
    for (std::size_t s = 0; s < actions.size(); ++s) out << (s ? "," : "") << actions[s];
    return out.str();
}

std::vector<ActionIndex> digits(std::uint64_t code, std::size_t n_states, std::size_t n_actions) {
    std::vector<ActionIndex> actions(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        actions[s] = static_cast<ActionIndex>(code % n_actions);
        code /= n_actions;
    }
    return actions;
}

PolicyPtr make_deterministic(const std::vector<ActionIndex>& actions, std::size_t n_actions) {
    return std::make_shared<const TabularPolicy>(
        TabularPolicy::deterministic(actions, n_actions, deterministic_name(actions)));
}

/// |A|^|S|, or nullopt past 2^62.
std::optional<std::uint64_t> class_size(std::size_t n_states, std::size_t n_actions) {
    std::uint64_t total = 1;
    for (std::size_t s = 0; s < n_states; ++s) {
        if (total > (std::uint64_t{1} << 62) / n_actions) return std::nullopt;
        total *= n_actions;
    }
    return total;
}

}  // namespace

BasePolicyClass all_deterministic_policies(std::size_t n_states, std::size_t n_actions) {
    constexpr std::uint64_t kMaxEnumerated = 1u << 20;
    const auto total = class_size(n_states, n_actions);
    if (!total || *total > kMaxEnumerated)
        throw std::invalid_argument("all_deterministic_policies: class too large to enumerate");
    std::vector<PolicyPtr> policies;
    policies.reserve(*total);
    for (std::uint64_t k = 0; k < *total; ++k) policies.push_back(make_deterministic(digits(k, n_states, n_actions), n_actions));
    return BasePolicyClass(std::move(policies), n_states);
}

BasePolicyClass random_deterministic_policies(std::size_t n_states, std::size_t n_actions, std::size_t count,
                                              Rng& rng) {
    if (count == 0) throw std::invalid_argument("random_deterministic_policies: count must be positive");
    const auto total = class_size(n_states, n_actions);
    if (total && count > *total) throw std::invalid_argument("random_deterministic_policies: count exceeds class size");
    std::set<std::vector<ActionIndex>> seen;
    std::vector<PolicyPtr> policies;
    while (policies.size() < count) {
        std::vector<ActionIndex> actions(n_states);
        for (auto& a : actions) a = rng.uniform_index(n_actions);
        if (seen.insert(actions).second) policies.push_back(make_deterministic(actions, n_actions));
    }
    return BasePolicyClass(std::move(policies), n_states);
}

BasePolicyClass threshold_policies(const std::vector<double>& feature, std::size_t n_actions) {
    if (feature.empty()) throw std::invalid_argument("threshold_policies: empty feature");
    std::vector<double> thresholds = feature;
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::set<std::vector<ActionIndex>> seen;
    std::vector<PolicyPtr> policies;
    for (double theta : thresholds)
        for (ActionIndex lo = 0; lo < n_actions; ++lo)
            for (ActionIndex hi = 0; hi < n_actions; ++hi) {
                std::vector<ActionIndex> actions(feature.size());
                for (std::size_t s = 0; s < feature.size(); ++s) actions[s] = feature[s] >= theta ? hi : lo;
                if (seen.insert(actions).second) policies.push_back(make_deterministic(actions, n_actions));
            }
    return BasePolicyClass(std::move(policies), feature.size());
}

double empirical_objective(const GainDataset& data, const PolicyMatrix& pi) {
    if (data.empty()) throw std::invalid_argument("empirical_objective: empty dataset");
    double total = 0.0;
    for (const GainItem& item : data) total += item.gain.dot(pi.row(static_cast<Eigen::Index>(item.state)).transpose());
    return total / static_cast<double>(data.size());
}

std::size_t erm_select(const GainDataset& data, const BasePolicyClass& base) {
    if (data.empty()) throw std::invalid_argument("erm_weak_learner: empty dataset");
    // Aggregate per state first; the objective is linear in the gains.
    const auto na = static_cast<Eigen::Index>(base.n_actions());
    std::map<StateIndex, Eigen::VectorXd> per_state;
    for (const GainItem& item : data) {
        if (item.state >= base.n_states()) throw std::out_of_range("gain item state outside the base class domain");
        if (item.gain.size() != na) throw std::invalid_argument("gain vector has wrong length");
        auto [it, inserted] = per_state.try_emplace(item.state, Eigen::VectorXd::Zero(na));
        it->second += item.gain;
    }
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < base.size(); ++k) {
        double value = 0.0;
        for (const auto& [s, g] : per_state) value += g.dot(base.table(k).row(static_cast<Eigen::Index>(s)).transpose());
        if (value > best_value) {
            best_value = value;
            best = k;
        }
    }
    return best;
}

PolicyPtr erm_weak_learner(const GainDataset& data, const BasePolicyClass& base) {
    return base.policy(erm_select(data, base));
}

AlphaMixturePolicy::AlphaMixturePolicy(PolicyPtr inner, double alpha) : inner_(std::move(inner)), alpha_(alpha) {
    if (!inner_) throw std::invalid_argument("alpha_mixture: null inner policy");
    if (!(alpha_ > 0.0 && alpha_ <= 1.0)) throw std::invalid_argument("alpha_mixture: alpha must lie in (0, 1]");
}

Eigen::VectorXd AlphaMixturePolicy::action_distribution(StateIndex s) const {
    const auto na = static_cast<Eigen::Index>(n_actions());
    return alpha_ * inner_->action_distribution(s) +
           Eigen::VectorXd::Constant(na, (1.0 - alpha_) / static_cast<double>(na));
}

std::string AlphaMixturePolicy::name() const {
    std::ostringstream out;
    out << "mix(" << alpha_ << "," << inner_->name() << ")";
    return out.str();
}

PolicyPtr alpha_mixture(PolicyPtr inner, double alpha) {
    if (alpha == 1.0) return inner;
    return std::make_shared<const AlphaMixturePolicy>(std::move(inner), alpha);
}

SupervisedWeakLearner::SupervisedWeakLearner(const BasePolicyClass& base, double mixture_alpha)
    : base_(&base), mixture_alpha_(mixture_alpha) {
    if (!(mixture_alpha_ > 0.0 && mixture_alpha_ <= 1.0))
        throw std::invalid_argument("weak learner alpha must lie in (0, 1]");
}

PolicyPtr SupervisedWeakLearner::learn(const GainDataset& data) const {
    return alpha_mixture(erm_weak_learner(data, *base_), mixture_alpha_);
}

bool SupervisedWeakLearner::admits(const Policy& p) const {
    if (base_->index_of(&p) < base_->size()) return true;
    const auto* mixed = dynamic_cast<const AlphaMixturePolicy*>(&p);
    return mixed && mixed->alpha() == mixture_alpha_ && base_->index_of(mixed->inner().get()) < base_->size();
}

HedgeState make_hedge(std::size_t n_experts, std::size_t total_rounds, double gain_range) {
    if (n_experts == 0 || total_rounds == 0) throw std::invalid_argument("make_hedge: need experts and rounds");
    if (!(gain_range > 0.0)) throw std::invalid_argument("make_hedge: gain_range must be positive");
    const double rate = std::sqrt(8.0 * std::log(static_cast<double>(n_experts)) / static_cast<double>(total_rounds)) / gain_range;
    return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_experts)), rate, 0};
}

Eigen::VectorXd hedge_probabilities(const HedgeState& state) {
    const Eigen::VectorXd w = (state.log_weights.array() - state.log_weights.maxCoeff()).exp();
    return w / w.sum();
}

std::pair<PolicyPtr, std::size_t> hedge_predict(const HedgeState& state, const BasePolicyClass& base, Rng& rng) {
    if (static_cast<std::size_t>(state.log_weights.size()) != base.size())
        throw std::invalid_argument("hedge_predict: state and base class differ in size");
    const Eigen::VectorXd p = hedge_probabilities(state);
    const std::size_t k = rng.categorical(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
    return {base.policy(k), k};
}

HedgeState hedge_update(HedgeState state, const BasePolicyClass& base, StateIndex s, const Eigen::VectorXd& gain) {
    if (!gain.allFinite()) throw std::invalid_argument("hedge_update: non-finite gain");
    if (static_cast<std::size_t>(state.log_weights.size()) != base.size())
        throw std::invalid_argument("hedge_update: state and base class differ in size");
    if (s >= base.n_states()) throw std::out_of_range("hedge_update: state outside the base class domain");
    const auto row = static_cast<Eigen::Index>(s);
    for (std::size_t k = 0; k < base.size(); ++k)
        state.log_weights(static_cast<Eigen::Index>(k)) += state.learning_rate * gain.dot(base.table(k).row(row).transpose());
    ++state.round;
    return state;
}

}  // namespace rlboost
