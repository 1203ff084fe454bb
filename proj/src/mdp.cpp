#include "rlboost/mdp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rlboost {

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

std::size_t Rng::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("categorical: weights must have positive mass");
    double u = uniform() * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    // rounding left u marginally above the remaining mass
    return last_positive;
}

void check_distribution(const Eigen::Ref<const Eigen::VectorXd>& p, const std::string& what) {
    if (p.size() == 0) throw ModelError(what + ": empty distribution");
    if (!p.allFinite()) throw ModelError(what + ": non-finite entry");
    if (p.minCoeff() < 0.0) throw ModelError(what + ": negative probability");
    if (std::abs(p.sum() - 1.0) > kSimplexTolerance) {
        std::ostringstream msg;
        msg << what << ": sums to " << p.sum() << ", expected 1";
        throw ModelError(msg.str());
    }
}

TabularMDP::TabularMDP(std::size_t n_states, std::size_t n_actions, Eigen::MatrixXd transition,
                       Eigen::MatrixXd reward, double gamma, Eigen::VectorXd start_dist,
                       std::optional<Eigen::VectorXd> reset_dist)
    : n_states_(n_states),
      n_actions_(n_actions),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      gamma_(gamma),
      start_dist_(std::move(start_dist)),
      reset_dist_(std::move(reset_dist)) {
    if (n_states_ == 0 || n_actions_ == 0) throw ModelError("MDP needs at least one state and one action");
    const auto rows = static_cast<Eigen::Index>(n_states_ * n_actions_);
    const auto ns = static_cast<Eigen::Index>(n_states_);
    const auto na = static_cast<Eigen::Index>(n_actions_);
    if (transition_.rows() != rows || transition_.cols() != ns)
        throw ModelError("transition tensor has wrong shape");
    if (reward_.rows() != ns || reward_.cols() != na) throw ModelError("reward matrix has wrong shape");
    if (!(gamma_ >= 0.0 && gamma_ < 1.0)) throw ModelError("gamma must lie in [0, 1)");
    for (Eigen::Index r = 0; r < rows; ++r) {
        std::ostringstream what;
        what << "transition row (s=" << r / na << ", a=" << r % na << ")";
        check_distribution(transition_.row(r).transpose(), what.str());
    }
    if (!reward_.allFinite() || reward_.minCoeff() < 0.0 || reward_.maxCoeff() > 1.0)
        throw ModelError("rewards must lie in [0, 1]");
    if (start_dist_.size() != ns) throw ModelError("start_dist has wrong length");
    check_distribution(start_dist_, "start_dist");
    if (reset_dist_) {
        if (reset_dist_->size() != ns) throw ModelError("reset_dist has wrong length");
        check_distribution(*reset_dist_, "reset_dist");
    }
}

std::size_t TabularMDP::default_horizon_cap() const {
    return static_cast<std::size_t>(std::ceil(std::log(1e6) / (1.0 - gamma_)));
}

void TabularMDP::check_state(StateIndex s) const {
    if (s >= n_states_) throw std::out_of_range("state index " + std::to_string(s) + " out of range");
}

void TabularMDP::check_action(ActionIndex a) const {
    if (a >= n_actions_) throw std::out_of_range("action index " + std::to_string(a) + " out of range");
}

ActionIndex Policy::sample_action(StateIndex s, Rng& rng) const {
    const Eigen::VectorXd p = action_distribution(s);
    return rng.categorical(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

TabularPolicy::TabularPolicy(PolicyMatrix table, std::string name) : table_(std::move(table)), name_(std::move(name)) {
    if (table_.rows() == 0 || table_.cols() == 0) throw ModelError("policy table is empty");
    for (Eigen::Index s = 0; s < table_.rows(); ++s)
        check_distribution(table_.row(s).transpose(), "policy row " + std::to_string(s));
}

TabularPolicy TabularPolicy::deterministic(const std::vector<ActionIndex>& actions, std::size_t n_actions,
                                           std::string name) {
    PolicyMatrix table = PolicyMatrix::Zero(static_cast<Eigen::Index>(actions.size()),
                                            static_cast<Eigen::Index>(n_actions));
    for (std::size_t s = 0; s < actions.size(); ++s) {
        if (actions[s] >= n_actions) throw std::out_of_range("deterministic policy action out of range");
        table(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(actions[s])) = 1.0;
    }
    return TabularPolicy(std::move(table), std::move(name));
}

Eigen::VectorXd TabularPolicy::action_distribution(StateIndex s) const {
    if (s >= n_states()) throw std::out_of_range("policy queried at unknown state");
    return table_.row(static_cast<Eigen::Index>(s)).transpose();
}

ActionIndex TabularPolicy::sample_action(StateIndex s, Rng& rng) const {
    if (s >= n_states()) throw std::out_of_range("policy queried at unknown state");
    const auto row = table_.row(static_cast<Eigen::Index>(s));
    double u = rng.uniform();
    ActionIndex last = 0;
    for (Eigen::Index a = 0; a < row.size(); ++a) {
        if (row(a) <= 0.0) continue;
        last = static_cast<ActionIndex>(a);
        if (u < row(a)) return last;
        u -= row(a);
    }
    return last;
}

Eigen::VectorXd UniformPolicy::action_distribution(StateIndex) const {
    return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_actions_), 1.0 / static_cast<double>(n_actions_));
}

PolicyMatrix tabulate(const Policy& policy, std::size_t n_states) {
    PolicyMatrix table(static_cast<Eigen::Index>(n_states), static_cast<Eigen::Index>(policy.n_actions()));
    for (std::size_t s = 0; s < n_states; ++s) table.row(static_cast<Eigen::Index>(s)) = policy.action_distribution(s);
    for (Eigen::Index s = 0; s < table.rows(); ++s)
        check_distribution(table.row(s).transpose(), policy.name() + " at state " + std::to_string(s));
    return table;
}

StateIndex sample_state(const Eigen::Ref<const Eigen::VectorXd>& dist, Rng& rng) {
    return rng.categorical(std::span<const double>(dist.data(), static_cast<std::size_t>(dist.size())));
}

StateIndex sample_transition(const TabularMDP& mdp, StateIndex s, ActionIndex a, Rng& rng) {
    mdp.check_state(s);
    mdp.check_action(a);
    const auto row = mdp.transition_row(s, a);
    double u = rng.uniform();
    StateIndex last = 0;
    for (Eigen::Index next = 0; next < row.size(); ++next) {
        if (row(next) <= 0.0) continue;
        last = static_cast<StateIndex>(next);
        if (u < row(next)) return last;
        u -= row(next);
    }
    return last;
}

Trajectory rollout_episode(const TabularMDP& mdp, const Policy& policy,
                           const Eigen::Ref<const Eigen::VectorXd>& init_dist, Rng& rng,
                           std::size_t horizon_cap) {
    if (horizon_cap == 0) throw std::invalid_argument("horizon_cap must be positive");
    Trajectory traj;
    StateIndex s = sample_state(init_dist, rng);
    for (std::size_t t = 0; t < horizon_cap; ++t) {
        const ActionIndex a = policy.sample_action(s, rng);
        traj.steps.push_back({s, a, mdp.reward(s, a)});
        if (!rng.bernoulli(mdp.gamma())) {
            traj.terminated = true;
            break;
        }
        s = sample_transition(mdp, s, a, rng);
    }
    return traj;
}

double discounted_return(const Trajectory& traj, double gamma) {
    double total = 0.0;
    double discount = 1.0;
    for (const Step& step : traj.steps) {
        total += discount * step.reward;
        discount *= gamma;
    }
    return total;
}

namespace {

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

nlohmann::json to_json(const TabularMDP& mdp) {
    nlohmann::json transition = nlohmann::json::array();
    nlohmann::json reward = nlohmann::json::array();
    for (StateIndex s = 0; s < mdp.n_states(); ++s) {
        nlohmann::json per_action = nlohmann::json::array();
        nlohmann::json rewards = nlohmann::json::array();
        for (ActionIndex a = 0; a < mdp.n_actions(); ++a) {
            per_action.push_back(to_std(mdp.transition_row(s, a).transpose()));
            rewards.push_back(mdp.reward(s, a));
        }
        transition.push_back(std::move(per_action));
        reward.push_back(std::move(rewards));
    }
    nlohmann::json j{{"n_states", mdp.n_states()},
                     {"n_actions", mdp.n_actions()},
                     {"transition", std::move(transition)},
                     {"reward", std::move(reward)},
                     {"gamma", mdp.gamma()},
                     {"start_dist", to_std(mdp.start_dist())}};
    if (mdp.reset_dist()) j["reset_dist"] = to_std(*mdp.reset_dist());
    return j;
}

TabularMDP mdp_from_json(const nlohmann::json& j) {
    try {
        const auto ns = j.at("n_states").get<std::size_t>();
        const auto na = j.at("n_actions").get<std::size_t>();
        const auto& tr = j.at("transition");
        const auto& rw = j.at("reward");
        if (tr.size() != ns || rw.size() != ns) throw ModelError("transition/reward outer length != n_states");
        Eigen::MatrixXd transition(static_cast<Eigen::Index>(ns * na), static_cast<Eigen::Index>(ns));
        Eigen::MatrixXd reward(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(na));
        for (std::size_t s = 0; s < ns; ++s) {
            if (tr[s].size() != na || rw[s].size() != na) throw ModelError("per-state action length != n_actions");
            for (std::size_t a = 0; a < na; ++a) {
                const Eigen::VectorXd row = vector_from_json(tr[s][a]);
                if (static_cast<std::size_t>(row.size()) != ns) throw ModelError("transition row length != n_states");
                transition.row(static_cast<Eigen::Index>(s * na + a)) = row.transpose();
                reward(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)) = rw[s][a].get<double>();
            }
        }
        std::optional<Eigen::VectorXd> reset;
        if (j.contains("reset_dist") && !j.at("reset_dist").is_null()) reset = vector_from_json(j.at("reset_dist"));
        return TabularMDP(ns, na, std::move(transition), std::move(reward), j.at("gamma").get<double>(),
                          vector_from_json(j.at("start_dist")), std::move(reset));
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed MDP document: ") + e.what());
    }
}

}  // namespace rlboost
