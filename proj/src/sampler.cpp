#include "rlboost/sampler.hpp"

#include <iomanip>
#include <ostream>

namespace rlboost {

SamplerStats& SamplerStats::operator+=(const SamplerStats& other) {
    episodes += other.episodes;
    steps += other.steps;
    state_cap_hits += other.state_cap_hits;
    return_cap_hits += other.return_cap_hits;
    return *this;
}

QSample sample_q(const TabularMDP& mdp, const Policy& policy, const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng,
                 std::size_t horizon_cap, SamplerStats* stats) {
    if (horizon_cap == 0) throw std::invalid_argument("horizon_cap must be positive");
    const double gamma = mdp.gamma();
    SamplerStats local;
    local.episodes = 1;

    StateIndex s = sample_state(mu, rng);
    const ActionIndex probe = rng.uniform_index(mdp.n_actions());

    std::size_t h = 0;
    for (;; ++h) {
        if (h == horizon_cap) {
            ++local.state_cap_hits;
            break;
        }
        if (!rng.bernoulli(gamma)) break;
        const ActionIndex a = policy.sample_action(s, rng);
        s = sample_transition(mdp, s, a, rng);
        ++local.steps;
    }

    double ret = mdp.reward(s, probe);
    ++local.steps;
    StateIndex cur = s;
    ActionIndex act = probe;
    for (std::size_t k = 1;; ++k) {
        if (!rng.bernoulli(gamma)) break;
        if (k == horizon_cap) {
            ++local.return_cap_hits;
            break;
        }
        cur = sample_transition(mdp, cur, act, rng);
        act = policy.sample_action(cur, rng);
        ret += mdp.reward(cur, act);
        ++local.steps;
    }

    if (stats) *stats += local;

    QSample out;
    out.state = s;
    out.probe_action = probe;
    out.ret = ret;
    out.q_hat = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mdp.n_actions()));
    out.q_hat(static_cast<Eigen::Index>(probe)) = static_cast<double>(mdp.n_actions()) * ret;
    return out;
}

std::vector<QSample> batch_sample(const TabularMDP& mdp, const Policy& policy,
                                  const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng, std::size_t count,
                                  std::size_t horizon_cap, SamplerStats* stats) {
    if (count == 0) throw std::invalid_argument("batch_sample: count must be positive");
    const Rng streams(rng.next_u64());
    std::vector<QSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng episode_rng = streams.split(i);
        out.push_back(sample_q(mdp, policy, mu, episode_rng, horizon_cap, stats));
    }
    return out;
}

void write_samples_csv(std::ostream& out, std::span<const QSample> samples) {
    out << "state,probe_action,R\n";
    out << std::setprecision(17);
    for (const QSample& sample : samples) out << sample.state << ',' << sample.probe_action << ',' << sample.ret << '\n';
}

}  // namespace rlboost
