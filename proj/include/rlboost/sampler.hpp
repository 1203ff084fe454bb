#pragma once

#include "rlboost/mdp.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace rlboost {

/// One sampler output: s ~ d^pi_mu and an unbiased estimate of Q^pi(s, .).
struct QSample {
    StateIndex state = 0;
    ActionIndex probe_action = 0;
    double ret = 0.0;        ///< undiscounted reward sum R from the accepted step on
    Eigen::VectorXd q_hat;   ///< |A| * R at probe_action, zero elsewhere
};

/// Counters accumulated across sampler calls.
struct SamplerStats {
    std::size_t episodes = 0;
    std::size_t steps = 0;
    std::size_t state_cap_hits = 0;   ///< phase 1 reached the cap before acceptance
    std::size_t return_cap_hits = 0;  ///< phase 2 was truncated by the cap

    SamplerStats& operator+=(const SamplerStats& other);
};

/**
 * Draws one (s, Q-hat) pair from a single episode.
 *
 * The probe action a' is drawn uniformly before anything else. Phase one walks
 * pi from s0 ~ mu and accepts the current state with probability 1 - gamma at
 * every step. Phase two plays a' there, then follows pi with termination
 * probability 1 - gamma, summing rewards without discounting.
 */
QSample sample_q(const TabularMDP& mdp, const Policy& policy, const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng,
                 std::size_t horizon_cap, SamplerStats* stats = nullptr);

/// `count` independent samples; episode i uses stream i of a seed drawn from `rng`.
std::vector<QSample> batch_sample(const TabularMDP& mdp, const Policy& policy,
                                  const Eigen::Ref<const Eigen::VectorXd>& mu, Rng& rng, std::size_t count,
                                  std::size_t horizon_cap, SamplerStats* stats = nullptr);

/// CSV with columns state,probe_action,R.
void write_samples_csv(std::ostream& out, std::span<const QSample> samples);

}  // namespace rlboost
