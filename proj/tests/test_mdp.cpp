#include "rlboost/envs.hpp"
#include "rlboost/mdp.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace rlboost;

namespace {

TabularMDP two_state(double gamma) {
    Eigen::MatrixXd p(4, 2);
    p << 1, 0, 0, 1, 0.5, 0.5, 0, 1;
    Eigen::MatrixXd r(2, 2);
    r << 0, 1, 0.5, 0;
    return TabularMDP(2, 2, p, r, gamma, Eigen::Vector2d(1, 0));
}

}  // namespace

TEST_CASE("constructor rejects broken models") {
    Eigen::MatrixXd p(4, 2);
    p << 1, 0, 0, 1, 0.5, 0.5, 0, 1;
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2, 2);
    const Eigen::Vector2d d0(1, 0);
    CHECK_NOTHROW(TabularMDP(2, 2, p, r, 0.9, d0));
    CHECK_THROWS_AS(TabularMDP(2, 2, p, r, 1.0, d0), ModelError);
    CHECK_THROWS_AS(TabularMDP(2, 2, p, r, -0.1, d0), ModelError);

    Eigen::MatrixXd bad_row = p;
    bad_row(2, 0) = 0.6;
    CHECK_THROWS_AS(TabularMDP(2, 2, bad_row, r, 0.9, d0), ModelError);

    Eigen::MatrixXd negative = p;
    negative(2, 0) = -0.5;
    negative(2, 1) = 1.5;
    CHECK_THROWS_AS(TabularMDP(2, 2, negative, r, 0.9, d0), ModelError);

    Eigen::MatrixXd big_reward = r;
    big_reward(0, 0) = 1.5;
    CHECK_THROWS_AS(TabularMDP(2, 2, p, big_reward, 0.9, d0), ModelError);

    CHECK_THROWS_AS(TabularMDP(2, 2, p, r, 0.9, Eigen::Vector2d(0.7, 0.7)), ModelError);
    CHECK_THROWS_AS(TabularMDP(2, 2, p, r, 0.9, d0, Eigen::Vector3d(1, 0, 0)), ModelError);
    CHECK_THROWS_AS(TabularMDP(2, 2, Eigen::MatrixXd::Ones(3, 2) / 2, r, 0.9, d0), ModelError);
}

TEST_CASE("index checks") {
    const TabularMDP mdp = two_state(0.9);
    Rng rng(1);
    CHECK_THROWS_AS(sample_transition(mdp, 2, 0, rng), std::out_of_range);
    CHECK_THROWS_AS(sample_transition(mdp, 0, 2, rng), std::out_of_range);
    CHECK_THROWS_AS(mdp.check_state(5), std::out_of_range);
}

TEST_CASE("policy tables must be row stochastic") {
    Eigen::MatrixXd t(2, 2);
    t << 0.5, 0.5, 0.2, 0.7;
    CHECK_THROWS_AS(TabularPolicy{t}, ModelError);
    t(1, 1) = 0.8;
    const TabularPolicy ok(t);
    CHECK(ok.action_distribution(1)(0) == doctest::Approx(0.2));
    CHECK_THROWS_AS(ok.action_distribution(2), std::out_of_range);
    const TabularPolicy det = TabularPolicy::deterministic({1, 0}, 2);
    CHECK(det.table()(0, 1) == 1.0);
    CHECK(det.table()(1, 0) == 1.0);
}

TEST_CASE("sampled transitions follow the kernel") {
    const TabularMDP mdp = two_state(0.9);
    Rng rng(7);
    constexpr int n = 40000;
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += static_cast<int>(sample_transition(mdp, 1, 0, rng));
    // Bernoulli(0.5): 4 sd = 4 * 0.5 / sqrt(n)
    CHECK(std::abs(ones / double(n) - 0.5) < 4.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("episode lengths are geometric and the cap is respected") {
    const TabularMDP mdp = make_random_mdp(4, 2, 2, 3, 0.8);
    const UniformPolicy pi(2);
    Rng rng(11);
    constexpr int n = 40000;
    double total = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto traj = rollout_episode(mdp, pi, mdp.start_dist(), rng, 10000);
        CHECK(traj.terminated);
        total += double(traj.steps.size());
        sq += double(traj.steps.size()) * double(traj.steps.size());
    }
    const double mean = total / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0 / (1.0 - 0.8)) < 4.0 * se);

    std::size_t capped = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto traj = rollout_episode(mdp, pi, mdp.start_dist(), rng, 3);
        CHECK(traj.steps.size() <= 3);
        if (!traj.terminated) {
            CHECK(traj.steps.size() == 3);
            ++capped;
        }
    }
    // P(survive 3 steps) = 0.8^3
    CHECK(std::abs(capped / 2000.0 - 0.512) < 0.05);
}

TEST_CASE("discounted return sums gamma^t r_t") {
    Trajectory traj;
    traj.steps = {{0, 0, 1.0}, {1, 1, 0.5}, {0, 1, 0.25}};
    CHECK(discounted_return(traj, 0.5) == doctest::Approx(1.0 + 0.25 + 0.0625));
}

TEST_CASE("rollouts are reproducible under a fixed seed") {
    const TabularMDP mdp = make_random_mdp(5, 3, 3, 9, 0.9);
    const UniformPolicy pi(3);
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 50; ++i) {
        const auto ta = rollout_episode(mdp, pi, mdp.start_dist(), a, 100);
        const auto tb = rollout_episode(mdp, pi, mdp.start_dist(), b, 100);
        REQUIRE(ta.steps.size() == tb.steps.size());
        for (std::size_t k = 0; k < ta.steps.size(); ++k) CHECK(ta.steps[k].state == tb.steps[k].state);
    }
}

TEST_CASE("split streams are independent of the parent's position") {
    Rng a(5);
    Rng b(5);
    b.next_u64();
    CHECK(a.split(3).next_u64() == b.split(3).next_u64());
    CHECK(a.split(3).next_u64() != a.split(4).next_u64());
}

TEST_CASE("json round trip preserves the model") {
    const TabularMDP mdp = make_random_mdp(4, 3, 2, 17, 0.85);
    const TabularMDP back = mdp_from_json(to_json(mdp));
    CHECK(back.n_states() == 4);
    CHECK(back.n_actions() == 3);
    CHECK(back.gamma() == mdp.gamma());
    CHECK((back.transition() - mdp.transition()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.reward() - mdp.reward()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.reset_dist().has_value());
    CHECK((*back.reset_dist() - *mdp.reset_dist()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(mdp_from_json(nlohmann::json{{"gamma", 0.9}}), ModelError);
}

TEST_CASE("default horizon cap") {
    CHECK(two_state(0.9).default_horizon_cap() == static_cast<std::size_t>(std::ceil(std::log(1e6) / 0.1)));
}
