#include "test_support.hpp"

#include "rlboost/envs.hpp"
#include "rlboost/oracle.hpp"

#include <doctest.h>

using namespace rlboost;
using namespace testsupport;

TEST_CASE("chain dynamics") {
    const TabularMDP chain = make_chain(5, 0.1, 0.9);
    CHECK(chain.n_states() == 5);
    CHECK(chain.n_actions() == 2);
    CHECK(chain.transition_prob(2, 1, 3) == doctest::Approx(0.9));
    CHECK(chain.transition_prob(2, 1, 1) == doctest::Approx(0.1));
    CHECK(chain.transition_prob(0, 0, 0) == doctest::Approx(0.9));  // clamped at the wall
    CHECK(chain.transition_prob(4, 1, 4) == doctest::Approx(0.9));
    CHECK(chain.reward(4, 0) == 1.0);
    CHECK(chain.reward(3, 1) == 0.0);
    CHECK(chain.start_dist()(0) == 1.0);
    REQUIRE(chain.reset_dist());
    CHECK(chain.reset_dist()->cwiseAbs().maxCoeff() == doctest::Approx(0.2));
    CHECK_THROWS(make_chain(1, 0.0, 0.9));
    CHECK_THROWS(make_chain(5, 0.5, 0.9));
}

TEST_CASE("gridworld optimum walks the shortest path") {
    // 3x3 with the centre blocked; goal in the far corner
    const std::vector<Cell> obstacles{{1, 1}};
    const TabularMDP grid = make_gridworld(3, 3, {2, 2}, obstacles, 0.9);
    CHECK(grid.n_states() == 8);
    CHECK(grid.n_actions() == 4);
    const StateIndex goal = gridworld_state(3, 3, obstacles, {2, 2});
    const StateIndex start = gridworld_state(3, 3, obstacles, {0, 0});
    CHECK(grid.start_dist()(static_cast<Eigen::Index>(start)) == 1.0);
    for (ActionIndex a = 0; a < 4; ++a) CHECK(grid.transition_prob(goal, a, goal) == 1.0);
    // bumping into the obstacle stays put
    const StateIndex left_mid = gridworld_state(3, 3, obstacles, {0, 1});
    CHECK(grid.transition_prob(left_mid, kEast, left_mid) == 1.0);
    // four moves to the goal, then reward forever
    CHECK(optimal_policy(grid).v_star == doctest::Approx(std::pow(0.9, 4) / 0.1).epsilon(1e-9));
    CHECK(enumerate_optimal(make_gridworld(2, 2, {1, 1}, {}, 0.8)).first ==
          doctest::Approx(std::pow(0.8, 2) / 0.2).epsilon(1e-9));
    CHECK_THROWS(make_gridworld(3, 3, {1, 1}, obstacles, 0.9));
}

TEST_CASE("random MDPs are seeded and respect the branching factor") {
    const TabularMDP a = make_random_mdp(6, 3, 2, 77, 0.9);
    const TabularMDP b = make_random_mdp(6, 3, 2, 77, 0.9);
    const TabularMDP c = make_random_mdp(6, 3, 2, 78, 0.9);
    CHECK((a.transition() - b.transition()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.transition() - c.transition()).cwiseAbs().maxCoeff() > 0.0);
    for (Eigen::Index r = 0; r < a.transition().rows(); ++r) {
        CHECK((a.transition().row(r).array() > 0.0).count() <= 2);
        CHECK(a.transition().row(r).sum() == doctest::Approx(1.0));
    }
    CHECK(a.reward().minCoeff() >= 0.0);
    CHECK(a.reward().maxCoeff() <= 1.0);
    CHECK_THROWS(make_random_mdp(3, 2, 4, 1, 0.9));
}
