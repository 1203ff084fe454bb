#pragma once

#include "rlboost/mdp.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rlboost {

/// Grid cell as (column, row).
using Cell = std::pair<std::size_t, std::size_t>;

/**
 * Chain of n states with actions {0: left, 1: right}. The chosen direction
 * succeeds with probability 1 - slip and reverses otherwise; moves are clamped
 * at both ends. Reward 1 for any action in state n - 1. Starts in state 0;
 * the reset distribution is uniform.
 */
TabularMDP make_chain(std::size_t n, double slip, double gamma);

enum GridAction : ActionIndex { kNorth = 0, kSouth = 1, kEast = 2, kWest = 3 };

/**
 * Deterministic w x h gridworld. One state per free cell, numbered row-major
 * skipping obstacles. Moves into walls or obstacles leave the agent in place.
 * The goal is absorbing and pays 1 per step. Starts at `start`
 * (default: the first free non-goal cell); resets are uniform over free cells.
 */
TabularMDP make_gridworld(std::size_t w, std::size_t h, Cell goal, const std::vector<Cell>& obstacles, double gamma,
                          std::optional<Cell> start = std::nullopt);

/// State index of a free cell in make_gridworld's numbering.
StateIndex gridworld_state(std::size_t w, std::size_t h, const std::vector<Cell>& obstacles, Cell cell);

/**
 * Random MDP: each (s, a) row is a Dirichlet(1) draw over `branching`
 * distinct states chosen uniformly; rewards are uniform in [0, 1]; start and
 * reset distributions are uniform. Fully determined by `seed`.
 */
TabularMDP make_random_mdp(std::size_t n_states, std::size_t n_actions, std::size_t branching, std::uint64_t seed,
                           double gamma);

}  // namespace rlboost
