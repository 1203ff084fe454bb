#include "rlboost/envs.hpp"

#include <algorithm>
#include <numeric>

namespace rlboost {

namespace {

Eigen::VectorXd uniform(std::size_t n) {
    return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

Eigen::VectorXd point_mass(std::size_t n, StateIndex s) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    d(static_cast<Eigen::Index>(s)) = 1.0;
    return d;
}

bool is_obstacle(const std::vector<Cell>& obstacles, Cell cell) {
    return std::find(obstacles.begin(), obstacles.end(), cell) != obstacles.end();
}

}  // namespace

TabularMDP make_chain(std::size_t n, double slip, double gamma) {
    if (n < 2) throw std::invalid_argument("make_chain: need at least two states");
    if (!(slip >= 0.0 && slip < 0.5)) throw std::invalid_argument("make_chain: slip must lie in [0, 0.5)");
    const auto ns = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd transition = Eigen::MatrixXd::Zero(2 * ns, ns);
    Eigen::MatrixXd reward = Eigen::MatrixXd::Zero(ns, 2);
    for (Eigen::Index s = 0; s < ns; ++s) {
        const Eigen::Index left = std::max<Eigen::Index>(s - 1, 0);
        const Eigen::Index right = std::min<Eigen::Index>(s + 1, ns - 1);
        transition(2 * s, left) += 1.0 - slip;
        transition(2 * s, right) += slip;
        transition(2 * s + 1, right) += 1.0 - slip;
        transition(2 * s + 1, left) += slip;
    }
    reward.row(ns - 1).setOnes();
    return TabularMDP(n, 2, std::move(transition), std::move(reward), gamma, point_mass(n, 0), uniform(n));
}

StateIndex gridworld_state(std::size_t w, std::size_t h, const std::vector<Cell>& obstacles, Cell cell) {
    if (cell.first >= w || cell.second >= h) throw std::out_of_range("gridworld cell outside the grid");
    if (is_obstacle(obstacles, cell)) throw std::invalid_argument("gridworld cell is an obstacle");
    StateIndex index = 0;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            if (Cell{x, y} == cell) return index;
            if (!is_obstacle(obstacles, {x, y})) ++index;
        }
    return index;
}

TabularMDP make_gridworld(std::size_t w, std::size_t h, Cell goal, const std::vector<Cell>& obstacles, double gamma,
                          std::optional<Cell> start) {
    if (w == 0 || h == 0) throw std::invalid_argument("make_gridworld: empty grid");
    if (goal.first >= w || goal.second >= h) throw std::invalid_argument("make_gridworld: goal outside the grid");
    if (is_obstacle(obstacles, goal)) throw std::invalid_argument("make_gridworld: goal inside the obstacle set");

    std::vector<Cell> cells;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            if (!is_obstacle(obstacles, {x, y})) cells.push_back({x, y});
    const std::size_t n = cells.size();
    const StateIndex goal_state = gridworld_state(w, h, obstacles, goal);

    StateIndex start_state = n;
    if (start) {
        start_state = gridworld_state(w, h, obstacles, *start);
    } else {
        for (StateIndex s = 0; s < n && start_state == n; ++s)
            if (s != goal_state) start_state = s;
        if (start_state == n) start_state = goal_state;
    }

    const auto ns = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd transition = Eigen::MatrixXd::Zero(4 * ns, ns);
    Eigen::MatrixXd reward = Eigen::MatrixXd::Zero(ns, 4);
    for (StateIndex s = 0; s < n; ++s) {
        const auto [x, y] = cells[s];
        for (ActionIndex a = 0; a < 4; ++a) {
            StateIndex next = s;
            if (s != goal_state) {
                Cell target = cells[s];
                bool inside = true;
                switch (a) {
                    case kNorth: inside = y > 0; target = {x, y - (inside ? 1 : 0)}; break;
                    case kSouth: inside = y + 1 < h; target = {x, y + (inside ? 1 : 0)}; break;
                    case kEast: inside = x + 1 < w; target = {x + (inside ? 1 : 0), y}; break;
                    default: inside = x > 0; target = {x - (inside ? 1 : 0), y}; break;
                }
                if (inside && !is_obstacle(obstacles, target)) next = gridworld_state(w, h, obstacles, target);
            }
            transition(static_cast<Eigen::Index>(s * 4 + a), static_cast<Eigen::Index>(next)) = 1.0;
        }
    }
    reward.row(static_cast<Eigen::Index>(goal_state)).setOnes();
    return TabularMDP(n, 4, std::move(transition), std::move(reward), gamma, point_mass(n, start_state), uniform(n));
}

TabularMDP make_random_mdp(std::size_t n_states, std::size_t n_actions, std::size_t branching, std::uint64_t seed,
                           double gamma) {
    if (branching == 0 || branching > n_states)
        throw std::invalid_argument("make_random_mdp: branching must lie in [1, n_states]");
    Rng rng(seed);
    const auto ns = static_cast<Eigen::Index>(n_states);
    const auto na = static_cast<Eigen::Index>(n_actions);
    Eigen::MatrixXd transition = Eigen::MatrixXd::Zero(ns * na, ns);
    std::vector<StateIndex> order(n_states);
    for (Eigen::Index row = 0; row < ns * na; ++row) {
        // partial Fisher-Yates picks the support
        std::iota(order.begin(), order.end(), StateIndex{0});
        for (std::size_t i = 0; i < branching; ++i) std::swap(order[i], order[i + rng.uniform_index(n_states - i)]);
        double total = 0.0;
        for (std::size_t i = 0; i < branching; ++i) {
            const double e = -std::log1p(-rng.uniform());
            transition(row, static_cast<Eigen::Index>(order[i])) = e;
            total += e;
        }
        if (total <= 0.0) {
            transition(row, static_cast<Eigen::Index>(order[0])) = 1.0;
            total = 1.0;
        }
        transition.row(row) /= total;
    }
    Eigen::MatrixXd reward(ns, na);
    for (Eigen::Index s = 0; s < ns; ++s)
        for (Eigen::Index a = 0; a < na; ++a) reward(s, a) = rng.uniform();
    return TabularMDP(n_states, n_actions, std::move(transition), std::move(reward), gamma, uniform(n_states),
                      uniform(n_states));
}

}  // namespace rlboost
