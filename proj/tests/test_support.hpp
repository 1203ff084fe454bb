// Independent reference computations used by the tests. Nothing here calls
// the solver paths under test: values come from truncated power series or
// plain simulation, projections and envelopes from grid search.
#pragma once

#include "rlboost/mdp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace testsupport {

using rlboost::PolicyMatrix;
using rlboost::TabularMDP;

/// Random row-stochastic policy table.
inline PolicyMatrix random_policy(std::size_t ns, std::size_t na, rlboost::Rng& rng) {
    PolicyMatrix p(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(na));
    for (Eigen::Index s = 0; s < p.rows(); ++s) {
        for (Eigen::Index a = 0; a < p.cols(); ++a) p(s, a) = 0.05 + rng.uniform();
        p.row(s) /= p.row(s).sum();
    }
    return p;
}

/// Per-state value by iterating V <- r_pi + gamma P_pi V until the geometric tail is below tol.
inline Eigen::VectorXd series_state_values(const TabularMDP& mdp, const PolicyMatrix& pi, double tol = 1e-13) {
    const auto ns = static_cast<Eigen::Index>(mdp.n_states());
    const auto na = static_cast<Eigen::Index>(mdp.n_actions());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ns);
    const double gamma = mdp.gamma();
    double r_max = 0.0;
    for (Eigen::Index s = 0; s < ns; ++s)
        for (Eigen::Index a = 0; a < na; ++a) r_max = std::max(r_max, std::abs(pi(s, a)) * std::abs(mdp.reward()(s, a)));
    double tail = std::max(r_max, 1e-300) * static_cast<double>(na) / (1.0 - gamma);
    while (tail > tol) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(ns);
        for (Eigen::Index s = 0; s < ns; ++s)
            for (Eigen::Index a = 0; a < na; ++a) {
                double future = 0.0;
                for (Eigen::Index s2 = 0; s2 < ns; ++s2) future += mdp.transition()(s * na + a, s2) * v(s2);
                next(s) += pi(s, a) * (mdp.reward()(s, a) + gamma * future);
            }
        v = next;
        tail *= gamma;
    }
    return v;
}

inline double series_value(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& dist) {
    return dist.dot(series_state_values(mdp, pi));
}

/// Q(s, a) = r(s, a) + gamma sum_s' P(s'|s, a) V(s') with V from the series.
inline Eigen::MatrixXd series_q(const TabularMDP& mdp, const PolicyMatrix& pi) {
    const Eigen::VectorXd v = series_state_values(mdp, pi);
    const auto ns = static_cast<Eigen::Index>(mdp.n_states());
    const auto na = static_cast<Eigen::Index>(mdp.n_actions());
    Eigen::MatrixXd q(ns, na);
    for (Eigen::Index s = 0; s < ns; ++s)
        for (Eigen::Index a = 0; a < na; ++a) q(s, a) = mdp.reward()(s, a) + mdp.gamma() * mdp.transition().row(s * na + a).dot(v);
    return q;
}

/// Discounted visitation by summing (1 - gamma) gamma^k mu P^k.
inline Eigen::VectorXd series_visitation(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& mu) {
    const auto ns = static_cast<Eigen::Index>(mdp.n_states());
    const auto na = static_cast<Eigen::Index>(mdp.n_actions());
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(ns, ns);
    for (Eigen::Index s = 0; s < ns; ++s)
        for (Eigen::Index a = 0; a < na; ++a) kernel.row(s) += pi(s, a) * mdp.transition().row(s * na + a);
    Eigen::RowVectorXd term = mu.transpose();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(ns);
    double weight = 1.0 - mdp.gamma();
    while (weight > 1e-16) {
        d += weight * term.transpose();
        term = term * kernel;
        weight *= mdp.gamma();
    }
    return d;
}

/// Central finite differences of the series value over the policy table entries.
inline Eigen::MatrixXd fd_gradient(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& mu,
                                   double h = 1e-5) {
    Eigen::MatrixXd g(pi.rows(), pi.cols());
    for (Eigen::Index s = 0; s < pi.rows(); ++s)
        for (Eigen::Index a = 0; a < pi.cols(); ++a) {
            PolicyMatrix up = pi;
            PolicyMatrix down = pi;
            up(s, a) += h;
            down(s, a) -= h;
            g(s, a) = (series_value(mdp, up, mu) - series_value(mdp, down, mu)) / (2.0 * h);
        }
    return g;
}

/// Best deterministic policy by enumeration: (value from start_dist, actions).
inline std::pair<double, std::vector<std::size_t>> enumerate_optimal(const TabularMDP& mdp) {
    const std::size_t ns = mdp.n_states();
    const std::size_t na = mdp.n_actions();
    std::size_t count = 1;
    for (std::size_t s = 0; s < ns; ++s) count *= na;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_actions;
    for (std::size_t k = 0; k < count; ++k) {
        PolicyMatrix pi = PolicyMatrix::Zero(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(na));
        std::vector<std::size_t> actions(ns);
        std::size_t code = k;
        for (std::size_t s = 0; s < ns; ++s) {
            actions[s] = code % na;
            code /= na;
            pi(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(actions[s])) = 1.0;
        }
        const double v = series_value(mdp, pi, mdp.start_dist());
        if (v > best) {
            best = v;
            best_actions = actions;
        }
    }
    return {best, best_actions};
}

/// Monte Carlo estimate of the discounted return, simulated without the library sampler.
struct MonteCarlo {
    double mean;
    double std_error;
};

inline MonteCarlo mc_value(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& dist,
                           std::size_t episodes, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto draw = [&](const auto& weights) {
        double u = unif(gen);
        for (Eigen::Index i = 0; i < weights.size(); ++i) {
            u -= weights(i);
            if (u < 0.0) return i;
        }
        return weights.size() - 1;
    };
    const auto na = static_cast<Eigen::Index>(mdp.n_actions());
    const auto horizon = static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(mdp.gamma())));
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t e = 0; e < episodes; ++e) {
        Eigen::Index s = draw(dist);
        double ret = 0.0;
        double disc = 1.0;
        for (std::size_t h = 0; h < horizon; ++h) {
            const Eigen::Index a = draw(pi.row(s));
            ret += disc * mdp.reward()(s, a);
            disc *= mdp.gamma();
            s = draw(mdp.transition().row(s * na + a));
        }
        sum += ret;
        sq += ret * ret;
    }
    const double n = static_cast<double>(episodes);
    const double mean = sum / n;
    return {mean, std::sqrt(std::max(sq / n - mean * mean, 0.0) / (n - 1.0))};
}

/// Minimizes f over a box by successive grid refinement around the incumbent.
inline Eigen::VectorXd grid_minimize(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd center,
                                     double half_width, int points, int levels) {
    const auto n = center.size();
    for (int level = 0; level < levels; ++level) {
        const double step = 2.0 * half_width / (points - 1);
        Eigen::VectorXd best = center;
        double best_value = f(center);
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            Eigen::VectorXd y(n);
            for (Eigen::Index k = 0; k < n; ++k) y(k) = center(k) - half_width + step * idx[static_cast<std::size_t>(k)];
            const double v = f(y);
            if (v < best_value) {
                best_value = v;
                best = y;
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == points) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        center = best;
        half_width = 2.0 * step;
    }
    return center;
}

/// Euclidean projection onto the simplex by grid search over its first n-1 coordinates.
inline Eigen::VectorXd grid_project(const Eigen::VectorXd& x) {
    const auto n = x.size();
    const auto objective = [&](const Eigen::VectorXd& head) {
        Eigen::VectorXd y(n);
        y.head(n - 1) = head;
        y(n - 1) = 1.0 - head.sum();
        if ((y.array() < 0.0).any()) return std::numeric_limits<double>::infinity();
        return (y - x).squaredNorm();
    };
    // the first grid spans [0, 1] in every free coordinate
    const Eigen::VectorXd start = Eigen::VectorXd::Constant(n - 1, 0.5);
    const int points = n <= 3 ? 41 : (n == 4 ? 21 : 13);
    Eigen::VectorXd head = grid_minimize(objective, start, 0.5, points, 10);
    Eigen::VectorXd y(n);
    y.head(n - 1) = head;
    y(n - 1) = 1.0 - head.sum();
    return y;
}

/// Euclidean distance to the simplex through the grid projection.
inline double grid_dist(const Eigen::VectorXd& x) { return (x - grid_project(x)).norm(); }

/// Projection onto the simplex by bisection on the threshold tau of max(x - tau, 0).
inline Eigen::VectorXd bisect_project(const Eigen::VectorXd& x) {
    double lo = x.minCoeff() - 1.0;
    double hi = x.maxCoeff();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((x.array() - mid).max(0.0).sum() > 1.0) lo = mid;
        else hi = mid;
    }
    return (x.array() - 0.5 * (lo + hi)).max(0.0).matrix();
}

/// Envelope min_y c^T y + G dist(y) + |x - y|^2 / (2 beta), by grid refinement over y.
inline double grid_envelope(const Eigen::VectorXd& c, double beta, double g, const Eigen::VectorXd& x) {
    const auto objective = [&](const Eigen::VectorXd& y) {
        return c.dot(y) + g * (y - bisect_project(y)).norm() + (x - y).squaredNorm() / (2.0 * beta);
    };
    // the minimizer lies within beta (|c| + G) of x
    const double radius = beta * (c.norm() + g) + 1e-3;
    const Eigen::VectorXd y = grid_minimize(objective, x, radius, 11, 30);
    return objective(y);
}

}  // namespace testsupport
