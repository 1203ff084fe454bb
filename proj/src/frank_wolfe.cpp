#include "rlboost/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace rlboost {

double fw_step_gd(std::size_t t, double kappa) {
    if (t == 0) throw std::invalid_argument("fw_step_gd: rounds are 1-based");
    return std::min(1.0, 2.0 * kappa / static_cast<double>(t));
}

double fw_step_stationary(double gap, double smoothness_l, double diameter_d) {
    return std::clamp(gap / (smoothness_l * diameter_d * diameter_d), 0.0, 1.0);
}

FWResult ncfw_run(const FWProblem& problem, std::size_t t_rounds, FWMode mode, const Eigen::VectorXd& x0) {
    if (t_rounds == 0) throw std::invalid_argument("ncfw_run: T must be positive");
    if (problem.feasible && !problem.feasible(x0)) throw std::invalid_argument("ncfw_run: x0 is infeasible");
    const double curvature = problem.smoothness_l * problem.diameter_d * problem.diameter_d;

    FWResult result;
    FWTrace& trace = result.trace;
    Eigen::VectorXd x = x0;
    for (std::size_t t = 1; t <= t_rounds; ++t) {
        const Eigen::VectorXd grad = problem.gradient(x);
        const Eigen::VectorXd z = problem.oracle(grad);
        if (z.size() != x.size()) throw ContractViolation("oracle returned a point of the wrong dimension");
        if (problem.feasible && !problem.feasible(z)) throw ContractViolation("oracle returned an infeasible point");
        const double gap = grad.dot(z - x);
        const double eta = mode == FWMode::gradient_dominated
                               ? fw_step_gd(t, problem.kappa)
                               : fw_step_stationary(gap, problem.smoothness_l, problem.diameter_d);
        if (mode == FWMode::stationarity)
            result.step_residual = std::max(result.step_residual, std::abs(curvature * eta - gap));
        trace.iterates.push_back((1.0 - eta) * x + eta * z);
        x = trace.iterates.back();
        trace.etas.push_back(eta);
        trace.gaps.push_back(gap);
        trace.values.push_back(problem.objective(x));
    }

    if (mode == FWMode::gradient_dominated) {
        result.point = x;
        result.chosen_round = t_rounds;
        return result;
    }
    const auto smallest = std::min_element(trace.etas.begin(), trace.etas.end());
    const auto round = static_cast<std::size_t>(smallest - trace.etas.begin()) + 1;
    result.chosen_round = round;
    result.point = round == 1 ? x0 : trace.iterates[round - 2];
    return result;
}

double fw_value_bound(const FWProblem& problem, std::size_t t_rounds) {
    const double curvature = problem.smoothness_l * problem.diameter_d * problem.diameter_d;
    return 2.0 * problem.kappa * problem.kappa * std::max(curvature, problem.bound_h) / static_cast<double>(t_rounds) +
           problem.tau + problem.kappa * problem.oracle_eps;
}

double fw_stationarity_bound(const FWProblem& problem, std::size_t t_rounds, double eps) {
    const double curvature = problem.smoothness_l * problem.diameter_d * problem.diameter_d;
    return std::sqrt(2.0 * problem.bound_h * curvature / static_cast<double>(t_rounds)) + 3.0 * eps + problem.oracle_eps;
}

double fwlr_worst_ratio(double c_const, double d_const, double e_const, double h_bound, std::size_t t_max) {
    if (c_const < 1.0) throw std::invalid_argument("fwlr: C must be at least 1");
    if (d_const < 0.0 || e_const < 0.0 || h_bound <= 0.0) throw std::invalid_argument("fwlr: constants must be nonnegative");
    const double scale = 2.0 * c_const * c_const * std::max(2.0 * d_const, h_bound);
    double g = h_bound;
    double worst = 0.0;
    for (std::size_t t = 1; t <= t_max; ++t) {
        const double sigma = std::min(1.0, 2.0 * c_const / static_cast<double>(t));
        g = (1.0 - sigma / c_const) * g + sigma * sigma * d_const + sigma * e_const;
        const double bound = scale / static_cast<double>(t) + c_const * e_const;
        worst = std::max(worst, g / bound);
    }
    return worst;
}

bool fwlr_bound_check(double c_const, double d_const, double e_const, double h_bound, std::size_t t_max) {
    return fwlr_worst_ratio(c_const, d_const, e_const, h_bound, t_max) <= 1.0;
}

void write_trace_csv(std::ostream& out, const FWTrace& trace) {
    out << "t,eta,gap,f\n" << std::setprecision(17);
    for (std::size_t i = 0; i < trace.etas.size(); ++i)
        out << i + 1 << ',' << trace.etas[i] << ',' << trace.gaps[i] << ',' << trace.values[i] << '\n';
}

}  // namespace rlboost
