#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace rlboost {

/// Raised when a callback breaks its contract (e.g. an infeasible oracle output).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/**
 * Smooth maximization problem over a convex set K, accessed through an
 * (eps0, K2)-approximate linear optimizer: v^T oracle(v) >= max_{u in K2} v^T u - eps0.
 *
 * Callbacks must be pure; the solver may call them more than once per point.
 */
struct FWProblem {
    std::function<double(const Eigen::VectorXd&)> objective;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> oracle;
    /// Optional membership test for K; oracle outputs failing it raise ContractViolation.
    std::function<bool(const Eigen::VectorXd&)> feasible;

    double smoothness_l = 1.0;  ///< L
    double diameter_d = 1.0;    ///< D
    double bound_h = 1.0;       ///< H
    double kappa = 1.0;         ///< gradient-domination factor
    double tau = 0.0;           ///< gradient-domination slack
    double oracle_eps = 0.0;    ///< eps0
    double eps_match = 0.0;     ///< step-size matching tolerance (stationarity mode)
};

enum class FWMode { gradient_dominated, stationarity };

/// Round t (1-based) occupies slot t-1 of every list.
struct FWTrace {
    std::vector<Eigen::VectorXd> iterates;  ///< x_t after the step
    std::vector<double> etas;               ///< eta_t
    std::vector<double> gaps;               ///< grad f(x_{t-1})^T (z_t - x_{t-1})
    std::vector<double> values;             ///< f(x_t)
};

struct FWResult {
    Eigen::VectorXd point;
    FWTrace trace;
    std::size_t chosen_round = 0;  ///< round whose pre-step iterate was returned (stationarity mode)
    double step_residual = 0.0;    ///< max_t |L D^2 eta_t - gap_t| realized by the step rule
};

/// min{1, 2 kappa / t}.
double fw_step_gd(std::size_t t, double kappa);

/// clip_[0,1](gap / (L D^2)).
double fw_step_stationary(double gap, double smoothness_l, double diameter_d);

/**
 * Non-convex Frank-Wolfe. In gradient-dominated mode the final iterate is
 * returned; in stationarity mode, the iterate preceding the smallest step
 * (earliest round on ties).
 */
FWResult ncfw_run(const FWProblem& problem, std::size_t t_rounds, FWMode mode, const Eigen::VectorXd& x0);

/// 2 kappa^2 max{L D^2, H} / T + tau + kappa eps0.
double fw_value_bound(const FWProblem& problem, std::size_t t_rounds);

/// sqrt(2 H L D^2 / T) + 3 eps + eps0.
double fw_stationarity_bound(const FWProblem& problem, std::size_t t_rounds, double eps);

/**
 * Simulates the equality case g_t = (1 - s_t/C) g_{t-1} + s_t^2 D + s_t E,
 * s_t = min{1, 2C/t}, from g_0 = H and checks g_t <= 2 C^2 max{2D, H}/t + C E
 * for every t <= t_max.
 */
bool fwlr_bound_check(double c_const, double d_const, double e_const, double h_bound, std::size_t t_max);

/// Largest g_t / bound_t seen by the simulation above.
double fwlr_worst_ratio(double c_const, double d_const, double e_const, double h_bound, std::size_t t_max);

/// CSV with columns t,eta,gap,f.
void write_trace_csv(std::ostream& out, const FWTrace& trace);

}  // namespace rlboost
