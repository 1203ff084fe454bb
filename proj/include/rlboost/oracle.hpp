#pragma once

#include "rlboost/mdp.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace rlboost {

/// Exact quantities of one policy, all computed by dense linear algebra.
struct OracleReport {
    Eigen::VectorXd v;           ///< V^pi(s)
    Eigen::MatrixXd q;           ///< Q^pi(s, a)
    Eigen::VectorXd visitation;  ///< d^pi_mu
    Eigen::MatrixXd grad;        ///< dV^pi_mu / dpi(a|s)
    double value = 0.0;          ///< V^pi_mu
};

/// State-to-state kernel P_pi(s, s') = sum_a pi(a|s) P(s'|s,a).
Eigen::MatrixXd policy_kernel(const TabularMDP& mdp, const PolicyMatrix& pi);

Eigen::MatrixXd exact_q(const TabularMDP& mdp, const PolicyMatrix& pi);
Eigen::MatrixXd exact_q(const TabularMDP& mdp, const Policy& pi);

/// V(s) = sum_a pi(a|s) Q(s, a).
Eigen::VectorXd state_values(const PolicyMatrix& pi, const Eigen::MatrixXd& q);

double exact_value(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist);
double exact_value(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist);

/// (1 - gamma) init^T (I - gamma P_pi)^{-1}.
Eigen::VectorXd exact_visitation(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist);
Eigen::VectorXd exact_visitation(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist);

/// Functional gradient: d(s) Q(s, a) / (1 - gamma).
Eigen::MatrixXd exact_gradient(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist);
Eigen::MatrixXd exact_gradient(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist);

OracleReport oracle_report(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist);

/// Max over (s, a) of |Q - r - gamma P V|.
double bellman_residual(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::MatrixXd& q);

struct OptimalSolution {
    TabularPolicy policy;
    std::vector<ActionIndex> actions;
    Eigen::VectorXd v;  ///< value-iteration fixed point V*(s)
    double v_star;      ///< exact value of the greedy policy from start_dist
};

/// Value iteration to sup-norm update <= 1e-10 (1 - gamma), then the greedy policy.
OptimalSolution optimal_policy(const TabularMDP& mdp);

/// Distribution mismatch coefficients. A zero denominator where the
/// numerator is positive yields +infinity and clears the matching flag.
struct MismatchCoefficients {
    double c_inf;
    double d_inf;
    bool c_inf_finite;
    bool d_inf_finite;
};

MismatchCoefficients mismatch_coefficients(const TabularMDP& mdp, const std::vector<PolicyMatrix>& policies,
                                           const Eigen::VectorXd& nu);

/// max_s numerator(s) / denominator(s) over states where numerator > 0.
double sup_ratio(const Eigen::VectorXd& numerator, const Eigen::VectorXd& denominator);

/**
 * Policy completeness over a finite probe set:
 *   max_{probe} min_{base} E_{s ~ d^probe_mu}[max_a Q(s,a) - Q(s,.)^T base(.|s)].
 *
 * Maximizing over a finite probe family only certifies a lower bound on the
 * quantity taken over the whole boosted class.
 */
double policy_completeness(const TabularMDP& mdp, const std::vector<PolicyMatrix>& probes,
                           const std::vector<PolicyMatrix>& base_class, const Eigen::VectorXd& mu);

nlohmann::json to_json(const OracleReport& report);

}  // namespace rlboost
