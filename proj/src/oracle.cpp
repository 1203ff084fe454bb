#include "rlboost/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rlboost {

namespace {

void check_policy_shape(const TabularMDP& mdp, const PolicyMatrix& pi) {
    if (pi.rows() != static_cast<Eigen::Index>(mdp.n_states()) || pi.cols() != static_cast<Eigen::Index>(mdp.n_actions()))
        throw ModelError("policy table shape does not match the MDP");
}

Eigen::VectorXd policy_rewards(const TabularMDP& mdp, const PolicyMatrix& pi) {
    return mdp.reward().cwiseProduct(pi).rowwise().sum();
}

Eigen::MatrixXd resolvent_lhs(const TabularMDP& mdp, const PolicyMatrix& pi) {
    const auto n = static_cast<Eigen::Index>(mdp.n_states());
    return Eigen::MatrixXd::Identity(n, n) - mdp.gamma() * policy_kernel(mdp, pi);
}

/// Q(s, a) = r(s, a) + gamma sum_s' P(s'|s,a) V(s').
Eigen::MatrixXd q_from_v(const TabularMDP& mdp, const Eigen::VectorXd& v) {
    const Eigen::VectorXd next = mdp.transition() * v;
    return mdp.reward() + mdp.gamma() * next.reshaped<Eigen::RowMajor>(static_cast<Eigen::Index>(mdp.n_states()),
                                                                      static_cast<Eigen::Index>(mdp.n_actions()));
}

}  // namespace

Eigen::MatrixXd policy_kernel(const TabularMDP& mdp, const PolicyMatrix& pi) {
    check_policy_shape(mdp, pi);
    const auto ns = static_cast<Eigen::Index>(mdp.n_states());
    const auto na = static_cast<Eigen::Index>(mdp.n_actions());
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(ns, ns);
    for (Eigen::Index s = 0; s < ns; ++s)
        for (Eigen::Index a = 0; a < na; ++a)
            if (pi(s, a) != 0.0) kernel.row(s) += pi(s, a) * mdp.transition().row(s * na + a);
    return kernel;
}

Eigen::MatrixXd exact_q(const TabularMDP& mdp, const PolicyMatrix& pi) {
    const Eigen::VectorXd v = resolvent_lhs(mdp, pi).partialPivLu().solve(policy_rewards(mdp, pi));
    return q_from_v(mdp, v);
}

Eigen::MatrixXd exact_q(const TabularMDP& mdp, const Policy& pi) { return exact_q(mdp, tabulate(pi, mdp.n_states())); }

Eigen::VectorXd state_values(const PolicyMatrix& pi, const Eigen::MatrixXd& q) {
    return pi.cwiseProduct(q).rowwise().sum();
}

double exact_value(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist) {
    return init_dist.dot(state_values(pi, exact_q(mdp, pi)));
}

double exact_value(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist) {
    return exact_value(mdp, tabulate(pi, mdp.n_states()), init_dist);
}

Eigen::VectorXd exact_visitation(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist) {
    if (init_dist.size() != static_cast<Eigen::Index>(mdp.n_states())) throw ModelError("init_dist has wrong length");
    const Eigen::VectorXd x = resolvent_lhs(mdp, pi).transpose().partialPivLu().solve(init_dist);
    return (1.0 - mdp.gamma()) * x;
}

Eigen::VectorXd exact_visitation(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist) {
    return exact_visitation(mdp, tabulate(pi, mdp.n_states()), init_dist);
}

Eigen::MatrixXd exact_gradient(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist) {
    const Eigen::VectorXd d = exact_visitation(mdp, pi, init_dist);
    return (d.asDiagonal() * exact_q(mdp, pi)) / (1.0 - mdp.gamma());
}

Eigen::MatrixXd exact_gradient(const TabularMDP& mdp, const Policy& pi, const Eigen::VectorXd& init_dist) {
    return exact_gradient(mdp, tabulate(pi, mdp.n_states()), init_dist);
}

OracleReport oracle_report(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::VectorXd& init_dist) {
    OracleReport report;
    report.q = exact_q(mdp, pi);
    report.v = state_values(pi, report.q);
    report.visitation = exact_visitation(mdp, pi, init_dist);
    report.grad = (report.visitation.asDiagonal() * report.q) / (1.0 - mdp.gamma());
    report.value = init_dist.dot(report.v);
    return report;
}

double bellman_residual(const TabularMDP& mdp, const PolicyMatrix& pi, const Eigen::MatrixXd& q) {
    return (q - q_from_v(mdp, state_values(pi, q))).cwiseAbs().maxCoeff();
}

OptimalSolution optimal_policy(const TabularMDP& mdp) {
    const auto ns = static_cast<Eigen::Index>(mdp.n_states());
    const double tolerance = 1e-10 * (1.0 - mdp.gamma());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ns);
    for (;;) {
        const Eigen::VectorXd next = q_from_v(mdp, v).rowwise().maxCoeff();
        const double update = (next - v).cwiseAbs().maxCoeff();
        v = next;
        if (update <= tolerance) break;
    }
    const Eigen::MatrixXd q = q_from_v(mdp, v);
    std::vector<ActionIndex> actions(mdp.n_states());
    for (Eigen::Index s = 0; s < ns; ++s) {
        Eigen::Index best = 0;
        q.row(s).maxCoeff(&best);
        actions[static_cast<std::size_t>(s)] = static_cast<ActionIndex>(best);
    }
    TabularPolicy greedy = TabularPolicy::deterministic(actions, mdp.n_actions(), "optimal");
    const double v_star = exact_value(mdp, greedy.table(), mdp.start_dist());
    return {std::move(greedy), std::move(actions), std::move(v), v_star};
}

double sup_ratio(const Eigen::VectorXd& numerator, const Eigen::VectorXd& denominator) {
    // Visitation entries below this are solver noise around an exact zero.
    constexpr double kZero = 1e-14;
    double worst = 0.0;
    for (Eigen::Index s = 0; s < numerator.size(); ++s) {
        if (numerator(s) <= kZero) continue;
        if (denominator(s) <= kZero) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, numerator(s) / denominator(s));
    }
    return worst;
}

MismatchCoefficients mismatch_coefficients(const TabularMDP& mdp, const std::vector<PolicyMatrix>& policies,
                                           const Eigen::VectorXd& nu) {
    const OptimalSolution opt = optimal_policy(mdp);
    const Eigen::VectorXd d_star = exact_visitation(mdp, opt.policy.table(), mdp.start_dist());
    double c_inf = 0.0;
    for (const PolicyMatrix& pi : policies)
        c_inf = std::max(c_inf, sup_ratio(d_star, exact_visitation(mdp, pi, mdp.start_dist())));
    const double d_inf = sup_ratio(d_star, nu);
    return {c_inf, d_inf, std::isfinite(c_inf), std::isfinite(d_inf)};
}

double policy_completeness(const TabularMDP& mdp, const std::vector<PolicyMatrix>& probes,
                           const std::vector<PolicyMatrix>& base_class, const Eigen::VectorXd& mu) {
    if (probes.empty() || base_class.empty()) throw std::invalid_argument("policy_completeness needs nonempty lists");
    double worst = -std::numeric_limits<double>::infinity();
    for (const PolicyMatrix& probe : probes) {
        const Eigen::MatrixXd q = exact_q(mdp, probe);
        const Eigen::VectorXd d = exact_visitation(mdp, probe, mu);
        const Eigen::VectorXd greedy = q.rowwise().maxCoeff();
        double best = std::numeric_limits<double>::infinity();
        for (const PolicyMatrix& base : base_class) {
            check_policy_shape(mdp, base);
            const Eigen::VectorXd shortfall = greedy - state_values(base, q);
            best = std::min(best, d.dot(shortfall));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

nlohmann::json to_json(const OracleReport& report) {
    auto rows = [](const Eigen::MatrixXd& m) {
        std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(m(r, c));
        return out;
    };
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return {{"v", vec(report.v)},
            {"q", rows(report.q)},
            {"visitation", vec(report.visitation)},
            {"grad", rows(report.grad)},
            {"value", report.value}};
}

}  // namespace rlboost
