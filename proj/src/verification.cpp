#include "rlboost/experiment.hpp"
#include "rlboost/frank_wolfe.hpp"
#include "rlboost/geometry.hpp"
#include "rlboost/oracle.hpp"
#include "rlboost/smoothing.hpp"

#include <cmath>
#include <limits>

namespace rlboost {

namespace {

PolicyMatrix random_policy(std::size_t n_states, std::size_t n_actions, Rng& rng) {
    PolicyMatrix p(static_cast<Eigen::Index>(n_states), static_cast<Eigen::Index>(n_actions));
    for (Eigen::Index s = 0; s < p.rows(); ++s) {
        for (Eigen::Index a = 0; a < p.cols(); ++a) p(s, a) = -std::log1p(-rng.uniform());
        p.row(s) /= p.row(s).sum();
    }
    return p;
}

Eigen::VectorXd random_vector(Eigen::Index n, double scale, Rng& rng) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * (2.0 * rng.uniform() - 1.0);
    return v;
}

struct Suite {
    std::string name;
    VerificationReport& report;

    void check(std::string what, double measured, double bound, bool passed) {
        report.checks.push_back({name, std::move(what), measured, bound, passed});
    }
    /// measured <= bound
    void at_most(std::string what, double measured, double bound) {
        const bool ok = measured <= bound;
        check(std::move(what), measured, bound, ok);
    }
};

void sampler_suite(VerificationReport& report, Rng& rng) {
    Suite suite{"sampler", report};
    constexpr std::size_t kEpisodes = 20000;
    for (int m = 0; m < 3; ++m) {
        const TabularMDP mdp = make_random_mdp(6, 3, 3, rng.next_u64(), 0.9);
        const Eigen::VectorXd& mu = mdp.start_dist();
        const PolicyMatrix pi = random_policy(6, 3, rng);
        const TabularPolicy policy(pi);
        Rng stream = rng.fork();
        const auto samples = batch_sample(mdp, policy, mu, stream, kEpisodes, mdp.default_horizon_cap());
        const Eigen::MatrixXd grad = exact_gradient(mdp, pi, mu);
        for (int p = 0; p < 2; ++p) {
            const PolicyMatrix probe = random_policy(6, 3, rng);
            double sum = 0.0;
            double sq = 0.0;
            for (const auto& q : samples) {
                const double x = q.q_hat.dot(probe.row(static_cast<Eigen::Index>(q.state)).transpose()) / (1.0 - mdp.gamma());
                sum += x;
                sq += x * x;
            }
            const double n = static_cast<double>(kEpisodes);
            const double mean = sum / n;
            const double se = std::sqrt((sq / n - mean * mean) / (n - 1.0));
            const double z = std::abs(mean - grad.cwiseProduct(probe).sum()) / se;
            suite.at_most("gradient estimate z-score, mdp " + std::to_string(m) + " probe " + std::to_string(p), z, 4.0);
        }
        Eigen::VectorXd freq = Eigen::VectorXd::Zero(6);
        for (const auto& q : samples) freq(static_cast<Eigen::Index>(q.state)) += 1.0 / static_cast<double>(kEpisodes);
        const double tv = 0.5 * (freq - exact_visitation(mdp, pi, mu)).lpNorm<1>();
        suite.at_most("accepted-state total variation, mdp " + std::to_string(m), tv, 0.02);
    }
}

void smoothing_suite(VerificationReport& report, Rng& rng) {
    Suite suite{"smoothing", report};
    double worst_fd = 0.0;
    double worst_norm = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<Eigen::Index>(2 + rng.uniform_index(4));
        const LinearLoss loss{random_vector(n, 3.0, rng)};
        const SmoothingParams params{0.05 + rng.uniform(), 0.5 + 3.0 * rng.uniform()};
        const Eigen::VectorXd x = random_vector(n, 2.0, rng);
        const Eigen::VectorXd grad = extension_gradient(loss, params, x);
        const double h = 1e-6;
        Eigen::VectorXd fd(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp(k) += h;
            xm(k) -= h;
            fd(k) = (envelope_value(loss, params, xp) - envelope_value(loss, params, xm)) / (2.0 * h);
        }
        worst_fd = std::max(worst_fd, (fd - grad).norm() / std::max(1.0, grad.norm()));
        worst_norm = std::max(worst_norm, grad.norm() - (loss.coeffs.norm() + params.g_lip));
    }
    suite.at_most("envelope gradient vs central differences (relative)", worst_fd, 1e-5);
    suite.at_most("gradient norm minus (|c| + G)", worst_norm, 1e-12);

    double worst_idem = 0.0;
    double worst_lip = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
        const auto n = static_cast<Eigen::Index>(2 + rng.uniform_index(4));
        const Eigen::VectorXd x = random_vector(n, 3.0, rng);
        const Eigen::VectorXd y = random_vector(n, 3.0, rng);
        const Eigen::VectorXd px = project_simplex(x);
        worst_idem = std::max(worst_idem, (project_simplex(px) - px).lpNorm<Eigen::Infinity>());
        worst_lip = std::max(worst_lip, (px - project_simplex(y)).norm() - (x - y).norm());
    }
    suite.at_most("projection idempotence", worst_idem, 0.0);
    suite.at_most("projection expansion", worst_lip, 1e-12);
}

void fw_suite(VerificationReport& report, Rng& rng) {
    Suite suite{"fw", report};
    for (int i = 0; i < 20; ++i) {
        const double c = 1.0 + 4.0 * rng.uniform();
        const double d = 5.0 * rng.uniform();
        const double e = rng.uniform();
        const double h = 0.1 + 10.0 * rng.uniform();
        suite.at_most("recursion worst ratio, constants " + std::to_string(i), fwlr_worst_ratio(c, d, e, h, 10000), 1.0);
    }

    // concave quadratic over the 5-simplex: f(x) = -|x - target|^2 / 2 with target inside
    constexpr Eigen::Index n = 5;
    Eigen::VectorXd target(n);
    for (Eigen::Index k = 0; k < n; ++k) target(k) = 0.5 + rng.uniform();
    target /= target.sum();
    FWProblem problem;
    problem.objective = [target](const Eigen::VectorXd& x) { return -0.5 * (x - target).squaredNorm(); };
    problem.gradient = [target](const Eigen::VectorXd& x) { return Eigen::VectorXd(target - x); };
    problem.oracle = [](const Eigen::VectorXd& g) {
        Eigen::Index best = 0;
        g.maxCoeff(&best);
        return Eigen::VectorXd(Eigen::VectorXd::Unit(g.size(), best));
    };
    problem.smoothness_l = 1.0;
    problem.diameter_d = std::sqrt(2.0);
    problem.kappa = 1.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) lowest = std::min(lowest, problem.objective(Eigen::VectorXd::Unit(n, k)));
    problem.bound_h = -lowest;
    const Eigen::VectorXd x0 = Eigen::VectorXd::Unit(n, 0);
    for (std::size_t t : {10u, 100u, 1000u}) {
        const auto result = ncfw_run(problem, t, FWMode::gradient_dominated, x0);
        suite.at_most("value gap, T = " + std::to_string(t), -problem.objective(result.point), fw_value_bound(problem, t));
    }
}

void inequalities_suite(VerificationReport& report, Rng& rng) {
    Suite suite{"inequalities", report};
    std::size_t smooth_violations = 0;
    std::size_t lip_violations = 0;
    double smooth_ratio = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t ns = 2 + rng.uniform_index(5);
        const std::size_t na = 2 + rng.uniform_index(3);
        const double gamma = 0.5 + 0.45 * rng.uniform();
        const TabularMDP mdp = make_random_mdp(ns, na, 1 + rng.uniform_index(ns), rng.next_u64(), gamma);
        const PolicyMatrix pi = random_policy(ns, na, rng);
        const PolicyMatrix other = random_policy(ns, na, rng);
        const double step = rng.uniform();
        const PolicyMatrix pi2 = (1.0 - step) * pi + step * other;
        const Eigen::VectorXd& d0 = mdp.start_dist();
        const PolicyMatrix delta = pi2 - pi;
        const double n = norm_inf1(delta);
        const double lhs = std::abs(exact_value(mdp, pi2, d0) - exact_value(mdp, pi, d0) -
                                    exact_gradient(mdp, pi, d0).cwiseProduct(delta).sum());
        const double bound = gamma / std::pow(1.0 - gamma, 3) * n * n;
        if (lhs > bound * (1.0 + 1e-9) + 1e-12) ++smooth_violations;
        if (bound > 0.0) smooth_ratio = std::max(smooth_ratio, lhs / bound);
        const double dv = (exact_visitation(mdp, pi2, d0) - exact_visitation(mdp, pi, d0)).lpNorm<1>();
        if (dv > gamma / (1.0 - gamma) * n * (1.0 + 1e-9) + 1e-12) ++lip_violations;
    }
    suite.check("value smoothness violations (worst ratio in measured)", smooth_ratio, 1.0, smooth_violations == 0);
    suite.at_most("visitation Lipschitz violations", static_cast<double>(lip_violations), 0.0);

    std::size_t dom_violations = 0;
    std::size_t nu_violations = 0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t ns = 2 + rng.uniform_index(4);
        const std::size_t na = 2 + rng.uniform_index(2);
        const double gamma = 0.5 + 0.45 * rng.uniform();
        const TabularMDP mdp = make_random_mdp(ns, na, 1 + rng.uniform_index(ns), rng.next_u64(), gamma);
        const BasePolicyClass base = all_deterministic_policies(ns, na);
        std::vector<PolicyMatrix> tables;
        for (std::size_t k = 0; k < base.size(); ++k) tables.push_back(base.table(k));
        const PolicyMatrix pi = random_policy(ns, na, rng);
        const double v_star = optimal_policy(mdp).v_star;
        const double gap = v_star - exact_value(mdp, pi, mdp.start_dist());
        const auto linear_max = [&](const Eigen::VectorXd& mu) {
            const Eigen::MatrixXd grad = exact_gradient(mdp, pi, mu);
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& t : tables) best = std::max(best, grad.cwiseProduct(t - pi).sum());
            return best;
        };
        const auto mm = mismatch_coefficients(mdp, {pi}, *mdp.reset_dist());
        const double e0 = policy_completeness(mdp, {pi}, tables, mdp.start_dist());
        const double rhs = mm.c_inf * (e0 / (1.0 - gamma) + linear_max(mdp.start_dist()));
        if (gap > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) ++dom_violations;
        const double e_nu = policy_completeness(mdp, {pi}, tables, *mdp.reset_dist());
        const double rhs_nu = mm.d_inf / (1.0 - gamma) * (e_nu / (1.0 - gamma) + linear_max(*mdp.reset_dist()));
        if (gap > rhs_nu + 1e-9 * std::max(1.0, std::abs(rhs_nu))) ++nu_violations;
    }
    suite.at_most("gradient domination violations (start distribution)", static_cast<double>(dom_violations), 0.0);
    suite.at_most("gradient domination violations (reset distribution)", static_cast<double>(nu_violations), 0.0);
}

}  // namespace

VerificationReport run_verification_suite(const std::string& scope, std::uint64_t seed) {
    const bool all = scope == "all";
    if (!all && scope != "sampler" && scope != "smoothing" && scope != "fw" && scope != "inequalities")
        throw ConfigError("unknown verification scope '" + scope + "'");
    VerificationReport report;
    // each suite draws from its own stream so scopes reproduce in isolation
    const Rng root(seed);
    if (all || scope == "sampler") {
        Rng rng = root.split(1);
        sampler_suite(report, rng);
    }
    if (all || scope == "smoothing") {
        Rng rng = root.split(2);
        smoothing_suite(report, rng);
    }
    if (all || scope == "fw") {
        Rng rng = root.split(3);
        fw_suite(report, rng);
    }
    if (all || scope == "inequalities") {
        Rng rng = root.split(4);
        inequalities_suite(report, rng);
    }
    return report;
}

}  // namespace rlboost
