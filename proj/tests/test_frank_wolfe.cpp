#include "test_support.hpp"

#include "rlboost/frank_wolfe.hpp"

#include <doctest.h>

#include <sstream>

using namespace rlboost;
using namespace testsupport;

namespace {

Eigen::VectorXd vertex_oracle(const Eigen::VectorXd& g) {
    Eigen::Index best = 0;
    g.maxCoeff(&best);
    return Eigen::VectorXd::Unit(g.size(), best);
}

bool on_simplex(const Eigen::VectorXd& x) { return x.minCoeff() >= -1e-12 && std::abs(x.sum() - 1.0) < 1e-9; }

}  // namespace

TEST_CASE("step rules") {
    CHECK(fw_step_gd(1, 1.0) == 1.0);
    CHECK(fw_step_gd(8, 1.0) == doctest::Approx(0.25));
    CHECK(fw_step_gd(8, 2.0) == doctest::Approx(0.5));
    CHECK_THROWS(fw_step_gd(0, 1.0));
    CHECK(fw_step_stationary(0.5, 1.0, 1.0) == 0.5);
    CHECK(fw_step_stationary(-0.5, 1.0, 1.0) == 0.0);
    CHECK(fw_step_stationary(5.0, 1.0, 2.0) == 1.0);
}

TEST_CASE("recursion simulation agrees with an independent loop") {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const double c = 1.0 + 4.0 * rng.uniform();
        const double d = 5.0 * rng.uniform();
        const double e = rng.uniform();
        const double h = 0.1 + 10.0 * rng.uniform();
        double g = h;
        double worst = 0.0;
        for (int t = 1; t <= 2000; ++t) {
            const double s = std::min(1.0, 2.0 * c / t);
            g = (1.0 - s / c) * g + s * s * d + s * e;
            worst = std::max(worst, g / (2.0 * c * c * std::max(2.0 * d, h) / t + c * e));
        }
        CHECK(fwlr_worst_ratio(c, d, e, h, 2000) == doctest::Approx(worst).epsilon(1e-12));
        CHECK(fwlr_bound_check(c, d, e, h, 2000));
    }
}

TEST_CASE("gradient-dominated mode converges on a concave quadratic at the stated rate") {
    Rng rng(2);
    Eigen::VectorXd target(5);
    for (auto& v : target) v = 0.5 + rng.uniform();
    target /= target.sum();
    FWProblem problem;
    problem.objective = [target](const Eigen::VectorXd& x) { return -0.5 * (x - target).squaredNorm(); };
    problem.gradient = [target](const Eigen::VectorXd& x) { return Eigen::VectorXd(target - x); };
    problem.oracle = vertex_oracle;
    problem.feasible = on_simplex;
    problem.smoothness_l = 1.0;
    problem.diameter_d = std::sqrt(2.0);
    problem.bound_h = 1.0;
    // the optimum, found by grid search over the simplex, is the target itself
    const Eigen::VectorXd best = grid_project(target);
    CHECK((best - target).cwiseAbs().maxCoeff() < 2e-3);
    double previous = 1e300;
    for (std::size_t t : {10u, 100u, 1000u}) {
        const auto result = ncfw_run(problem, t, FWMode::gradient_dominated, Eigen::VectorXd::Unit(5, 0));
        const double gap = problem.objective(target) - problem.objective(result.point);
        CHECK(gap <= fw_value_bound(problem, t));
        CHECK(gap <= previous);
        previous = gap;
        CHECK(on_simplex(result.point));
        CHECK(result.trace.etas.size() == t);
    }
}

TEST_CASE("stationarity mode returns the iterate before the smallest step") {
    // indefinite quadratic; any stationary point will do
    Eigen::Matrix3d a;
    a << 1.0, -2.0, 0.5, -2.0, -1.0, 0.3, 0.5, 0.3, 0.8;
    FWProblem problem;
    problem.objective = [a](const Eigen::VectorXd& x) { return 0.5 * x.dot(a * x); };
    problem.gradient = [a](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
    problem.oracle = vertex_oracle;
    problem.smoothness_l = a.eigenvalues().cwiseAbs().maxCoeff();
    problem.diameter_d = std::sqrt(2.0);
    problem.bound_h = 4.0;
    const Eigen::Vector3d x0(0.2, 0.3, 0.5);
    const auto result = ncfw_run(problem, 200, FWMode::stationarity, x0);
    const auto& etas = result.trace.etas;
    const auto first_min = static_cast<std::size_t>(std::min_element(etas.begin(), etas.end()) - etas.begin()) + 1;
    CHECK(result.chosen_round == first_min);
    const Eigen::VectorXd expect = first_min == 1 ? Eigen::VectorXd(x0) : result.trace.iterates[first_min - 2];
    CHECK((result.point - expect).norm() == 0.0);
    // the FW gap at the returned point
    const Eigen::VectorXd g = problem.gradient(result.point);
    CHECK(g.maxCoeff() - g.dot(result.point) <= fw_stationarity_bound(problem, 200, 0.0) + 1e-12);
    CHECK(result.step_residual >= 0.0);
}

TEST_CASE("an infeasible oracle output is a contract violation") {
    FWProblem problem;
    problem.objective = [](const Eigen::VectorXd&) { return 0.0; };
    problem.gradient = [](const Eigen::VectorXd& x) { return x; };
    problem.oracle = [](const Eigen::VectorXd& g) { return Eigen::VectorXd(2.0 * Eigen::VectorXd::Ones(g.size())); };
    problem.feasible = on_simplex;
    CHECK_THROWS_AS(ncfw_run(problem, 3, FWMode::gradient_dominated, Eigen::Vector2d(0.5, 0.5)), ContractViolation);
}

TEST_CASE("trace csv") {
    FWTrace trace;
    trace.etas = {1.0, 0.5};
    trace.gaps = {2.0, 0.25};
    trace.values = {-1.0, -0.5};
    std::ostringstream out;
    write_trace_csv(out, trace);
    CHECK(out.str() == "t,eta,gap,f\n1,1,2,-1\n2,0.5,0.25,-0.5\n");
}
