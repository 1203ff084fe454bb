#include "test_support.hpp"

#include "rlboost/geometry.hpp"

#include <doctest.h>

using namespace rlboost;
using namespace testsupport;

namespace {

Eigen::VectorXd random_point(Eigen::Index n, double scale, Rng& rng) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * (2.0 * rng.uniform() - 1.0);
    return v;
}

}  // namespace

TEST_CASE("projection matches a grid-search QP") {
    Rng rng(1);
    for (int i = 0; i < 60; ++i) {
        const auto n = static_cast<Eigen::Index>(2 + rng.uniform_index(4));
        const Eigen::VectorXd x = random_point(n, 2.0, rng);
        CHECK((project_simplex(x) - grid_project(x)).cwiseAbs().maxCoeff() < 2e-3);
    }
}

TEST_CASE("projection matches threshold bisection") {
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<Eigen::Index>(2 + rng.uniform_index(8));
        const Eigen::VectorXd x = random_point(n, 5.0, rng);
        CHECK((project_simplex(x) - bisect_project(x)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("projection lands on the simplex, fixes it and never expands distances") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<Eigen::Index>(2 + rng.uniform_index(6));
        const Eigen::VectorXd x = random_point(n, 3.0, rng);
        const Eigen::VectorXd y = random_point(n, 3.0, rng);
        const Eigen::VectorXd px = project_simplex(x);
        CHECK(px.minCoeff() >= 0.0);
        CHECK(px.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((project_simplex(px) - px).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((px - project_simplex(y)).norm() <= (x - y).norm() + 1e-12);
        CHECK(dist_to_simplex(x) == doctest::Approx((x - px).norm()));
    }
}

TEST_CASE("special points") {
    CHECK(dist_to_simplex(Eigen::Vector3d(0.2, 0.3, 0.5)) == doctest::Approx(0.0));
    const Eigen::VectorXd p = project_simplex(Eigen::Vector3d(0, 0, 0));
    CHECK(p(0) == doctest::Approx(1.0 / 3));
    const Eigen::VectorXd q = project_simplex(Eigen::Vector2d(5, 0));
    CHECK(q(0) == 1.0);
    CHECK(q(1) == 0.0);
    Eigen::MatrixXd delta(2, 3);
    delta << 0.1, -0.2, 0.0, 0.5, 0.5, -0.3;
    CHECK(norm_inf1(delta) == doctest::Approx(1.3));
}
