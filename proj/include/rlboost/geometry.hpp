#pragma once

#include <Eigen/Dense>

namespace rlboost {

/// Euclidean projection onto the probability simplex (sort and threshold).
Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& x);

/// ||x - project_simplex(x)||_2.
double dist_to_simplex(const Eigen::Ref<const Eigen::VectorXd>& x);

/// max_s sum_a |delta(s, a)|.
double norm_inf1(const Eigen::Ref<const Eigen::MatrixXd>& delta);

}  // namespace rlboost
