#pragma once

#include <Eigen/Dense>

namespace rlboost {

/// Linear loss y -> c^T y, defined on all of R^|A|.
struct LinearLoss {
    Eigen::VectorXd coeffs;
};

struct SmoothingParams {
    double beta;   ///< Moreau smoothing radius, > 0
    double g_lip;  ///< weight G of the distance-to-simplex penalty, > 0
};

/**
 * Smoothed extension of a linear loss:
 *
 *   F(x) = min_y  c^T y + G dist(y, simplex) + ||x - y||^2 / (2 beta).
 *
 * The minimizer is the prox of beta G dist(., simplex) at x - beta c, which
 * has a closed form; F is differentiable with (1/beta)-Lipschitz gradient
 * (x - prox) / beta everywhere, including far outside the simplex.
 */
Eigen::VectorXd prox_step(const LinearLoss& loss, const SmoothingParams& params,
                          const Eigen::Ref<const Eigen::VectorXd>& x);

Eigen::VectorXd extension_gradient(const LinearLoss& loss, const SmoothingParams& params,
                                   const Eigen::Ref<const Eigen::VectorXd>& x);

double envelope_value(const LinearLoss& loss, const SmoothingParams& params, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Objective minimized by prox_step, evaluated at an arbitrary y.
double extension_objective(const LinearLoss& loss, const SmoothingParams& params,
                           const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace rlboost
