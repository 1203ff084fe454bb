#include "rlboost/smoothing.hpp"

#include "rlboost/geometry.hpp"

#include <stdexcept>

namespace rlboost {

namespace {

void check_inputs(const LinearLoss& loss, const SmoothingParams& params, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (!(params.beta > 0.0) || !(params.g_lip > 0.0))
        throw std::invalid_argument("smoothing: beta and G must be positive");
    if (loss.coeffs.size() != x.size()) throw std::invalid_argument("smoothing: loss and point differ in dimension");
    if (!loss.coeffs.allFinite() || !x.allFinite()) throw std::invalid_argument("smoothing: non-finite input");
}

}  // namespace

Eigen::VectorXd prox_step(const LinearLoss& loss, const SmoothingParams& params,
                          const Eigen::Ref<const Eigen::VectorXd>& x) {
    check_inputs(loss, params, x);
    const Eigen::VectorXd shifted = x - params.beta * loss.coeffs;
    const Eigen::VectorXd projected = project_simplex(shifted);
    const Eigen::VectorXd offset = shifted - projected;
    const double dist = offset.norm();
    const double radius = params.beta * params.g_lip;
    if (dist <= radius) return projected;
    return shifted - (radius / dist) * offset;
}

Eigen::VectorXd extension_gradient(const LinearLoss& loss, const SmoothingParams& params,
                                   const Eigen::Ref<const Eigen::VectorXd>& x) {
    return (x - prox_step(loss, params, x)) / params.beta;
}

double extension_objective(const LinearLoss& loss, const SmoothingParams& params,
                           const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
    return loss.coeffs.dot(y) + params.g_lip * dist_to_simplex(y) + (x - y).squaredNorm() / (2.0 * params.beta);
}

double envelope_value(const LinearLoss& loss, const SmoothingParams& params, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return extension_objective(loss, params, x, prox_step(loss, params, x));
}

}  // namespace rlboost
