#include "rlboost/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rlboost {

Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto n = static_cast<std::size_t>(x.size());
    if (n == 0) throw std::invalid_argument("project_simplex: empty vector");
    if (!x.allFinite()) throw std::invalid_argument("project_simplex: non-finite entry");

    // Points already on the simplex (up to summation rounding) are fixed points;
    // returning them untouched makes the projection exactly idempotent.
    const double rounding = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    if (x.minCoeff() >= 0.0 && std::abs(x.sum() - 1.0) <= rounding) return x;

    std::vector<double> sorted(x.data(), x.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    // Largest k with sorted[k-1] - (sum_{i<k} sorted[i] - 1) / k > 0.
    double prefix = 0.0;
    double threshold = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        prefix += sorted[k];
        const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) threshold = candidate;
    }

    Eigen::VectorXd y = (x.array() - threshold).cwiseMax(0.0);
    // Absorb the last-ulp drift so the output sums to one.
    const double total = y.sum();
    if (total > 0.0) y /= total;
    return y;
}

double dist_to_simplex(const Eigen::Ref<const Eigen::VectorXd>& x) { return (x - project_simplex(x)).norm(); }

double norm_inf1(const Eigen::Ref<const Eigen::MatrixXd>& delta) {
    if (delta.size() == 0) return 0.0;
    return delta.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace rlboost
