#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace evostream {

// Affine map from the new feature space into the old one: x -> M x + c.
struct LinearMap {
    Eigen::MatrixXd matrix;     // d1 x d2
    Eigen::VectorXd intercept;  // d1
    double ridge = 0.0;         // value used at fit time
};

using MappingPair = std::pair<Eigen::VectorXd, Eigen::VectorXd>;  // (x_s2, x_s1)

// Ridge-regularized affine least squares over the overlap pairs. The ridge
// penalizes only the matrix, never the intercept. Rank-deficient systems at
// ridge = 0 raise numerical_error.
LinearMap fit_mapping(const std::vector<MappingPair>& pairs, double ridge);

// Scale-aware default ridge for short overlaps: 1e-6 times the mean squared
// input magnitude per coordinate.
double default_mapping_ridge(const std::vector<MappingPair>& pairs);

Eigen::VectorXd apply_mapping(const LinearMap& m, const Eigen::VectorXd& x);

}  // namespace evostream
