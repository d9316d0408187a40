#pragma once
#include <Eigen/Dense>
#include <vector>

namespace evostream {

// Gaussian kernel bandwidth. The predictor kernel K and the similarity-graph
// weight w share this type; they are configured independently but default to
// the same value.
struct KernelConfig {
    double sigma = 1.0;
};

// exp(-|a-b|^2 / (2 sigma^2)). Throws config_error on sigma <= 0,
// input_error on dimension mismatch.
double kernel_eval(const KernelConfig& k, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Vector of kernel_eval(points[i], x).
Eigen::VectorXd kernel_vector(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points,
                              const Eigen::VectorXd& x);

// Symmetric Gram matrix of a point set. The default entry point parallelizes
// rows with OpenMP; the _serial variant is the reference implementation and
// the two agree exactly (each entry is computed independently).
Eigen::MatrixXd gram_matrix(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points);
Eigen::MatrixXd gram_matrix_serial(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points);

// rows x cols matrix of kernel_eval(a[i], b[j]).
Eigen::MatrixXd cross_gram(const KernelConfig& k, const std::vector<Eigen::VectorXd>& a,
                           const std::vector<Eigen::VectorXd>& b);

// Median pairwise distance over the first min(max_count, size) points.
// Scale-free default for bandwidths. Throws input_error when fewer than two
// points are available.
double median_heuristic(const std::vector<Eigen::VectorXd>& points, std::size_t max_count = 100);

}  // namespace evostream
