#include "evostream/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "evostream/errors.hpp"

namespace evostream {

namespace {
void check_sigma(double sigma) {
    if (!(sigma > 0.0)) throw config_error("kernel bandwidth must be positive");
}
}  // namespace

double kernel_eval(const KernelConfig& k, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_sigma(k.sigma);
    if (a.size() != b.size()) throw input_error("kernel_eval: dimension mismatch");
    const double d2 = (a - b).squaredNorm();
    return std::exp(-d2 / (2.0 * k.sigma * k.sigma));
}

Eigen::VectorXd kernel_vector(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points,
                              const Eigen::VectorXd& x) {
    check_sigma(k.sigma);
    Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != x.size()) throw input_error("kernel_vector: dimension mismatch");
        out[static_cast<Eigen::Index>(i)] =
            std::exp(-(points[i] - x).squaredNorm() / (2.0 * k.sigma * k.sigma));
    }
    return out;
}

Eigen::MatrixXd gram_matrix_serial(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points) {
    check_sigma(k.sigma);
    const auto n = static_cast<Eigen::Index>(points.size());
    const double inv = 1.0 / (2.0 * k.sigma * k.sigma);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = std::exp(-(points[i] - points[j]).squaredNorm() * inv);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

Eigen::MatrixXd gram_matrix(const KernelConfig& k, const std::vector<Eigen::VectorXd>& points) {
    check_sigma(k.sigma);
    const auto n = static_cast<Eigen::Index>(points.size());
    const double inv = 1.0 / (2.0 * k.sigma * k.sigma);
    Eigen::MatrixXd g(n, n);
#pragma omp parallel for schedule(dynamic, 8)
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = std::exp(-(points[i] - points[j]).squaredNorm() * inv);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

Eigen::MatrixXd cross_gram(const KernelConfig& k, const std::vector<Eigen::VectorXd>& a,
                           const std::vector<Eigen::VectorXd>& b) {
    check_sigma(k.sigma);
    const auto na = static_cast<Eigen::Index>(a.size());
    const auto nb = static_cast<Eigen::Index>(b.size());
    const double inv = 1.0 / (2.0 * k.sigma * k.sigma);
    Eigen::MatrixXd g(na, nb);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < nb; ++j)
            g(i, j) = std::exp(-(a[i] - b[j]).squaredNorm() * inv);
    return g;
}

double median_heuristic(const std::vector<Eigen::VectorXd>& points, std::size_t max_count) {
    const std::size_t n = std::min(points.size(), max_count);
    if (n < 2) throw input_error("median_heuristic: need at least two samples");
    std::vector<double> d;
    d.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.push_back((points[i] - points[j]).norm());
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    return m % 2 == 1 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
}

}  // namespace evostream
