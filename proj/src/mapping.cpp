#include "evostream/mapping.hpp"

#include "evostream/errors.hpp"

namespace evostream {

namespace {

void check_pairs(const std::vector<MappingPair>& pairs) {
    if (pairs.empty()) throw input_error("fit_mapping: no overlap pairs");
    const auto d2 = pairs.front().first.size();
    const auto d1 = pairs.front().second.size();
    for (const auto& [x, y] : pairs)
        if (x.size() != d2 || y.size() != d1)
            throw input_error("fit_mapping: inconsistent pair dimensions");
}

}  // namespace

LinearMap fit_mapping(const std::vector<MappingPair>& pairs, double ridge) {
    check_pairs(pairs);
    if (ridge < 0.0) throw config_error("fit_mapping: ridge must be nonnegative");
    const auto d2 = pairs.front().first.size();
    const auto d1 = pairs.front().second.size();

    // Normal equations over augmented inputs [x; 1]; the ridge touches only
    // the matrix block so the intercept stays unpenalized.
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(d2 + 1, d2 + 1);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(d2 + 1, d1);
    Eigen::VectorXd aug(d2 + 1);
    for (const auto& [x, y] : pairs) {
        aug.head(d2) = x;
        aug[d2] = 1.0;
        lhs.noalias() += aug * aug.transpose();
        rhs.noalias() += aug * y.transpose();
    }
    lhs.diagonal().head(d2).array() += ridge;

    Eigen::MatrixXd sol;
    if (ridge == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
        if (!lu.isInvertible())
            throw numerical_error(
                "fit_mapping: overlap system is rank-deficient at ridge = 0; set ridge > 0");
        sol = lu.solve(rhs);
    } else {
        Eigen::LDLT<Eigen::MatrixXd> solver(lhs);
        if (solver.info() != Eigen::Success)
            throw numerical_error("fit_mapping: normal equations could not be factored");
        sol = solver.solve(rhs);
    }
    if (!sol.allFinite()) throw numerical_error("fit_mapping: non-finite solution");

    LinearMap m;
    m.matrix = sol.topRows(d2).transpose();
    m.intercept = sol.row(d2).transpose();
    m.ridge = ridge;
    return m;
}

double default_mapping_ridge(const std::vector<MappingPair>& pairs) {
    check_pairs(pairs);
    const auto d2 = pairs.front().first.size();
    double trace = 0.0;
    for (const auto& p : pairs) trace += p.first.squaredNorm();
    return 1e-6 * trace / static_cast<double>(d2);
}

Eigen::VectorXd apply_mapping(const LinearMap& m, const Eigen::VectorXd& x) {
    if (x.size() != m.matrix.cols()) throw input_error("apply_mapping: dimension mismatch");
    return m.matrix * x + m.intercept;
}

}  // namespace evostream
