#include "evostream/predictor.hpp"

#include <cmath>

#include "evostream/errors.hpp"

namespace evostream {

namespace {

constexpr double kProjectionRidge = 1e-8;

void check_dim(const KernelPredictor& f, const Eigen::VectorXd& x) {
    if (!f.representers.empty() && f.representers.front().size() != x.size())
        throw input_error("predictor: dimension mismatch");
}

// Manifold pull per buffer slot: 2 tau lambda2 scale (f(x_s) - f(x_t)) w_st.
Eigen::VectorXd graph_pull(const KernelPredictor& f, const Sample& x_t,
                           const std::vector<Eigen::VectorXd>& buffer_contents,
                           const RiskParams& params, double tau, double scale, double fx) {
    const auto b = static_cast<Eigen::Index>(buffer_contents.size());
    if (params.lambda2 == 0.0 || b == 0 || scale == 0.0) return Eigen::VectorXd::Zero(b);
    const Eigen::VectorXd f_buf = evaluate_many(f, buffer_contents);
    const Eigen::VectorXd w = kernel_vector(params.graph_kernel, buffer_contents, x_t.features);
    return (2.0 * tau * params.lambda2 * scale) *
           ((f_buf.array() - fx) * w.array()).matrix();
}

double supervised_gradient(const Sample& x_t, const RiskParams& params, double tau, double fx) {
    if (!x_t.label) return 0.0;
    const LossValue lv = prediction_loss(params.loss, fx, *x_t.label);
    return tau * params.inv_label_prob * lv.derivative;
}

// Intermediate predictor on representers + x_t built from the shared update
// formulas; used by the append and both two-step paths.
KernelPredictor intermediate_with_new_representer(const KernelPredictor& f, const Sample& x_t,
                                                  const std::vector<Eigen::VectorXd>& buffer_contents,
                                                  const RiskParams& params, double tau, double scale) {
    check_dim(f, x_t.features);
    if (f.representers.size() != buffer_contents.size())
        throw internal_error("step: predictor representers out of sync with buffer");
    const double fx = evaluate(f, x_t.features);
    const Eigen::VectorXd g = graph_pull(f, x_t, buffer_contents, params, tau, scale, fx);
    KernelPredictor out;
    out.kernel = f.kernel;
    out.space = f.space;
    out.representers = f.representers;
    out.representers.push_back(x_t.features);
    const auto b = static_cast<Eigen::Index>(f.representers.size());
    out.coefficients.resize(b + 1);
    out.coefficients.head(b) = (1.0 - tau * params.lambda1) * f.coefficients - g;
    out.coefficients[b] = g.sum() - supervised_gradient(x_t, params, tau, fx);
    return out;
}

}  // namespace

double evaluate(const KernelPredictor& f, const Eigen::VectorXd& x) {
    check_dim(f, x);
    double acc = 0.0;
    for (std::size_t s = 0; s < f.representers.size(); ++s)
        acc += f.coefficients[static_cast<Eigen::Index>(s)] *
               kernel_eval(f.kernel, f.representers[s], x);
    return acc;
}

Eigen::VectorXd evaluate_many_serial(const KernelPredictor& f,
                                     const std::vector<Eigen::VectorXd>& xs) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) out[static_cast<Eigen::Index>(i)] = evaluate(f, xs[i]);
    return out;
}

Eigen::VectorXd evaluate_many(const KernelPredictor& f, const std::vector<Eigen::VectorXd>& xs) {
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) out[i] = evaluate(f, xs[static_cast<std::size_t>(i)]);
    return out;
}

double rkhs_norm_sq(const KernelPredictor& f) {
    if (f.representers.empty()) return 0.0;
    const Eigen::MatrixXd g = gram_matrix(f.kernel, f.representers);
    const double v = f.coefficients.dot(g * f.coefficients);
    return v < 0.0 ? 0.0 : v;
}

double buffered_risk(const KernelPredictor& f, const Sample& x_t,
                     const std::vector<Eigen::VectorXd>& buffer_contents, const RiskParams& params,
                     long t) {
    check_dim(f, x_t.features);
    const double fx = evaluate(f, x_t.features);
    double risk = 0.5 * params.lambda1 * rkhs_norm_sq(f);
    if (x_t.label)
        risk += params.inv_label_prob * prediction_loss(params.loss, fx, *x_t.label).value;
    if (params.lambda2 > 0.0 && !buffer_contents.empty()) {
        const double scale =
            static_cast<double>(t - 1) / static_cast<double>(buffer_contents.size());
        const Eigen::VectorXd f_buf = evaluate_many(f, buffer_contents);
        const Eigen::VectorXd w = kernel_vector(params.graph_kernel, buffer_contents, x_t.features);
        risk += params.lambda2 * scale * ((f_buf.array() - fx).square() * w.array()).sum();
    }
    return risk;
}

double full_risk_oracle(const KernelPredictor& f, const Sample& x_t,
                        const std::vector<Eigen::VectorXd>& history, const RiskParams& params) {
    check_dim(f, x_t.features);
    const double fx = evaluate(f, x_t.features);
    double risk = 0.5 * params.lambda1 * rkhs_norm_sq(f);
    if (x_t.label)
        risk += params.inv_label_prob * prediction_loss(params.loss, fx, *x_t.label).value;
    if (params.lambda2 > 0.0 && !history.empty()) {
        const Eigen::VectorXd f_hist = evaluate_many(f, history);
        const Eigen::VectorXd w = kernel_vector(params.graph_kernel, history, x_t.features);
        risk += params.lambda2 * ((f_hist.array() - fx).square() * w.array()).sum();
    }
    return risk;
}

ProjectionResult project_onto_span(const KernelPredictor& f_prime,
                                   const std::vector<Eigen::VectorXd>& target_points) {
    if (target_points.empty()) throw input_error("project_onto_span: empty target span");
    const Eigen::MatrixXd g_zz = gram_matrix(f_prime.kernel, target_points);
    const Eigen::MatrixXd g_zr = cross_gram(f_prime.kernel, target_points, f_prime.representers);
    const Eigen::VectorXd rhs = g_zr * f_prime.coefficients;
    Eigen::MatrixXd lhs = g_zz;
    lhs.diagonal().array() += kProjectionRidge;
    Eigen::LDLT<Eigen::MatrixXd> solver(lhs);
    if (solver.info() != Eigen::Success)
        throw numerical_error("project_onto_span: projection system could not be factored");
    Eigen::VectorXd beta = solver.solve(rhs);
    if (!beta.allFinite())
        throw numerical_error("project_onto_span: projection produced non-finite coefficients");
    const double norm_prime = rkhs_norm_sq(f_prime);
    double res2 = norm_prime - 2.0 * beta.dot(rhs) + beta.dot(g_zz * beta);
    if (res2 < 0.0) res2 = 0.0;
    return {std::move(beta), std::sqrt(res2)};
}

KernelPredictor step_direct_append(const KernelPredictor& f, const Sample& x_t,
                                   const std::vector<Eigen::VectorXd>& buffer_contents,
                                   const RiskParams& params, double tau, double scale) {
    return intermediate_with_new_representer(f, x_t, buffer_contents, params, tau, scale);
}

KernelPredictor step_with_replacement(const KernelPredictor& f, const Sample& x_t,
                                      const std::vector<Eigen::VectorXd>& buffer_contents,
                                      std::size_t replaced_index, const RiskParams& params,
                                      double tau, double scale) {
    if (replaced_index >= buffer_contents.size())
        throw internal_error("step_with_replacement: replaced index out of range");
    const KernelPredictor intermediate =
        intermediate_with_new_representer(f, x_t, buffer_contents, params, tau, scale);
    std::vector<Eigen::VectorXd> target = buffer_contents;
    target[replaced_index] = x_t.features;
    ProjectionResult proj = project_onto_span(intermediate, target);
    KernelPredictor out;
    out.kernel = f.kernel;
    out.space = f.space;
    out.representers = std::move(target);
    out.coefficients = std::move(proj.coefficients);
    return out;
}

KernelPredictor step_no_insert(const KernelPredictor& f, const Sample& x_t,
                               const std::vector<Eigen::VectorXd>& buffer_contents,
                               const RiskParams& params, double tau, double scale) {
    if (!x_t.label) {
        check_dim(f, x_t.features);
        if (f.representers.size() != buffer_contents.size())
            throw internal_error("step: predictor representers out of sync with buffer");
        const double fx = evaluate(f, x_t.features);
        const Eigen::VectorXd g = graph_pull(f, x_t, buffer_contents, params, tau, scale, fx);
        KernelPredictor out;
        out.kernel = f.kernel;
        out.space = f.space;
        out.representers = f.representers;
        out.coefficients = (1.0 - tau * params.lambda1) * f.coefficients - g;
        return out;
    }
    // Labeled: keep the supervised gradient by projecting the temporary
    // (b+1)-representer intermediate back onto the unchanged buffer span.
    const KernelPredictor intermediate =
        intermediate_with_new_representer(f, x_t, buffer_contents, params, tau, scale);
    ProjectionResult proj = project_onto_span(intermediate, buffer_contents);
    KernelPredictor out;
    out.kernel = f.kernel;
    out.space = f.space;
    out.representers = f.representers;
    out.coefficients = std::move(proj.coefficients);
    return out;
}

}  // namespace evostream
