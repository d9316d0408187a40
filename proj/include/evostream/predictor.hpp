#pragma once
#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "evostream/kernel.hpp"
#include "evostream/loss.hpp"

namespace evostream {

enum class SpaceId { s1, s2 };

// One stream observation in a single feature space. label is present only
// when the round revealed it.
struct Sample {
    Eigen::VectorXd features;
    SpaceId space = SpaceId::s1;
    std::optional<int> label;  // -1 or +1 when present
    long step = 1;
};

// Kernel expansion f = sum_s beta_s K(r_s, .).
struct KernelPredictor {
    KernelConfig kernel;
    std::vector<Eigen::VectorXd> representers;
    Eigen::VectorXd coefficients;  // aligned with representers
    SpaceId space = SpaceId::s1;
};

// Parameters of the instantaneous regularized risk: scaled supervised loss,
// RKHS-norm penalty lambda1, manifold penalty lambda2 with graph weights from
// graph_kernel, inv_label_prob = 1/p_l scaling the supervised term.
struct RiskParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double inv_label_prob = 1.0;
    LossId loss = LossId::logistic;
    KernelConfig graph_kernel;
};

double evaluate(const KernelPredictor& f, const Eigen::VectorXd& x);

// f at many points. The default entry point parallelizes over points with
// OpenMP; the _serial variant is the reference. Per-point sums run in a fixed
// order, so both produce identical doubles.
Eigen::VectorXd evaluate_many(const KernelPredictor& f, const std::vector<Eigen::VectorXd>& xs);
Eigen::VectorXd evaluate_many_serial(const KernelPredictor& f, const std::vector<Eigen::VectorXd>& xs);

// beta' G beta, clamped to 0 from below against roundoff.
double rkhs_norm_sq(const KernelPredictor& f);

// Per-round objective against the reservoir contents:
//   inv_label_prob * [label revealed] * loss(f(x_t), y_t)
//   + (lambda1/2) |f|_K^2
//   + lambda2 * ((t-1)/b_eff) * sum_s (f(x_s) - f(x_t))^2 w(x_s, x_t)
// with b_eff the current occupancy; the manifold term is 0 for an empty
// buffer. t is the learner-local round index.
double buffered_risk(const KernelPredictor& f, const Sample& x_t,
                     const std::vector<Eigen::VectorXd>& buffer_contents, const RiskParams& params,
                     long t);

// Same risk summed over the full history with no scaling factor. Test oracle
// for reservoir unbiasedness.
double full_risk_oracle(const KernelPredictor& f, const Sample& x_t,
                        const std::vector<Eigen::VectorXd>& history, const RiskParams& params);

struct ProjectionResult {
    Eigen::VectorXd coefficients;
    double residual_norm;  // RKHS distance between input and projection
};

// argmin_beta |sum_s beta_s K(z_s,.) - f_prime|_K over the target span,
// solved as (G_zz + 1e-8 I) beta = G_zr beta'. Throws numerical_error when
// the system cannot be solved.
ProjectionResult project_onto_span(const KernelPredictor& f_prime,
                                   const std::vector<Eigen::VectorXd>& target_points);

// Functional-gradient steps. buffer_contents is the reservoir BEFORE this
// round's offer; scale is (t-1)/b_eff in the buffered regime and 1 in the
// unbuffered oracle regime (0 with an empty buffer). All three return a new
// predictor and leave f untouched.

// Reservoir appended x_t: shrink old coefficients, apply the graph pull, and
// attach the new representer's coefficient (graph sum minus supervised
// gradient).
KernelPredictor step_direct_append(const KernelPredictor& f, const Sample& x_t,
                                   const std::vector<Eigen::VectorXd>& buffer_contents,
                                   const RiskParams& params, double tau, double scale);

// Reservoir replaced buffer_contents[replaced_index] with x_t: build the
// intermediate on b+1 representers, then project onto the new buffer span.
KernelPredictor step_with_replacement(const KernelPredictor& f, const Sample& x_t,
                                      const std::vector<Eigen::VectorXd>& buffer_contents,
                                      std::size_t replaced_index, const RiskParams& params,
                                      double tau, double scale);

// Reservoir declined x_t. Unlabeled: only existing coefficients move.
// Labeled: the supervised gradient is kept by treating x_t as a temporary
// representer that is immediately projected out.
KernelPredictor step_no_insert(const KernelPredictor& f, const Sample& x_t,
                               const std::vector<Eigen::VectorXd>& buffer_contents,
                               const RiskParams& params, double tau, double scale);

}  // namespace evostream
