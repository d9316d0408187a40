#include "evostream/learner.hpp"

#include "evostream/errors.hpp"
#include "evostream/loss.hpp"

namespace evostream {

namespace {

// The random-initialization merge: the first point enters as the sole
// representer with coefficient c, and the round's gradient step acts on that
// one-term expansion (f(x) = c since K(x,x) = 1). The buffer is empty before
// this round, so there is no manifold pull.
double merged_first_coefficient(double c, const Sample& x, const RiskParams& params, double tau,
                                bool supervised_round) {
    if (!supervised_round) return c;
    double beta0 = (1.0 - tau * params.lambda1) * c;
    if (x.label) {
        const LossValue lv = prediction_loss(params.loss, c, *x.label);
        beta0 -= tau * params.inv_label_prob * lv.derivative;
    }
    return beta0;
}

}  // namespace

BufferedLearner::BufferedLearner(KernelConfig kernel, SpaceId space, RiskParams params,
                                 UpdatePolicy policy, std::size_t capacity,
                                 double init_coefficient)
    : buffer_(capacity),
      params_(params),
      policy_(policy),
      init_coefficient_(init_coefficient) {
    f_.kernel = kernel;
    f_.space = space;
    f_.coefficients.resize(0);
}

BufferedLearner::BufferedLearner(KernelPredictor f, ReservoirBuffer buf, RiskParams params,
                                 UpdatePolicy policy)
    : f_(std::move(f)),
      buffer_(std::move(buf)),
      params_(params),
      policy_(policy),
      started_(true) {
    if (f_.representers.size() != buffer_.occupancy())
        throw internal_error("learner: continuing predictor out of sync with buffer");
}

double BufferedLearner::risk(const Sample& x) const {
    const long t = static_cast<long>(buffer_.seen_count()) + 1;
    return buffered_risk(f_, x, buffer_.contents(), params_, t);
}

void BufferedLearner::first_round(const Sample& x, double tau, double u, double v) {
    started_ = true;
    const bool supervised_round =
        policy_ == UpdatePolicy::every_round || x.label.has_value();
    const double beta0 =
        merged_first_coefficient(init_coefficient_, x, params_, tau, supervised_round);
    f_.representers.push_back(x.features);
    f_.coefficients.resize(1);
    f_.coefficients[0] = beta0;
    buffer_.offer_with(x.features, u, v);
}

void BufferedLearner::observe(const Sample& x, double tau, double u, double v) {
    if (!started_) {
        first_round(x, tau, u, v);
        return;
    }
    const std::vector<Eigen::VectorXd> before = buffer_.contents();
    const double scale = before.empty()
                             ? 0.0
                             : static_cast<double>(buffer_.seen_count()) /
                                   static_cast<double>(before.size());
    const InsertDecision dec = buffer_.offer_with(x.features, u, v);
    const bool supervised_round =
        policy_ == UpdatePolicy::every_round || x.label.has_value();
    if (supervised_round) {
        switch (dec.kind) {
            case InsertDecision::Kind::AppendedDirect:
                f_ = step_direct_append(f_, x, before, params_, tau, scale);
                break;
            case InsertDecision::Kind::Replaced:
                f_ = step_with_replacement(f_, x, before, dec.replaced_index, params_, tau,
                                           scale);
                break;
            case InsertDecision::Kind::Skipped:
                f_ = step_no_insert(f_, x, before, params_, tau, scale);
                break;
        }
        return;
    }
    // Unlabeled round under the label-gated policy: no gradient step, but the
    // representer set must keep mirroring the buffer.
    switch (dec.kind) {
        case InsertDecision::Kind::AppendedDirect: {
            f_.representers.push_back(x.features);
            const auto n = f_.coefficients.size();
            f_.coefficients.conservativeResize(n + 1);
            f_.coefficients[n] = 0.0;
            break;
        }
        case InsertDecision::Kind::Replaced: {
            std::vector<Eigen::VectorXd> target = before;
            target[dec.replaced_index] = x.features;
            ProjectionResult proj = project_onto_span(f_, target);
            f_.representers = std::move(target);
            f_.coefficients = std::move(proj.coefficients);
            break;
        }
        case InsertDecision::Kind::Skipped:
            break;
    }
}

OracleLearner::OracleLearner(KernelConfig kernel, SpaceId space, RiskParams params,
                             UpdatePolicy policy, double init_coefficient)
    : params_(params), policy_(policy), init_coefficient_(init_coefficient) {
    f_.kernel = kernel;
    f_.space = space;
    f_.coefficients.resize(0);
}

double OracleLearner::risk(const Sample& x) const {
    return full_risk_oracle(f_, x, f_.representers, params_);
}

void OracleLearner::observe(const Sample& x, double tau) {
    if (!started_) {
        started_ = true;
        const bool supervised_round =
            policy_ == UpdatePolicy::every_round || x.label.has_value();
        const double beta0 =
            merged_first_coefficient(init_coefficient_, x, params_, tau, supervised_round);
        f_.representers.push_back(x.features);
        f_.coefficients.resize(1);
        f_.coefficients[0] = beta0;
        return;
    }
    const bool supervised_round =
        policy_ == UpdatePolicy::every_round || x.label.has_value();
    if (supervised_round) {
        // History equals the representer list, captured before this round.
        const std::vector<Eigen::VectorXd> before = f_.representers;
        f_ = step_direct_append(f_, x, before, params_, tau, 1.0);
    } else {
        f_.representers.push_back(x.features);
        const auto n = f_.coefficients.size();
        f_.coefficients.conservativeResize(n + 1);
        f_.coefficients[n] = 0.0;
    }
}

FrozenModel::FrozenModel(KernelPredictor f, ReservoirBuffer buf, RiskParams params)
    : f_(std::move(f)), buffer_(std::move(buf)), params_(params) {}

double FrozenModel::risk(const Sample& x) const {
    const long t = static_cast<long>(buffer_.seen_count()) + 1;
    return buffered_risk(f_, x, buffer_.contents(), params_, t);
}

void FrozenModel::observe(const Sample& x, double u, double v) {
    buffer_.offer_with(x.features, u, v);
}

}  // namespace evostream
