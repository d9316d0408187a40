#pragma once

#include "evostream/buffer.hpp"
#include "evostream/kernel.hpp"
#include "evostream/predictor.hpp"

namespace evostream {

// every_round: manifold-regularized learner, steps on all rounds.
// labeled_only: plain learner; unlabeled rounds only track the buffer so the
// representer set keeps mirroring its contents.
enum class UpdatePolicy { every_round, labeled_only };

// Online kernel learner whose representers mirror a reservoir buffer slot by
// slot. The first observed point becomes the sole representer with a caller
// supplied coefficient (the random initialization), merged with that round's
// gradient step.
class BufferedLearner {
  public:
    BufferedLearner(KernelConfig kernel, SpaceId space, RiskParams params, UpdatePolicy policy,
                    std::size_t capacity, double init_coefficient);

    // Continue from an initialization-phase predictor and its buffer.
    BufferedLearner(KernelPredictor f, ReservoirBuffer buf, RiskParams params,
                    UpdatePolicy policy);

    double predict(const Eigen::VectorXd& x) const { return evaluate(f_, x); }

    // Instantaneous risk of x against the current model and buffer, measured
    // before any update this round.
    double risk(const Sample& x) const;

    // One round: reservoir offer plus the matching coefficient update.
    // u, v are the round's shared reservoir draws.
    void observe(const Sample& x, double tau, double u, double v);

    const KernelPredictor& predictor() const { return f_; }
    const ReservoirBuffer& buffer() const { return buffer_; }
    const RiskParams& params() const { return params_; }

  private:
    void first_round(const Sample& x, double tau, double u, double v);

    KernelPredictor f_;
    ReservoirBuffer buffer_;
    RiskParams params_;
    UpdatePolicy policy_;
    double init_coefficient_ = 0.0;
    bool started_ = false;
};

// Unbuffered reference learner: keeps the full history as representers and
// applies the same update with oracle scale 1. With buffer capacity at least
// the stream length, BufferedLearner reproduces it bit for bit.
class OracleLearner {
  public:
    OracleLearner(KernelConfig kernel, SpaceId space, RiskParams params, UpdatePolicy policy,
                  double init_coefficient);

    double predict(const Eigen::VectorXd& x) const { return evaluate(f_, x); }
    double risk(const Sample& x) const;
    void observe(const Sample& x, double tau);

    const KernelPredictor& predictor() const { return f_; }
    const std::vector<Eigen::VectorXd>& history() const { return f_.representers; }

  private:
    KernelPredictor f_;
    RiskParams params_;
    UpdatePolicy policy_;
    double init_coefficient_ = 0.0;
    bool started_ = false;
};

// Frozen predictor with a live side buffer: the model never changes, but the
// buffer keeps sampling the stream so manifold risk stays measurable.
class FrozenModel {
  public:
    FrozenModel(KernelPredictor f, ReservoirBuffer buf, RiskParams params);

    double predict(const Eigen::VectorXd& x) const { return evaluate(f_, x); }
    double risk(const Sample& x) const;
    void observe(const Sample& x, double u, double v);

    const KernelPredictor& predictor() const { return f_; }
    const ReservoirBuffer& buffer() const { return buffer_; }

  private:
    KernelPredictor f_;
    ReservoirBuffer buffer_;
    RiskParams params_;
};

}  // namespace evostream
