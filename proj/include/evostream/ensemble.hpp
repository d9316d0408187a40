#pragma once

#include <array>
#include <vector>

namespace evostream {

// Exponential-weights state over the two base models. Weights are kept in
// both linear and log form; updates run in log domain so long streams never
// underflow the pair to zero.
struct EnsembleState {
    std::array<double, 2> weights{};
    std::array<double, 2> log_weights{};
    std::array<double, 2> cumulative_risks{};
    double eta = 0.0;
};

EnsembleState make_ensemble(double eta);

double combine(const EnsembleState& state, double p1, double p2);

double ensemble_risk(const EnsembleState& state, double j1, double j2);

// j1, j2 must already be clipped to [0,1].
EnsembleState update_weights(const EnsembleState& state, double j1_clipped, double j2_clipped);

double default_eta(long t2);

// Maps unbounded instantaneous risks into [0,1] via j -> min(j / cap, 1).
// The cap is the running 95th percentile of both base risks over a warm-up
// window (current round included), then frozen.
class RiskClipper {
  public:
    explicit RiskClipper(int warmup_rounds = 50);

    // Feed the round's raw base risks; returns the clipped pair.
    std::array<double, 2> observe(double j1, double j2);

    double cap() const { return cap_; }
    bool frozen() const { return frozen_; }

  private:
    int warmup_;
    int seen_ = 0;
    bool frozen_ = false;
    double cap_ = 1e-12;
    std::vector<double> values_;
};

}  // namespace evostream
