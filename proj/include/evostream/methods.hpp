#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evostream/ensemble.hpp"
#include "evostream/kernel.hpp"
#include "evostream/loss.hpp"
#include "evostream/stream.hpp"

namespace evostream {

// nogd:       fresh learner on the new space, supervised rounds only
// nogd_mr:    fresh manifold-regularized learner on the new space
// urogd:      old-space model continuing on mapped inputs, supervised only
// urogd_mr:   same but manifold-regularized every round
// frogd:      old-space model frozen after initialization
// frogd_mr:   frozen manifold-trained model (risk measured on a live buffer)
// ensemble_plain: weighted pair (urogd, nogd), weights updated on labeled rounds
// ensemble:   weighted pair (urogd_mr, nogd_mr), weights updated every round
enum class MethodKind {
    nogd,
    nogd_mr,
    urogd,
    urogd_mr,
    frogd,
    frogd_mr,
    ensemble_plain,
    ensemble,
};

const char* method_name(MethodKind kind);

// Comma-separated names, or "all" for every method in canonical order.
std::vector<MethodKind> parse_methods(const std::string& spec);

std::vector<MethodKind> all_methods();

struct MethodRunConfig {
    StreamSchedule schedule;
    std::size_t buffer_capacity = 60;
    double lambda1 = 0.001;
    double lambda2 = 0.2;
    KernelConfig kernel_s1;  // resolved bandwidths (sigma > 0 required)
    KernelConfig kernel_s2;
    LossId loss = LossId::logistic;
    double eta = 0.0;  // <= 0 resolves to default_eta(T2)
    bool zero_init = false;
    int clip_warmup = 50;
};

struct RoundRecord {
    long t = 0;            // 1..T2, relative to the evaluation phase
    double raw_risk = 0.0; // instantaneous risk of the method's predictor
    double avg_cum_risk = 0.0;
    int correct = 0;
    double alpha1 = 0.0;  // ensemble weights used for this round's prediction
    double alpha2 = 0.0;
    double ens_cum_clipped = 0.0;
    double min_base_cum_clipped = 0.0;
    double bound = 0.0;
};

struct MethodResult {
    MethodKind kind = MethodKind::nogd;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    double final_avg_cum_risk = 0.0;
    std::vector<RoundRecord> rounds;
    // Ensemble kinds only:
    double j_cap = 0.0;
    double ens_cum_clipped = 0.0;
    double base1_cum_clipped = 0.0;
    double base2_cum_clipped = 0.0;
    bool bound_violated = false;
};

// Runs one method over one generated stream. All methods sharing a seed see
// the same per-round reservoir draws and random initializations, so paired
// learners (e.g. the ensemble's new-space model and the standalone
// manifold-regularized learner) follow identical trajectories.
MethodResult run_method(MethodKind kind, const std::vector<StreamEvent>& events,
                        const MethodRunConfig& cfg, std::uint64_t seed);

}  // namespace evostream
