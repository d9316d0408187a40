#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evostream/methods.hpp"
#include "evostream/stream.hpp"

namespace evostream {

struct ExperimentConfig {
    std::string dataset_source = "swiss";  // "swiss" or a CSV path
    bool csv_has_header = false;
    long swiss_n = 2000;
    double swiss_noise = 0.1;
    StreamSchedule schedule{300, 10, 1000, 0.3};
    long d2 = 3;
    std::size_t buffer_capacity = 60;
    double lambda1 = 0.001;
    double lambda2 = 0.2;
    double sigma = 0.0;        // absolute bandwidth override; 0 = auto per space
    double sigma_scale = 0.1;  // auto bandwidth = scale * median pairwise distance
    std::string loss = "logistic";
    double eta = 0.0;  // 0 = sqrt(ln 2 / T2)
    int seeds = 10;
    std::uint64_t base_seed = 1;
    std::vector<MethodKind> methods = all_methods();
    std::string out_dir = "out";
    bool zero_init = false;
    int clip_warmup = 50;
};

struct MethodSummary {
    MethodKind kind = MethodKind::nogd;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
    double final_cum_risk_mean = 0.0;
};

struct RunReport {
    std::vector<MethodSummary> summaries;          // requested method order
    std::vector<std::vector<MethodResult>> runs;   // [method][seed]
};

Dataset resolve_dataset(const ExperimentConfig& cfg);

std::vector<StreamEvent> build_stream(const Dataset& base, const ExperimentConfig& cfg,
                                      std::uint64_t seed);

// Fills kernel bandwidths (median heuristic over the stream's early points
// unless an absolute sigma is configured) and copies the shared knobs.
MethodRunConfig resolve_run_config(const ExperimentConfig& cfg,
                                   const std::vector<StreamEvent>& events);

// Every requested method over every seed; methods within a seed share the
// stream. Runs are independent, so the method x seed grid executes under
// OpenMP and is merged in fixed order.
RunReport compute_experiment(const ExperimentConfig& cfg);

// compute_experiment plus the output files: summary.csv,
// risk_trend_<method>.csv, weights.csv, bound_check.csv.
RunReport run_experiment(const ExperimentConfig& cfg);

struct SweepRow {
    std::size_t buffer = 0;
    MethodKind kind = MethodKind::nogd;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
};

// run_experiment per capacity with shared seeds; writes buffer_sweep.csv.
std::vector<SweepRow> sweep_buffer(const ExperimentConfig& cfg,
                                   const std::vector<std::size_t>& sizes);

}  // namespace evostream
