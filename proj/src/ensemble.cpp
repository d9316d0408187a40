#include "evostream/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "evostream/errors.hpp"

namespace evostream {

EnsembleState make_ensemble(double eta) {
    if (eta <= 0.0) throw config_error("ensemble: eta must be positive");
    EnsembleState s;
    s.weights = {0.5, 0.5};
    s.log_weights = {-std::log(2.0), -std::log(2.0)};
    s.cumulative_risks = {0.0, 0.0};
    s.eta = eta;
    return s;
}

double combine(const EnsembleState& state, double p1, double p2) {
    return state.weights[0] * p1 + state.weights[1] * p2;
}

double ensemble_risk(const EnsembleState& state, double j1, double j2) {
    return state.weights[0] * j1 + state.weights[1] * j2;
}

EnsembleState update_weights(const EnsembleState& state, double j1_clipped, double j2_clipped) {
    const std::array<double, 2> j{j1_clipped, j2_clipped};
    for (double ji : j)
        if (!(ji >= 0.0 && ji <= 1.0))
            throw input_error("update_weights: risks must be clipped to [0,1]");
    EnsembleState out = state;
    std::array<double, 2> la{state.log_weights[0] - state.eta * j[0],
                             state.log_weights[1] - state.eta * j[1]};
    const double m = std::max(la[0], la[1]);
    const double w0 = std::exp(la[0] - m);
    const double w1 = std::exp(la[1] - m);
    const double sum = w0 + w1;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw numerical_error("update_weights: weight normalization degenerated");
    out.weights = {w0 / sum, w1 / sum};
    const double log_sum = std::log(sum);
    out.log_weights = {la[0] - m - log_sum, la[1] - m - log_sum};
    out.cumulative_risks = {state.cumulative_risks[0] + j[0], state.cumulative_risks[1] + j[1]};
    return out;
}

double default_eta(long t2) {
    if (t2 < 1) throw config_error("default_eta: T2 must be at least 1");
    return std::sqrt(std::log(2.0) / static_cast<double>(t2));
}

namespace {

// 95th percentile with linear interpolation between order statistics.
double percentile95(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    if (n == 1) return values[0];
    const double rank = 0.95 * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= n) return values[n - 1];
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace

RiskClipper::RiskClipper(int warmup_rounds) : warmup_(warmup_rounds) {
    if (warmup_rounds < 1) throw config_error("clipper: warm-up must be at least one round");
}

std::array<double, 2> RiskClipper::observe(double j1, double j2) {
    if (!(j1 >= 0.0) || !(j2 >= 0.0) || !std::isfinite(j1) || !std::isfinite(j2))
        throw numerical_error("clipper: risks must be finite and nonnegative");
    if (!frozen_) {
        values_.push_back(j1);
        values_.push_back(j2);
        ++seen_;
        cap_ = std::max(percentile95(values_), 1e-12);
        if (seen_ >= warmup_) {
            frozen_ = true;
            values_.clear();
            values_.shrink_to_fit();
        }
    }
    return {std::min(j1 / cap_, 1.0), std::min(j2 / cap_, 1.0)};
}

}  // namespace evostream
