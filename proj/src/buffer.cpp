#include "evostream/buffer.hpp"

#include "evostream/errors.hpp"

namespace evostream {

ReservoirBuffer::ReservoirBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw config_error("buffer capacity must be positive");
    slots_.reserve(capacity);
}

InsertDecision ReservoirBuffer::offer_with(const Eigen::VectorXd& sample, double u, double v) {
    if (!slots_.empty() && slots_.front().size() != sample.size())
        throw input_error("buffer offer: dimension mismatch");
    ++seen_count_;
    if (slots_.size() < capacity_) {
        slots_.push_back(sample);
        return {InsertDecision::Kind::AppendedDirect};
    }
    const double accept_p = static_cast<double>(capacity_) / static_cast<double>(seen_count_);
    if (u < accept_p) {
        std::size_t victim = static_cast<std::size_t>(v * static_cast<double>(capacity_));
        if (victim >= capacity_) victim = capacity_ - 1;
        slots_[victim] = sample;
        return {InsertDecision::Kind::Replaced, victim};
    }
    return {InsertDecision::Kind::Skipped};
}

InsertDecision ReservoirBuffer::offer(const Eigen::VectorXd& sample, Rng& rng) {
    const double u = rng.uniform01();
    const double v = rng.uniform01();
    return offer_with(sample, u, v);
}

}  // namespace evostream
