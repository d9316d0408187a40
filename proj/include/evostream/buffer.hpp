#pragma once
#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "evostream/rng.hpp"

namespace evostream {

// Outcome of offering one sample to the reservoir. Drives the three predictor
// update paths.
struct InsertDecision {
    enum class Kind { AppendedDirect, Replaced, Skipped };
    Kind kind;
    std::size_t replaced_index = 0;  // valid when kind == Replaced
};

// Fixed-capacity sample store maintained by reservoir sampling: append while
// not full, afterwards accept the t-th offer with probability b/t and evict a
// uniformly chosen slot. Every prefix sample then sits in the buffer with
// probability b/t after t offers.
class ReservoirBuffer {
  public:
    explicit ReservoirBuffer(std::size_t capacity);

    // Offer with explicit uniform draws, u for acceptance and v for the
    // victim slot. Lets several learners share one decision sequence per
    // round. Both draws are consumed on every call regardless of branch.
    InsertDecision offer_with(const Eigen::VectorXd& sample, double u, double v);

    // Offer drawing u and v from rng (exactly two draws per call).
    InsertDecision offer(const Eigen::VectorXd& sample, Rng& rng);

    std::size_t occupancy() const { return slots_.size(); }
    std::size_t capacity() const { return capacity_; }
    long seen_count() const { return seen_count_; }
    const std::vector<Eigen::VectorXd>& contents() const { return slots_; }

  private:
    std::size_t capacity_;
    std::vector<Eigen::VectorXd> slots_;
    long seen_count_ = 0;
};

}  // namespace evostream
