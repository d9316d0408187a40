#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace evostream {

// One evolution cycle: T1 rounds in the old space, the last B of them also
// carrying the new-space view, then T2 rounds in the new space only.
struct StreamSchedule {
    long t1 = 0;
    long b_overlap = 0;
    long t2 = 0;
    double p_l = 1.0;
};

void validate_schedule(const StreamSchedule& s);

enum class Period { s1_only, overlap, s2_only };

const char* period_name(Period p);

struct StreamEvent {
    long step = 0;
    Period period = Period::s1_only;
    std::optional<Eigen::VectorXd> x_s1;
    std::optional<Eigen::VectorXd> x_s2;
    std::optional<int> revealed_label;
    int true_label = 0;
};

struct Dataset {
    std::vector<Eigen::VectorXd> rows;
    std::vector<int> labels;
    std::string name;

    Eigen::Index dim() const { return rows.empty() ? 0 : rows.front().size(); }
    std::size_t size() const { return rows.size(); }
};

// Two interleaved spirals r = theta, theta in [0.5*pi, 3*pi], phase offset pi
// between classes, isotropic Gaussian noise.
Dataset make_swiss(long n, double noise_std, std::uint64_t seed);

// d2 x d1 matrix with independent standard normal entries.
Eigen::MatrixXd projection_matrix(Eigen::Index d2, Eigen::Index d1, std::uint64_t seed);

// Test hook: apply an explicit matrix.
Dataset project_dataset(const Dataset& d, const Eigen::MatrixXd& m);

Dataset random_projection(const Dataset& d, Eigen::Index d2, std::uint64_t seed);

// Full event sequence for one cycle: seeded row shuffle, seeded projection,
// per-round label coin with probability p_l. Overlap events expose the same
// underlying row in both spaces.
std::vector<StreamEvent> generate_stream(const Dataset& base, const StreamSchedule& sched,
                                         Eigen::Index d2, std::uint64_t seed);

// Test hook: explicit projection matrix instead of a seeded one.
std::vector<StreamEvent> generate_stream_with(const Dataset& base, const StreamSchedule& sched,
                                              const Eigen::MatrixXd& proj, std::uint64_t seed);

// CSV with the label in the last column; labels must be {-1,+1} or {0,1}
// (the latter mapped onto {-1,+1}).
Dataset load_dataset(const std::string& path, bool has_header);

void save_dataset(const Dataset& d, const std::string& path, bool write_header);

void write_stream_trace(const std::vector<StreamEvent>& events, const std::string& path,
                        bool dump_features);

}  // namespace evostream
