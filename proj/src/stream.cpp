#include "evostream/stream.hpp"

#include <cmath>
#include <numeric>

#include "evostream/csvio.hpp"
#include "evostream/errors.hpp"
#include "evostream/rng.hpp"

namespace evostream {

void validate_schedule(const StreamSchedule& s) {
    if (s.b_overlap < 1 || s.b_overlap >= s.t1)
        throw config_error("schedule: need 1 <= B < T1");
    if (s.t2 < 1) throw config_error("schedule: need T2 >= 1");
    if (!(s.p_l > 0.0 && s.p_l <= 1.0)) throw config_error("schedule: need 0 < p_l <= 1");
}

const char* period_name(Period p) {
    switch (p) {
        case Period::s1_only: return "s1";
        case Period::overlap: return "overlap";
        case Period::s2_only: return "s2";
    }
    throw internal_error("period_name: bad enum");
}

Dataset make_swiss(long n, double noise_std, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw input_error("make_swiss: n must be even and >= 2");
    if (noise_std < 0.0) throw input_error("make_swiss: noise_std must be nonnegative");
    constexpr double kPi = 3.14159265358979323846;
    const double lo = 0.5 * kPi;
    const double hi = 3.0 * kPi;
    Rng rng(seed);
    Dataset d;
    d.name = "swiss";
    d.rows.reserve(static_cast<std::size_t>(n));
    d.labels.reserve(static_cast<std::size_t>(n));
    const long per_class = n / 2;
    for (int cls = 0; cls < 2; ++cls) {
        const double phase = cls == 0 ? 0.0 : kPi;
        const int label = cls == 0 ? 1 : -1;
        for (long i = 0; i < per_class; ++i) {
            const double theta = rng.uniform(lo, hi);
            Eigen::VectorXd x(2);
            x << theta * std::cos(theta + phase), theta * std::sin(theta + phase);
            if (noise_std > 0.0) {
                x[0] += noise_std * rng.normal();
                x[1] += noise_std * rng.normal();
            }
            d.rows.push_back(std::move(x));
            d.labels.push_back(label);
        }
    }
    return d;
}

Eigen::MatrixXd projection_matrix(Eigen::Index d2, Eigen::Index d1, std::uint64_t seed) {
    if (d2 < 1 || d1 < 1) throw config_error("projection_matrix: dimensions must be positive");
    Rng rng(seed);
    Eigen::MatrixXd m(d2, d1);
    for (Eigen::Index i = 0; i < d2; ++i)
        for (Eigen::Index j = 0; j < d1; ++j) m(i, j) = rng.normal();
    return m;
}

Dataset project_dataset(const Dataset& d, const Eigen::MatrixXd& m) {
    if (d.rows.empty()) throw input_error("project_dataset: empty dataset");
    if (m.cols() != d.dim()) throw input_error("project_dataset: matrix does not match dataset dim");
    Dataset out;
    out.name = d.name + "-proj";
    out.labels = d.labels;
    out.rows.reserve(d.rows.size());
    for (const auto& row : d.rows) out.rows.push_back(m * row);
    return out;
}

Dataset random_projection(const Dataset& d, Eigen::Index d2, std::uint64_t seed) {
    if (d2 < 1) throw config_error("random_projection: d2 must be positive");
    return project_dataset(d, projection_matrix(d2, d.dim(), seed));
}

std::vector<StreamEvent> generate_stream_with(const Dataset& base, const StreamSchedule& sched,
                                              const Eigen::MatrixXd& proj, std::uint64_t seed) {
    validate_schedule(sched);
    if (base.rows.empty()) throw input_error("generate_stream: empty dataset");
    if (proj.cols() != base.dim())
        throw input_error("generate_stream: projection does not match dataset dim");
    const long needed = sched.t1 + sched.t2;
    if (static_cast<long>(base.size()) < needed)
        throw input_error("generate_stream: need at least " + std::to_string(needed) +
                          " rows, dataset has " + std::to_string(base.size()));

    std::vector<std::size_t> order(base.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(seed, "shuffle");
    shuffle_rng.shuffle(order);

    Rng label_rng(seed, "labels");
    std::vector<StreamEvent> events;
    events.reserve(static_cast<std::size_t>(needed));
    for (long t = 1; t <= needed; ++t) {
        const std::size_t row = order[static_cast<std::size_t>(t - 1)];
        StreamEvent ev;
        ev.step = t;
        ev.true_label = base.labels[row];
        if (label_rng.uniform01() < sched.p_l) ev.revealed_label = ev.true_label;
        if (t <= sched.t1 - sched.b_overlap) {
            ev.period = Period::s1_only;
            ev.x_s1 = base.rows[row];
        } else if (t <= sched.t1) {
            ev.period = Period::overlap;
            ev.x_s1 = base.rows[row];
            ev.x_s2 = proj * base.rows[row];
        } else {
            ev.period = Period::s2_only;
            ev.x_s2 = proj * base.rows[row];
        }
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<StreamEvent> generate_stream(const Dataset& base, const StreamSchedule& sched,
                                         Eigen::Index d2, std::uint64_t seed) {
    if (d2 < 1) throw config_error("generate_stream: d2 must be positive");
    Rng proj_seed_rng(seed, "proj");
    const Eigen::MatrixXd proj = [&] {
        Eigen::MatrixXd m(d2, base.dim());
        for (Eigen::Index i = 0; i < d2; ++i)
            for (Eigen::Index j = 0; j < base.dim(); ++j) m(i, j) = proj_seed_rng.normal();
        return m;
    }();
    return generate_stream_with(base, sched, proj, seed);
}

Dataset load_dataset(const std::string& path, bool has_header) {
    const std::vector<std::string> lines = read_lines(path);
    Dataset d;
    d.name = path;
    Eigen::Index dim = -1;
    bool saw_zero = false;
    bool saw_minus = false;
    for (std::size_t i = has_header ? 1 : 0; i < lines.size(); ++i) {
        const long line_no = static_cast<long>(i) + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> cells = split_csv_line(lines[i]);
        if (cells.size() < 2)
            throw input_error(path + ": line " + std::to_string(line_no) +
                              ": need at least one feature and a label");
        if (dim == -1) dim = static_cast<Eigen::Index>(cells.size()) - 1;
        if (static_cast<Eigen::Index>(cells.size()) - 1 != dim)
            throw input_error(path + ": line " + std::to_string(line_no) +
                              ": inconsistent column count");
        Eigen::VectorXd x(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto v = parse_double(cells[static_cast<std::size_t>(j)]);
            if (!v)
                throw input_error(path + ": line " + std::to_string(line_no) +
                                  ": bad numeric field '" + cells[static_cast<std::size_t>(j)] +
                                  "'");
            x[j] = *v;
        }
        const auto raw = parse_double(cells.back());
        if (!raw)
            throw input_error(path + ": line " + std::to_string(line_no) + ": bad label '" +
                              cells.back() + "'");
        int label = 0;
        if (*raw == 1.0) {
            label = 1;
        } else if (*raw == -1.0) {
            label = -1;
            saw_minus = true;
        } else if (*raw == 0.0) {
            label = 0;
            saw_zero = true;
        } else {
            throw input_error(path + ": line " + std::to_string(line_no) +
                              ": label must be -1, 0 or +1, got '" + cells.back() + "'");
        }
        d.rows.push_back(std::move(x));
        d.labels.push_back(label);
    }
    if (d.rows.empty()) throw input_error(path + ": no data rows");
    if (saw_zero && saw_minus)
        throw input_error(path + ": labels mix {-1,+1} and {0,1} encodings");
    for (int& lbl : d.labels)
        if (lbl == 0) lbl = -1;
    return d;
}

void save_dataset(const Dataset& d, const std::string& path, bool write_header) {
    std::string out;
    if (write_header) {
        std::vector<std::string> head;
        for (Eigen::Index j = 0; j < d.dim(); ++j) head.push_back("f" + std::to_string(j));
        head.push_back("label");
        out += join_csv(head);
        out += '\n';
    }
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        std::vector<std::string> cells;
        for (Eigen::Index j = 0; j < d.dim(); ++j) cells.push_back(fmt_double(d.rows[i][j]));
        cells.push_back(std::to_string(d.labels[i]));
        out += join_csv(cells);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_stream_trace(const std::vector<StreamEvent>& events, const std::string& path,
                        bool dump_features) {
    Eigen::Index d1 = 0;
    Eigen::Index d2 = 0;
    for (const auto& ev : events) {
        if (ev.x_s1) d1 = ev.x_s1->size();
        if (ev.x_s2) d2 = ev.x_s2->size();
    }
    std::string out;
    {
        std::vector<std::string> head{"step", "period", "labeled", "true_label"};
        if (dump_features) {
            for (Eigen::Index j = 0; j < d1; ++j) head.push_back("s1_" + std::to_string(j));
            for (Eigen::Index j = 0; j < d2; ++j) head.push_back("s2_" + std::to_string(j));
        }
        out += join_csv(head);
        out += '\n';
    }
    for (const auto& ev : events) {
        std::vector<std::string> cells{std::to_string(ev.step), period_name(ev.period),
                                       ev.revealed_label ? "1" : "0",
                                       std::to_string(ev.true_label)};
        if (dump_features) {
            for (Eigen::Index j = 0; j < d1; ++j)
                cells.push_back(ev.x_s1 ? fmt_double((*ev.x_s1)[j]) : "");
            for (Eigen::Index j = 0; j < d2; ++j)
                cells.push_back(ev.x_s2 ? fmt_double((*ev.x_s2)[j]) : "");
        }
        out += join_csv(cells);
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace evostream
