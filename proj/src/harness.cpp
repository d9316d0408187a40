#include "evostream/harness.hpp"

#include <cmath>
#include <exception>
#include <filesystem>

#include "evostream/csvio.hpp"
#include "evostream/errors.hpp"

namespace evostream {

namespace {

constexpr std::size_t kMedianSampleCount = 100;

double resolve_sigma(const ExperimentConfig& cfg, const std::vector<Eigen::VectorXd>& points) {
    const double med = median_heuristic(points, kMedianSampleCount);
    const double sigma = cfg.sigma_scale * med;
    if (!(sigma > 0.0))
        throw numerical_error(
            "auto bandwidth degenerated to 0 (duplicate points?); pass --sigma explicitly");
    return sigma;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

Dataset resolve_dataset(const ExperimentConfig& cfg) {
    if (cfg.dataset_source == "swiss")
        return make_swiss(cfg.swiss_n, cfg.swiss_noise, cfg.base_seed);
    return load_dataset(cfg.dataset_source, cfg.csv_has_header);
}

std::vector<StreamEvent> build_stream(const Dataset& base, const ExperimentConfig& cfg,
                                      std::uint64_t seed) {
    return generate_stream(base, cfg.schedule, cfg.d2, seed);
}

MethodRunConfig resolve_run_config(const ExperimentConfig& cfg,
                                   const std::vector<StreamEvent>& events) {
    MethodRunConfig rc;
    rc.schedule = cfg.schedule;
    rc.buffer_capacity = cfg.buffer_capacity;
    rc.lambda1 = cfg.lambda1;
    rc.lambda2 = cfg.lambda2;
    rc.loss = parse_loss(cfg.loss);
    rc.eta = cfg.eta;
    rc.zero_init = cfg.zero_init;
    rc.clip_warmup = cfg.clip_warmup;
    if (cfg.sigma > 0.0) {
        rc.kernel_s1.sigma = cfg.sigma;
        rc.kernel_s2.sigma = cfg.sigma;
        return rc;
    }
    std::vector<Eigen::VectorXd> s1_points;
    std::vector<Eigen::VectorXd> s2_points;
    for (const auto& ev : events) {
        if (ev.x_s1 && s1_points.size() < kMedianSampleCount) s1_points.push_back(*ev.x_s1);
        if (ev.x_s2 && s2_points.size() < kMedianSampleCount) s2_points.push_back(*ev.x_s2);
        if (s1_points.size() >= kMedianSampleCount && s2_points.size() >= kMedianSampleCount)
            break;
    }
    rc.kernel_s1.sigma = resolve_sigma(cfg, s1_points);
    rc.kernel_s2.sigma = resolve_sigma(cfg, s2_points);
    return rc;
}

RunReport compute_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds < 1) throw config_error("seeds must be at least 1");
    if (cfg.methods.empty()) throw config_error("no methods requested");
    validate_schedule(cfg.schedule);
    const Dataset base = resolve_dataset(cfg);

    const std::size_t n_seeds = static_cast<std::size_t>(cfg.seeds);
    std::vector<std::vector<StreamEvent>> streams(n_seeds);
    std::vector<MethodRunConfig> run_cfgs(n_seeds);
    for (std::size_t i = 0; i < n_seeds; ++i) {
        const std::uint64_t seed = cfg.base_seed + i;
        streams[i] = build_stream(base, cfg, seed);
        run_cfgs[i] = resolve_run_config(cfg, streams[i]);
    }

    // method x seed grid, parallel over independent runs, merged in fixed
    // order so outputs never depend on thread count.
    const std::size_t n_methods = cfg.methods.size();
    const auto n_jobs = static_cast<std::ptrdiff_t>(n_methods * n_seeds);
    std::vector<MethodResult> grid(static_cast<std::size_t>(n_jobs));
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t job = 0; job < n_jobs; ++job) {
        const std::size_t m = static_cast<std::size_t>(job) / n_seeds;
        const std::size_t s = static_cast<std::size_t>(job) % n_seeds;
        try {
            grid[static_cast<std::size_t>(job)] =
                run_method(cfg.methods[m], streams[s], run_cfgs[s], cfg.base_seed + s);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    RunReport report;
    report.runs.resize(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        report.runs[m].assign(grid.begin() + static_cast<std::ptrdiff_t>(m * n_seeds),
                              grid.begin() + static_cast<std::ptrdiff_t>((m + 1) * n_seeds));
        std::vector<double> accs;
        std::vector<double> finals;
        for (const auto& r : report.runs[m]) {
            accs.push_back(r.accuracy);
            finals.push_back(r.final_avg_cum_risk);
        }
        MethodSummary s;
        s.kind = cfg.methods[m];
        s.accuracy_mean = mean_of(accs);
        s.accuracy_std = std_of(accs, s.accuracy_mean);
        s.final_cum_risk_mean = mean_of(finals);
        report.summaries.push_back(s);
    }
    return report;
}

namespace {

void write_summary(const ExperimentConfig& cfg, const RunReport& report) {
    std::string out = "method,accuracy_mean,accuracy_std,final_cum_risk\n";
    for (const auto& s : report.summaries) {
        out += join_csv({method_name(s.kind), fmt_double(s.accuracy_mean),
                         fmt_double(s.accuracy_std), fmt_double(s.final_cum_risk_mean)});
        out += '\n';
    }
    write_text_file((std::filesystem::path(cfg.out_dir) / "summary.csv").string(), out);
}

void write_risk_trends(const ExperimentConfig& cfg, const RunReport& report) {
    for (std::size_t m = 0; m < report.runs.size(); ++m) {
        const auto& runs = report.runs[m];
        const std::size_t t2 = runs.front().rounds.size();
        std::string out = "t,J_t,avg_cum_risk\n";
        for (std::size_t t = 0; t < t2; ++t) {
            double j = 0.0;
            double avg = 0.0;
            for (const auto& r : runs) {
                j += r.rounds[t].raw_risk;
                avg += r.rounds[t].avg_cum_risk;
            }
            j /= static_cast<double>(runs.size());
            avg /= static_cast<double>(runs.size());
            out += join_csv({std::to_string(t + 1), fmt_double(j), fmt_double(avg)});
            out += '\n';
        }
        const std::string name = std::string("risk_trend_") + method_name(cfg.methods[m]) +
                                 ".csv";
        write_text_file((std::filesystem::path(cfg.out_dir) / name).string(), out);
    }
}

// The ensemble method if requested, else the plain two-model variant.
int ensemble_index(const ExperimentConfig& cfg) {
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
        if (cfg.methods[m] == MethodKind::ensemble) return static_cast<int>(m);
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
        if (cfg.methods[m] == MethodKind::ensemble_plain) return static_cast<int>(m);
    return -1;
}

void write_weights(const ExperimentConfig& cfg, const RunReport& report) {
    const int m = ensemble_index(cfg);
    if (m < 0) return;
    const auto& runs = report.runs[static_cast<std::size_t>(m)];
    const std::size_t t2 = runs.front().rounds.size();
    std::string out = "t,alpha1,alpha2\n";
    for (std::size_t t = 0; t < t2; ++t) {
        double a1 = 0.0;
        double a2 = 0.0;
        for (const auto& r : runs) {
            a1 += r.rounds[t].alpha1;
            a2 += r.rounds[t].alpha2;
        }
        a1 /= static_cast<double>(runs.size());
        a2 /= static_cast<double>(runs.size());
        out += join_csv({std::to_string(t + 1), fmt_double(a1), fmt_double(a2)});
        out += '\n';
    }
    write_text_file((std::filesystem::path(cfg.out_dir) / "weights.csv").string(), out);
}

void write_bound_check(const ExperimentConfig& cfg, const RunReport& report) {
    const int m = ensemble_index(cfg);
    if (m < 0) return;
    // The bound is a per-run statement; the file reports the first seed.
    const MethodResult& r = report.runs[static_cast<std::size_t>(m)].front();
    std::string out = "t,ens_cum_clipped,min_base_cum_clipped,bound\n";
    for (const auto& rec : r.rounds) {
        out += join_csv({std::to_string(rec.t), fmt_double(rec.ens_cum_clipped),
                         fmt_double(rec.min_base_cum_clipped), fmt_double(rec.bound)});
        out += '\n';
    }
    write_text_file((std::filesystem::path(cfg.out_dir) / "bound_check.csv").string(), out);
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
    RunReport report = compute_experiment(cfg);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw input_error("cannot create output directory: " + cfg.out_dir);
    write_summary(cfg, report);
    write_risk_trends(cfg, report);
    write_weights(cfg, report);
    write_bound_check(cfg, report);
    return report;
}

std::vector<SweepRow> sweep_buffer(const ExperimentConfig& cfg,
                                   const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw config_error("sweep-buffer: no sizes given");
    std::vector<SweepRow> rows;
    for (std::size_t size : sizes) {
        ExperimentConfig sub = cfg;
        sub.buffer_capacity = size;
        const RunReport report = compute_experiment(sub);
        for (const auto& s : report.summaries)
            rows.push_back({size, s.kind, s.accuracy_mean, s.accuracy_std});
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw input_error("cannot create output directory: " + cfg.out_dir);
    std::string out = "buffer,method,accuracy_mean,accuracy_std\n";
    for (const auto& r : rows) {
        out += join_csv({std::to_string(r.buffer), method_name(r.kind),
                         fmt_double(r.accuracy_mean), fmt_double(r.accuracy_std)});
        out += '\n';
    }
    write_text_file((std::filesystem::path(cfg.out_dir) / "buffer_sweep.csv").string(), out);
    return rows;
}

}  // namespace evostream
