#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "evostream/csvio.hpp"
#include "evostream/errors.hpp"
#include "evostream/harness.hpp"

using namespace evostream;

namespace {

// Quick configuration: small spiral, short phases, two seeds.
ExperimentConfig quick_config(const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.swiss_n = 200;
    cfg.schedule = {30, 5, 40, 0.4};
    cfg.buffer_capacity = 10;
    cfg.seeds = 2;
    cfg.methods = {MethodKind::nogd, MethodKind::ensemble};
    cfg.out_dir = out_dir;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::string all;
    for (const auto& line : read_lines(p.string())) {
        all += line;
        all += '\n';
    }
    return all;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name) : path(std::filesystem::path("/tmp") / name) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("the built-in dataset source yields the spiral data") {
    ExperimentConfig cfg = quick_config("unused");
    const Dataset d = resolve_dataset(cfg);
    CHECK(d.size() == 200);
    CHECK(d.dim() == 2);
    cfg.dataset_source = "/tmp/evostream_no_such_file.csv";
    CHECK_THROWS_AS(resolve_dataset(cfg), input_error);
}

TEST_CASE("bandwidths resolve from the stream unless overridden") {
    ExperimentConfig cfg = quick_config("unused");
    const Dataset base = resolve_dataset(cfg);
    const auto events = build_stream(base, cfg, 1);
    const MethodRunConfig rc = resolve_run_config(cfg, events);
    CHECK(rc.kernel_s1.sigma > 0.0);
    CHECK(rc.kernel_s2.sigma > 0.0);
    // The two spaces have different scales, so the heuristics differ.
    CHECK(rc.kernel_s1.sigma != rc.kernel_s2.sigma);

    cfg.sigma = 2.5;
    const MethodRunConfig forced = resolve_run_config(cfg, events);
    CHECK(forced.kernel_s1.sigma == 2.5);
    CHECK(forced.kernel_s2.sigma == 2.5);

    // Resolution is deterministic.
    cfg.sigma = 0.0;
    const MethodRunConfig again = resolve_run_config(cfg, events);
    CHECK(again.kernel_s1.sigma == rc.kernel_s1.sigma);
    CHECK(again.kernel_s2.sigma == rc.kernel_s2.sigma);
}

TEST_CASE("experiments validate their configuration") {
    ExperimentConfig cfg = quick_config("unused");
    cfg.seeds = 0;
    CHECK_THROWS_AS(compute_experiment(cfg), config_error);
    cfg = quick_config("unused");
    cfg.methods.clear();
    CHECK_THROWS_AS(compute_experiment(cfg), config_error);
    cfg = quick_config("unused");
    cfg.schedule.b_overlap = 0;
    CHECK_THROWS_AS(compute_experiment(cfg), config_error);
    cfg = quick_config("unused");
    cfg.loss = "absolute";
    CHECK_THROWS_AS(compute_experiment(cfg), config_error);
}

TEST_CASE("summaries aggregate the per-seed runs in request order") {
    const ExperimentConfig cfg = quick_config("unused");
    const RunReport report = compute_experiment(cfg);
    REQUIRE(report.summaries.size() == 2);
    REQUIRE(report.runs.size() == 2);
    CHECK(report.summaries[0].kind == MethodKind::nogd);
    CHECK(report.summaries[1].kind == MethodKind::ensemble);
    for (std::size_t m = 0; m < 2; ++m) {
        REQUIRE(report.runs[m].size() == 2);
        CHECK(report.runs[m][0].seed == cfg.base_seed);
        CHECK(report.runs[m][1].seed == cfg.base_seed + 1);
        double mean = 0.0;
        for (const auto& r : report.runs[m]) mean += r.accuracy;
        mean /= 2.0;
        CHECK(report.summaries[m].accuracy_mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(report.summaries[m].accuracy_std >= 0.0);
    }
}

TEST_CASE("a single seed reports zero dispersion") {
    ExperimentConfig cfg = quick_config("unused");
    cfg.seeds = 1;
    const RunReport report = compute_experiment(cfg);
    for (const auto& s : report.summaries) CHECK(s.accuracy_std == 0.0);
}

TEST_CASE("repeated computation gives identical numbers") {
    const ExperimentConfig cfg = quick_config("unused");
    const RunReport a = compute_experiment(cfg);
    const RunReport b = compute_experiment(cfg);
    REQUIRE(a.summaries.size() == b.summaries.size());
    for (std::size_t m = 0; m < a.summaries.size(); ++m) {
        CHECK(a.summaries[m].accuracy_mean == b.summaries[m].accuracy_mean);
        CHECK(a.summaries[m].accuracy_std == b.summaries[m].accuracy_std);
        CHECK(a.summaries[m].final_cum_risk_mean == b.summaries[m].final_cum_risk_mean);
        for (std::size_t s = 0; s < a.runs[m].size(); ++s) {
            CHECK(a.runs[m][s].accuracy == b.runs[m][s].accuracy);
            CHECK(a.runs[m][s].final_avg_cum_risk == b.runs[m][s].final_avg_cum_risk);
        }
    }
}

TEST_CASE("an experiment writes every expected output file") {
    TempDir dir("evostream_harness_files");
    const ExperimentConfig cfg = quick_config(dir.path.string());
    run_experiment(cfg);
    CHECK(std::filesystem::exists(dir.path / "summary.csv"));
    CHECK(std::filesystem::exists(dir.path / "risk_trend_nogd.csv"));
    CHECK(std::filesystem::exists(dir.path / "risk_trend_ensemble.csv"));
    CHECK(std::filesystem::exists(dir.path / "weights.csv"));
    CHECK(std::filesystem::exists(dir.path / "bound_check.csv"));

    const auto summary = read_lines((dir.path / "summary.csv").string());
    REQUIRE(summary.size() == 3);
    CHECK(summary[0] == "method,accuracy_mean,accuracy_std,final_cum_risk");
    CHECK(split_csv_line(summary[1])[0] == "nogd");
    CHECK(split_csv_line(summary[2])[0] == "ensemble");

    const auto trend = read_lines((dir.path / "risk_trend_nogd.csv").string());
    REQUIRE(trend.size() == 41);  // header + one row per evaluation round
    CHECK(trend[0] == "t,J_t,avg_cum_risk");
    CHECK(split_csv_line(trend[1])[0] == "1");
    CHECK(split_csv_line(trend[40])[0] == "40");

    const auto weights = read_lines((dir.path / "weights.csv").string());
    REQUIRE(weights.size() == 41);
    CHECK(weights[0] == "t,alpha1,alpha2");
    // Round one always uses the even split, in every seed.
    const auto first = split_csv_line(weights[1]);
    CHECK(*parse_double(first[1]) == 0.5);
    CHECK(*parse_double(first[2]) == 0.5);

    const auto bound = read_lines((dir.path / "bound_check.csv").string());
    REQUIRE(bound.size() == 41);
    CHECK(bound[0] == "t,ens_cum_clipped,min_base_cum_clipped,bound");
    const auto last = split_csv_line(bound[40]);
    CHECK(*parse_double(last[1]) <= *parse_double(last[3]));
}

TEST_CASE("weights and bound files appear only when an ensemble runs") {
    TempDir dir("evostream_harness_noens");
    ExperimentConfig cfg = quick_config(dir.path.string());
    cfg.methods = {MethodKind::nogd, MethodKind::urogd};
    run_experiment(cfg);
    CHECK(std::filesystem::exists(dir.path / "summary.csv"));
    CHECK(!std::filesystem::exists(dir.path / "weights.csv"));
    CHECK(!std::filesystem::exists(dir.path / "bound_check.csv"));
}

TEST_CASE("two runs of the same experiment produce byte-identical files") {
    TempDir dir1("evostream_harness_det1");
    TempDir dir2("evostream_harness_det2");
    ExperimentConfig cfg = quick_config(dir1.path.string());
    run_experiment(cfg);
    cfg.out_dir = dir2.path.string();
    run_experiment(cfg);
    for (const char* name :
         {"summary.csv", "risk_trend_nogd.csv", "risk_trend_ensemble.csv", "weights.csv",
          "bound_check.csv"}) {
        CHECK(slurp(dir1.path / name) == slurp(dir2.path / name));
        CHECK(!slurp(dir1.path / name).empty());
    }
}

TEST_CASE("buffer sweeps share seeds across sizes and write one table") {
    TempDir dir("evostream_harness_sweep");
    ExperimentConfig cfg = quick_config(dir.path.string());
    cfg.methods = {MethodKind::ensemble};
    const auto rows = sweep_buffer(cfg, {5, 10});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].buffer == 5);
    CHECK(rows[1].buffer == 10);
    for (const auto& r : rows) {
        CHECK(r.kind == MethodKind::ensemble);
        CHECK(r.accuracy_mean >= 0.0);
        CHECK(r.accuracy_mean <= 1.0);
    }

    // A sweep over one size must equal the plain experiment at that size.
    cfg.buffer_capacity = 10;
    const RunReport direct = compute_experiment(cfg);
    CHECK(rows[1].accuracy_mean == direct.summaries[0].accuracy_mean);
    CHECK(rows[1].accuracy_std == direct.summaries[0].accuracy_std);

    const auto lines = read_lines((dir.path / "buffer_sweep.csv").string());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "buffer,method,accuracy_mean,accuracy_std");
    CHECK(split_csv_line(lines[1])[0] == "5");
    CHECK(split_csv_line(lines[2])[0] == "10");

    CHECK_THROWS_AS(sweep_buffer(cfg, {}), config_error);
}

TEST_CASE("oversized buffers change nothing once the stream fits") {
    // Once capacity reaches the total number of observed rounds, a larger
    // buffer cannot alter any decision.
    ExperimentConfig cfg = quick_config("unused");
    cfg.methods = {MethodKind::ensemble};
    cfg.buffer_capacity = 70;  // T1 + T2 = 70
    const RunReport a = compute_experiment(cfg);
    cfg.buffer_capacity = 500;
    const RunReport b = compute_experiment(cfg);
    CHECK(a.summaries[0].accuracy_mean == b.summaries[0].accuracy_mean);
    CHECK(a.summaries[0].final_cum_risk_mean == b.summaries[0].final_cum_risk_mean);
}

TEST_CASE("csv streams flow through the experiment end to end") {
    const std::string path = "/tmp/evostream_harness_data.csv";
    save_dataset(make_swiss(200, 0.1, 33), path, true);
    ExperimentConfig cfg = quick_config("unused");
    cfg.dataset_source = path;
    cfg.csv_has_header = true;
    cfg.methods = {MethodKind::nogd};
    const RunReport report = compute_experiment(cfg);
    CHECK(report.summaries[0].accuracy_mean > 0.0);
    std::remove(path.c_str());
}
