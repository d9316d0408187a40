#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evostream/errors.hpp"
#include "evostream/harness.hpp"

namespace {

using namespace evostream;

// Shared experiment knobs; the config file (INI key=value, keys named after
// the long flags) is read per subcommand via --config.
void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& methods_spec) {
    cmd->set_config("--config", "", "INI config file (keys match long option names)");
    cmd->add_option("--dataset", cfg.dataset_source,
                    "'swiss' or a CSV path with the label in the last column");
    cmd->add_flag("--csv-header", cfg.csv_has_header, "CSV input starts with a header row");
    cmd->add_option("--swiss-n", cfg.swiss_n, "Swiss sample count");
    cmd->add_option("--swiss-noise", cfg.swiss_noise, "Swiss noise standard deviation");
    cmd->add_option("--t1", cfg.schedule.t1, "Rounds in the old feature space");
    cmd->add_option("--overlap", cfg.schedule.b_overlap, "Rounds carrying both views");
    cmd->add_option("--t2", cfg.schedule.t2, "Rounds in the new feature space");
    cmd->add_option("--p-l", cfg.schedule.p_l, "Per-round label probability");
    cmd->add_option("--d2", cfg.d2, "New-space dimension for the random projection");
    cmd->add_option("--buffer", cfg.buffer_capacity, "Reservoir buffer capacity");
    cmd->add_option("--lambda1", cfg.lambda1, "RKHS-norm penalty");
    cmd->add_option("--lambda2", cfg.lambda2, "Manifold penalty");
    cmd->add_option("--sigma", cfg.sigma, "Absolute kernel bandwidth; 0 = auto");
    cmd->add_option("--sigma-scale", cfg.sigma_scale,
                    "Auto bandwidth = scale * median pairwise distance");
    cmd->add_option("--loss", cfg.loss, "Loss: logistic | hinge");
    cmd->add_option("--eta", cfg.eta, "Ensemble learning rate; 0 = sqrt(ln2/T2)");
    cmd->add_option("--seeds", cfg.seeds, "Number of independent runs");
    cmd->add_option("--seed", cfg.base_seed, "Base seed (run i uses seed + i)");
    cmd->add_option("--methods", methods_spec, "Comma-separated method names, or 'all'");
    cmd->add_option("--out-dir", cfg.out_dir, "Output directory for CSV files");
    cmd->add_flag("--zero-init", cfg.zero_init,
                  "Start from the zero function instead of a random first coefficient");
    cmd->add_option("--clip-warmup", cfg.clip_warmup, "Risk-cap warm-up rounds");
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
    std::vector<std::size_t> sizes;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string token = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (token.empty()) continue;
        try {
            const long v = std::stol(token);
            if (v < 1) throw config_error("buffer sizes must be positive");
            sizes.push_back(static_cast<std::size_t>(v));
        } catch (const config_error&) {
            throw;
        } catch (const std::exception&) {
            throw config_error("bad buffer size '" + token + "'");
        }
    }
    return sizes;
}

void print_summaries(const RunReport& report) {
    std::printf("%-16s %13s %12s %15s\n", "method", "accuracy_mean", "accuracy_std",
                "final_cum_risk");
    for (const auto& s : report.summaries)
        std::printf("%-16s %13.4f %12.4f %15.6g\n", method_name(s.kind), s.accuracy_mean,
                    s.accuracy_std, s.final_cum_risk_mean);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online semi-supervised learning over feature-evolving streams"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string methods_spec = "all";

    CLI::App* run_cmd = app.add_subcommand("run", "Run the full experiment and write CSVs");
    add_experiment_flags(run_cmd, cfg, methods_spec);
    run_cmd->callback([&] {
        cfg.methods = parse_methods(methods_spec);
        const RunReport report = run_experiment(cfg);
        print_summaries(report);
        std::printf("outputs written to %s\n", cfg.out_dir.c_str());
    });

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep-buffer", "Rerun the experiment over buffer capacities");
    std::string sizes_spec = "10,20,40,60";
    add_experiment_flags(sweep_cmd, cfg, methods_spec);
    sweep_cmd->add_option("--sizes", sizes_spec, "Comma-separated buffer capacities");
    sweep_cmd->callback([&] {
        cfg.methods = parse_methods(methods_spec);
        const auto rows = sweep_buffer(cfg, parse_sizes(sizes_spec));
        std::printf("%8s %-16s %13s %12s\n", "buffer", "method", "accuracy_mean",
                    "accuracy_std");
        for (const auto& r : rows)
            std::printf("%8zu %-16s %13.4f %12.4f\n", r.buffer, method_name(r.kind),
                        r.accuracy_mean, r.accuracy_std);
        std::printf("buffer_sweep.csv written to %s\n", cfg.out_dir.c_str());
    });

    CLI::App* gen_cmd = app.add_subcommand("gen-stream", "Export one generated stream as CSV");
    std::string trace_path = "stream.csv";
    bool dump_features = false;
    add_experiment_flags(gen_cmd, cfg, methods_spec);
    gen_cmd->add_option("--out", trace_path, "Trace file path");
    gen_cmd->add_flag("--dump-features", dump_features, "Include feature columns");
    gen_cmd->callback([&] {
        const Dataset base = resolve_dataset(cfg);
        const auto events = build_stream(base, cfg, cfg.base_seed);
        write_stream_trace(events, trace_path, dump_features);
        std::printf("wrote %s (%zu events)\n", trace_path.c_str(), events.size());
    });

    CLI::App* swiss_cmd = app.add_subcommand("make-swiss", "Write the synthetic dataset as CSV");
    long swiss_n = 2000;
    double swiss_noise = 0.1;
    std::uint64_t swiss_seed = 1;
    std::string swiss_path = "swiss.csv";
    bool swiss_header = false;
    swiss_cmd->add_option("--n", swiss_n, "Sample count (even)");
    swiss_cmd->add_option("--noise", swiss_noise, "Noise standard deviation");
    swiss_cmd->add_option("--seed", swiss_seed, "Seed");
    swiss_cmd->add_option("--out", swiss_path, "Output CSV path");
    swiss_cmd->add_flag("--header", swiss_header, "Write a header row");
    swiss_cmd->callback([&] {
        const Dataset d = make_swiss(swiss_n, swiss_noise, swiss_seed);
        save_dataset(d, swiss_path, swiss_header);
        std::printf("wrote %s (%zu rows, dim %ld)\n", swiss_path.c_str(), d.size(),
                    static_cast<long>(d.dim()));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const evostream::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const evostream::input_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 3;
    } catch (const evostream::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
