#include "evostream/methods.hpp"

#include <cmath>
#include <optional>

#include "evostream/errors.hpp"
#include "evostream/learner.hpp"
#include "evostream/mapping.hpp"
#include "evostream/rng.hpp"

namespace evostream {

const char* method_name(MethodKind kind) {
    switch (kind) {
        case MethodKind::nogd: return "nogd";
        case MethodKind::nogd_mr: return "nogd_mr";
        case MethodKind::urogd: return "urogd";
        case MethodKind::urogd_mr: return "urogd_mr";
        case MethodKind::frogd: return "frogd";
        case MethodKind::frogd_mr: return "frogd_mr";
        case MethodKind::ensemble_plain: return "ensemble_plain";
        case MethodKind::ensemble: return "ensemble";
    }
    throw internal_error("method_name: bad enum");
}

std::vector<MethodKind> all_methods() {
    return {MethodKind::nogd,  MethodKind::nogd_mr,  MethodKind::urogd,
            MethodKind::urogd_mr, MethodKind::frogd, MethodKind::frogd_mr,
            MethodKind::ensemble_plain, MethodKind::ensemble};
}

std::vector<MethodKind> parse_methods(const std::string& spec) {
    std::vector<MethodKind> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        std::string token = spec.substr(pos, comma - pos);
        const std::size_t b = token.find_first_not_of(" \t");
        const std::size_t e = token.find_last_not_of(" \t");
        token = b == std::string::npos ? "" : token.substr(b, e - b + 1);
        pos = comma + 1;
        if (token.empty()) continue;
        if (token == "all") {
            for (MethodKind k : all_methods()) out.push_back(k);
            continue;
        }
        bool found = false;
        for (MethodKind k : all_methods())
            if (token == method_name(k)) {
                out.push_back(k);
                found = true;
                break;
            }
        if (!found)
            throw config_error(
                "unknown method '" + token +
                "' (valid: nogd, nogd_mr, urogd, urogd_mr, frogd, frogd_mr, ensemble_plain, "
                "ensemble, all)");
    }
    if (out.empty()) throw config_error("no methods requested");
    return out;
}

namespace {

bool needs_mapping(MethodKind kind) {
    return kind != MethodKind::nogd && kind != MethodKind::nogd_mr;
}

bool mr_old_model(MethodKind kind) {
    return kind == MethodKind::urogd_mr || kind == MethodKind::frogd_mr ||
           kind == MethodKind::ensemble;
}

bool mr_new_model(MethodKind kind) {
    return kind == MethodKind::nogd_mr || kind == MethodKind::ensemble;
}

RiskParams make_params(const MethodRunConfig& cfg, const KernelConfig& graph, bool manifold) {
    RiskParams p;
    p.lambda1 = cfg.lambda1;
    p.lambda2 = manifold ? cfg.lambda2 : 0.0;
    p.inv_label_prob = 1.0 / cfg.schedule.p_l;
    p.loss = cfg.loss;
    p.graph_kernel = graph;
    return p;
}

}  // namespace

MethodResult run_method(MethodKind kind, const std::vector<StreamEvent>& events,
                        const MethodRunConfig& cfg, std::uint64_t seed) {
    validate_schedule(cfg.schedule);
    const long t1 = cfg.schedule.t1;
    const long t2 = cfg.schedule.t2;
    if (static_cast<long>(events.size()) != t1 + t2)
        throw input_error("run_method: event count does not match the schedule");
    if (!(cfg.kernel_s1.sigma > 0.0) || !(cfg.kernel_s2.sigma > 0.0))
        throw config_error("run_method: kernel bandwidths must be resolved and positive");

    // Shared per-round reservoir draws: every learner of every method sees the
    // same (u, v) at a given round, which keeps same-policy learners on
    // identical trajectories across methods.
    Rng reservoir_rng(seed, "reservoir");
    std::vector<std::array<double, 2>> draws(static_cast<std::size_t>(t1 + t2));
    for (auto& d : draws) {
        d[0] = reservoir_rng.uniform01();
        d[1] = reservoir_rng.uniform01();
    }
    const double init1 = cfg.zero_init ? 0.0 : Rng(seed, "init1").uniform(-0.1, 0.1);
    const double init2 = cfg.zero_init ? 0.0 : Rng(seed, "init2").uniform(-0.1, 0.1);

    const RiskParams params_old = make_params(cfg, cfg.kernel_s1, mr_old_model(kind));
    const RiskParams params_new = make_params(cfg, cfg.kernel_s2, mr_new_model(kind));

    // Initialization phase: train the old-space model and fit the mapping.
    std::optional<BufferedLearner> old_model;
    std::optional<LinearMap> psi;
    if (needs_mapping(kind)) {
        const UpdatePolicy policy =
            mr_old_model(kind) ? UpdatePolicy::every_round : UpdatePolicy::labeled_only;
        old_model.emplace(cfg.kernel_s1, SpaceId::s1, params_old, policy, cfg.buffer_capacity,
                          init1);
        std::vector<MappingPair> pairs;
        for (long t = 1; t <= t1; ++t) {
            const StreamEvent& ev = events[static_cast<std::size_t>(t - 1)];
            if (!ev.x_s1) throw input_error("run_method: initialization event lacks old view");
            Sample s{*ev.x_s1, SpaceId::s1, ev.revealed_label, t};
            const auto& d = draws[static_cast<std::size_t>(t - 1)];
            old_model->observe(s, 1.0 / std::sqrt(static_cast<double>(t)), d[0], d[1]);
            if (ev.period == Period::overlap) {
                if (!ev.x_s2) throw input_error("run_method: overlap event lacks new view");
                pairs.emplace_back(*ev.x_s2, *ev.x_s1);
            }
        }
        if (pairs.empty())
            throw config_error("run_method: method '" + std::string(method_name(kind)) +
                               "' needs an overlap period to fit the mapping");
        psi = fit_mapping(pairs, default_mapping_ridge(pairs));
    }

    // Evaluation-phase actors.
    const bool is_frozen = kind == MethodKind::frogd || kind == MethodKind::frogd_mr;
    const bool is_ensemble = kind == MethodKind::ensemble_plain || kind == MethodKind::ensemble;
    const bool has_new_model = kind == MethodKind::nogd || kind == MethodKind::nogd_mr ||
                               is_ensemble;
    std::optional<FrozenModel> frozen;
    if (is_frozen) {
        frozen.emplace(old_model->predictor(), old_model->buffer(), params_old);
        old_model.reset();
    }
    std::optional<BufferedLearner> new_model;
    if (has_new_model) {
        const UpdatePolicy policy =
            mr_new_model(kind) ? UpdatePolicy::every_round : UpdatePolicy::labeled_only;
        new_model.emplace(cfg.kernel_s2, SpaceId::s2, params_new, policy, cfg.buffer_capacity,
                          init2);
    }
    const double eta = cfg.eta > 0.0 ? cfg.eta : default_eta(t2);
    EnsembleState ens = make_ensemble(eta);
    RiskClipper clipper(cfg.clip_warmup);
    const double bound_slack = std::sqrt(static_cast<double>(t2) * std::log(2.0));

    MethodResult result;
    result.kind = kind;
    result.seed = seed;
    result.rounds.reserve(static_cast<std::size_t>(t2));
    double cum_raw = 0.0;
    double ens_cum = 0.0;
    double base1_cum = 0.0;
    double base2_cum = 0.0;
    long n_correct = 0;

    for (long t = t1 + 1; t <= t1 + t2; ++t) {
        const StreamEvent& ev = events[static_cast<std::size_t>(t - 1)];
        if (!ev.x_s2) throw input_error("run_method: evaluation event lacks new view");
        const long tt = t - t1;
        const double tau = 1.0 / std::sqrt(static_cast<double>(tt));
        const auto& d = draws[static_cast<std::size_t>(t - 1)];

        Sample s_new{*ev.x_s2, SpaceId::s2, ev.revealed_label, t};
        std::optional<Sample> s_old;
        if (needs_mapping(kind))
            s_old = Sample{apply_mapping(*psi, *ev.x_s2), SpaceId::s1, ev.revealed_label, t};

        RoundRecord rec;
        rec.t = tt;
        double p = 0.0;
        double j = 0.0;
        switch (kind) {
            case MethodKind::nogd:
            case MethodKind::nogd_mr:
                p = new_model->predict(s_new.features);
                j = new_model->risk(s_new);
                new_model->observe(s_new, tau, d[0], d[1]);
                break;
            case MethodKind::urogd:
            case MethodKind::urogd_mr:
                p = old_model->predict(s_old->features);
                j = old_model->risk(*s_old);
                old_model->observe(*s_old, tau, d[0], d[1]);
                break;
            case MethodKind::frogd:
            case MethodKind::frogd_mr:
                p = frozen->predict(s_old->features);
                j = frozen->risk(*s_old);
                frozen->observe(*s_old, d[0], d[1]);
                break;
            case MethodKind::ensemble_plain:
            case MethodKind::ensemble: {
                const double p1 = old_model->predict(s_old->features);
                const double p2 = new_model->predict(s_new.features);
                p = combine(ens, p1, p2);
                const double j1 = old_model->risk(*s_old);
                const double j2 = new_model->risk(s_new);
                j = ensemble_risk(ens, j1, j2);
                rec.alpha1 = ens.weights[0];
                rec.alpha2 = ens.weights[1];
                const bool update_weights_now =
                    kind == MethodKind::ensemble || ev.revealed_label.has_value();
                if (update_weights_now) {
                    const auto clipped = clipper.observe(j1, j2);
                    ens_cum += ensemble_risk(ens, clipped[0], clipped[1]);
                    base1_cum += clipped[0];
                    base2_cum += clipped[1];
                    ens = update_weights(ens, clipped[0], clipped[1]);
                }
                old_model->observe(*s_old, tau, d[0], d[1]);
                new_model->observe(s_new, tau, d[0], d[1]);
                break;
            }
        }

        const int pred = p >= 0.0 ? 1 : -1;
        rec.correct = pred == ev.true_label ? 1 : 0;
        n_correct += rec.correct;
        cum_raw += j;
        rec.raw_risk = j;
        rec.avg_cum_risk = cum_raw / static_cast<double>(tt);
        rec.ens_cum_clipped = ens_cum;
        rec.min_base_cum_clipped = std::min(base1_cum, base2_cum);
        rec.bound = rec.min_base_cum_clipped + bound_slack;
        result.rounds.push_back(rec);
    }

    result.accuracy = static_cast<double>(n_correct) / static_cast<double>(t2);
    result.final_avg_cum_risk = result.rounds.empty() ? 0.0 : result.rounds.back().avg_cum_risk;
    if (is_ensemble) {
        result.j_cap = clipper.cap();
        result.ens_cum_clipped = ens_cum;
        result.base1_cum_clipped = base1_cum;
        result.base2_cum_clipped = base2_cum;
        result.bound_violated = ens_cum > std::min(base1_cum, base2_cum) + bound_slack;
    }
    return result;
}

}  // namespace evostream
