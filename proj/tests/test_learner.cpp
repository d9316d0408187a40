#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "evostream/errors.hpp"
#include "evostream/learner.hpp"
#include "evostream/rng.hpp"

using namespace evostream;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

RiskParams typical_params(double lambda2) {
    RiskParams p;
    p.lambda1 = 0.01;
    p.lambda2 = lambda2;
    p.inv_label_prob = 1.0 / 0.3;
    p.loss = LossId::logistic;
    p.graph_kernel.sigma = 1.0;
    return p;
}

Sample random_sample(Rng& rng, double label_prob) {
    Sample s;
    s.features = vec2(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (rng.uniform01() < label_prob) s.label = rng.uniform01() < 0.5 ? 1 : -1;
    return s;
}

bool mirrors_buffer(const BufferedLearner& l) {
    const auto& reps = l.predictor().representers;
    const auto& slots = l.buffer().contents();
    if (reps.size() != slots.size()) return false;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if ((reps[i] - slots[i]).norm() != 0.0) return false;
    return true;
}

}  // namespace

TEST_CASE("the first labeled round merges the random init with a gradient step") {
    const double c = 0.05;
    const double tau = 1.0;
    RiskParams p = typical_params(0.2);
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, p, UpdatePolicy::labeled_only, 8, c);
    Sample x{vec2(0.3, -0.2), SpaceId::s1, 1, 1};
    l.observe(x, tau, 0.5, 0.5);

    // f before the step is c * K(x, .), so f(x) = c; shrink by (1 - tau
    // lambda1) and subtract the scaled loss derivative at score c.
    const LossValue lv = prediction_loss(LossId::logistic, c, 1);
    const double expected = (1.0 - tau * p.lambda1) * c - tau * p.inv_label_prob * lv.derivative;
    REQUIRE(l.predictor().representers.size() == 1);
    CHECK(l.predictor().coefficients[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(l.buffer().occupancy() == 1);
    CHECK(mirrors_buffer(l));
}

TEST_CASE("the first unlabeled round keeps the init under the label-gated policy") {
    const double c = -0.07;
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, typical_params(0.2),
                      UpdatePolicy::labeled_only, 8, c);
    Sample x{vec2(1, 1), SpaceId::s1, std::nullopt, 1};
    l.observe(x, 1.0, 0.5, 0.5);
    CHECK(l.predictor().coefficients[0] == c);
}

TEST_CASE("the first unlabeled round shrinks the init under the every-round policy") {
    const double c = -0.07;
    RiskParams p = typical_params(0.2);
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, p, UpdatePolicy::every_round, 8, c);
    Sample x{vec2(1, 1), SpaceId::s1, std::nullopt, 1};
    const double tau = 0.6;
    l.observe(x, tau, 0.5, 0.5);
    // The buffer is empty before round one, so the only motion is the norm
    // shrink of the init coefficient.
    CHECK(l.predictor().coefficients[0] == (1.0 - tau * p.lambda1) * c);
}

TEST_CASE("representers mirror the buffer slots through hundreds of rounds") {
    for (UpdatePolicy policy : {UpdatePolicy::every_round, UpdatePolicy::labeled_only}) {
        BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, typical_params(0.2), policy, 20, 0.03);
        Rng data_rng(61);
        Rng draw_rng(62);
        for (int t = 1; t <= 300; ++t) {
            const Sample x = random_sample(data_rng, 0.3);
            const double tau = 1.0 / std::sqrt(static_cast<double>(t));
            l.observe(x, tau, draw_rng.uniform01(), draw_rng.uniform01());
            REQUIRE(mirrors_buffer(l));
            REQUIRE(l.predictor().coefficients.allFinite());
        }
        CHECK(l.buffer().occupancy() == 20);
        CHECK(l.buffer().seen_count() == 300);
    }
}

TEST_CASE("unlabeled rounds under the label-gated policy only track the buffer") {
    RiskParams p = typical_params(0.0);
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, p, UpdatePolicy::labeled_only, 3, 0.0);
    Rng rng(5);
    // Fill: three unlabeled appends. Coefficients stay zero.
    for (int t = 0; t < 3; ++t) {
        l.observe(random_sample(rng, 0.0), 0.5, 0.9, 0.5);
        CHECK((l.predictor().coefficients.array() == 0.0).all());
    }

    // Train one labeled round (skip branch keeps the buffer unchanged).
    Sample labeled = random_sample(rng, 0.0);
    labeled.label = 1;
    l.observe(labeled, 0.5, 0.99, 0.5);
    const Eigen::VectorXd before = l.predictor().coefficients;
    CHECK((before.array() != 0.0).any());

    // Unlabeled skipped round: the model must not move at all.
    l.observe(random_sample(rng, 0.0), 0.5, 0.99, 0.5);
    CHECK((l.predictor().coefficients.array() == before.array()).all());

    // Unlabeled appended round cannot happen on a full buffer; an unlabeled
    // replacement re-projects but keeps the function nearly intact when the
    // victim carries negligible mass.
    const double pred_before = l.predict(vec2(0.5, 0.5));
    l.observe(random_sample(rng, 0.0), 0.5, 0.0, 0.999);
    CHECK(mirrors_buffer(l));
    CHECK(std::isfinite(l.predict(vec2(0.5, 0.5))));
    // The replaced slot had coefficient ~0 only in special cases; here we
    // just pin that the update is a projection, i.e. the prediction at the
    // surviving representers moved by a bounded amount.
    CHECK(std::abs(l.predict(vec2(0.5, 0.5)) - pred_before) <= 1.0);
}

TEST_CASE("unlabeled append extends the expansion with a zero coefficient") {
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, typical_params(0.0),
                      UpdatePolicy::labeled_only, 5, 0.2);
    Sample first{vec2(0, 0), SpaceId::s1, 1, 1};
    l.observe(first, 1.0, 0.5, 0.5);
    const double c0 = l.predictor().coefficients[0];
    Sample second{vec2(1, 0), SpaceId::s1, std::nullopt, 2};
    l.observe(second, 0.7, 0.5, 0.5);
    REQUIRE(l.predictor().coefficients.size() == 2);
    CHECK(l.predictor().coefficients[0] == c0);  // untouched, not even shrunk
    CHECK(l.predictor().coefficients[1] == 0.0);
}

TEST_CASE("a zero-initialized model stays zero on an unlabeled stream") {
    for (UpdatePolicy policy : {UpdatePolicy::every_round, UpdatePolicy::labeled_only}) {
        BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, typical_params(0.3), policy, 4, 0.0);
        Rng rng(91);
        for (int t = 1; t <= 120; ++t) {
            l.observe(random_sample(rng, 0.0), 1.0 / std::sqrt(t), rng.uniform01(),
                      rng.uniform01());
            REQUIRE((l.predictor().coefficients.array() == 0.0).all());
        }
    }
}

TEST_CASE("learner risk is measured against the pre-update buffer timeline") {
    BufferedLearner l(KernelConfig{1.0}, SpaceId::s1, typical_params(0.4),
                      UpdatePolicy::every_round, 10, 0.1);
    Rng rng(12);
    for (int t = 1; t <= 15; ++t)
        l.observe(random_sample(rng, 0.5), 1.0 / std::sqrt(t), rng.uniform01(), rng.uniform01());
    Sample probe = random_sample(rng, 0.0);
    // seen_count is 15 and everything fits the buffer, so the learner-local
    // round index is 16 and the risk must match the direct computation.
    const double expected =
        buffered_risk(l.predictor(), probe, l.buffer().contents(), l.params(), 16);
    CHECK(l.risk(probe) == expected);
}

TEST_CASE("a large enough buffer reproduces the unbuffered oracle bitwise") {
    RiskParams p = typical_params(0.25);
    const double init = 0.04;
    BufferedLearner buffered(KernelConfig{1.0}, SpaceId::s1, p, UpdatePolicy::every_round, 200,
                             init);
    OracleLearner oracle(KernelConfig{1.0}, SpaceId::s1, p, UpdatePolicy::every_round, init);
    Rng data_rng(2024);
    Rng draw_rng(2025);
    const Eigen::VectorXd probe = vec2(0.25, -0.8);
    for (int t = 1; t <= 200; ++t) {
        const Sample x = random_sample(data_rng, 0.3);
        // Predictions must agree bit for bit before each round's update.
        REQUIRE(buffered.predict(x.features) == oracle.predict(x.features));
        REQUIRE(buffered.risk(x) == oracle.risk(x));
        const double tau = 1.0 / std::sqrt(static_cast<double>(t));
        buffered.observe(x, tau, draw_rng.uniform01(), draw_rng.uniform01());
        oracle.observe(x, tau);
        REQUIRE(buffered.predict(probe) == oracle.predict(probe));
    }
    REQUIRE(buffered.predictor().coefficients.size() ==
            oracle.predictor().coefficients.size());
    CHECK((buffered.predictor().coefficients.array() ==
           oracle.predictor().coefficients.array())
              .all());
}

TEST_CASE("the oracle keeps every sample as a representer") {
    OracleLearner oracle(KernelConfig{1.0}, SpaceId::s1, typical_params(0.2),
                         UpdatePolicy::every_round, 0.01);
    Rng rng(44);
    for (int t = 1; t <= 50; ++t) oracle.observe(random_sample(rng, 0.4), 1.0 / std::sqrt(t));
    CHECK(oracle.history().size() == 50);
}

TEST_CASE("a frozen model never changes while its buffer keeps sampling") {
    BufferedLearner warm(KernelConfig{1.0}, SpaceId::s1, typical_params(0.2),
                         UpdatePolicy::every_round, 6, 0.05);
    Rng rng(71);
    for (int t = 1; t <= 30; ++t)
        warm.observe(random_sample(rng, 0.5), 1.0 / std::sqrt(t), rng.uniform01(),
                     rng.uniform01());

    FrozenModel frozen(warm.predictor(), warm.buffer(), warm.params());
    const Eigen::VectorXd coefs = frozen.predictor().coefficients;
    const long seen_before = frozen.buffer().seen_count();
    std::vector<double> risks;
    for (int t = 1; t <= 40; ++t) {
        Sample x = random_sample(rng, 0.0);
        risks.push_back(frozen.risk(x));
        frozen.observe(x, rng.uniform01(), rng.uniform01());
        REQUIRE((frozen.predictor().coefficients.array() == coefs.array()).all());
    }
    CHECK(frozen.buffer().seen_count() == seen_before + 40);
    for (double r : risks) CHECK(std::isfinite(r));
}

TEST_CASE("continuing a learner requires a predictor in sync with its buffer") {
    KernelPredictor f;
    f.kernel.sigma = 1.0;
    f.representers = {vec2(0, 0)};
    f.coefficients.resize(1);
    f.coefficients[0] = 0.5;
    ReservoirBuffer buf(4);
    // Buffer is empty but the predictor has one representer.
    CHECK_THROWS_AS(BufferedLearner(f, buf, typical_params(0.1), UpdatePolicy::every_round),
                    internal_error);
    buf.offer_with(vec2(0, 0), 0.5, 0.5);
    CHECK_NOTHROW(BufferedLearner(f, buf, typical_params(0.1), UpdatePolicy::every_round));
}
