#include <cmath>
#include <random>

#include "doctest.h"
#include "sndgaze/glm.hpp"
#include "sndgaze/rng.hpp"

using namespace sndgaze;

namespace {

// rows from sigma(b0 + b1*x1 + b2*x2) with standard normal features
void logistic_data(int n, double b0, double b1, double b2,
                   std::vector<std::vector<double>>& x, std::vector<int>& y,
                   std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    x.clear();
    y.clear();
    for (int i = 0; i < n; ++i) {
        double x1 = rand_normal(gen), x2 = rand_normal(gen);
        double eta = b0 + b1 * x1 + b2 * x2;
        double p = 1.0 / (1.0 + std::exp(-eta));
        x.push_back({x1, x2});
        y.push_back(rand_unit(gen) < p ? 1 : 0);
    }
}

}  // namespace

TEST_CASE("fit recovers generating coefficients at n=2000") {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    logistic_data(2000, 0.5, -1.0, 2.0, x, y, 101);
    auto fit = fit_logistic(x, y);
    CHECK(fit.converged);
    CHECK(!fit.separation);
    auto orig = fit.coefficients_original();
    CHECK(orig[0] == doctest::Approx(0.5).epsilon(0.3));
    CHECK(orig[1] == doctest::Approx(-1.0).epsilon(0.15));
    CHECK(orig[2] == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("coefficient error shrinks with sample size") {
    auto error_at = [](int n) {
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        double total = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            logistic_data(n, 0.0, 1.0, -0.5, x, y, seed);
            auto orig = fit_logistic(x, y).coefficients_original();
            total += std::abs(orig[1] - 1.0) + std::abs(orig[2] + 0.5);
        }
        return total / 5.0;
    };
    CHECK(error_at(2000) < error_at(200));
}

TEST_CASE("shuffled labels give tiny coefficients and chance AUC") {
    std::mt19937_64 gen(7);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 1000; ++i) {
        x.push_back({rand_normal(gen), rand_normal(gen)});
        y.push_back(i % 2);
    }
    auto fit = fit_logistic(x, y);
    CHECK(std::abs(fit.coefficients[1]) < 0.2);
    CHECK(std::abs(fit.coefficients[2]) < 0.2);
    std::vector<double> probs;
    for (const auto& row : x) probs.push_back(predict(fit, row));
    CHECK(roc_auc(probs, y) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("perfect separation is flagged and capped") {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
        x.push_back({static_cast<double>(i)});
        y.push_back(i < 10 ? 0 : 1);
    }
    auto fit = fit_logistic(x, y);
    CHECK(fit.separation);
    CHECK(!fit.converged);
    for (double b : fit.coefficients) CHECK(std::abs(b) <= 30.0);
    std::vector<double> probs;
    for (const auto& row : x) probs.push_back(predict(fit, row));
    CHECK(roc_auc(probs, y) == 1.0);
}

TEST_CASE("single-class labels are rejected") {
    std::vector<std::vector<double>> x = {{0.0}, {1.0}, {2.0}};
    CHECK_THROWS_AS(fit_logistic(x, {1, 1, 1}), Error);
}

TEST_CASE("predict basics") {
    GlmFit fit;
    fit.coefficients = {0.0, 0.0};
    fit.standardization = {{0.0, 1.0}};
    CHECK(predict(fit, {123.0}) == 0.5);
    fit.coefficients = {0.0, 1.0};
    CHECK(predict(fit, {0.0}) == 0.5);
    CHECK(predict(fit, {std::log(3.0)}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(predict(fit, {1.0, 2.0}), Error);
}

TEST_CASE("loo_cv produces one probability per row in input order") {
    std::vector<std::vector<double>> x = {{0.0}, {1.0}, {10.0}, {11.0}};
    std::vector<int> y = {0, 0, 1, 1};
    auto loo = loo_cv(x, y);
    REQUIRE(loo.probabilities.size() == 4);
    CHECK(loo.skipped_folds == 0);
    CHECK(loo.probabilities[0] < 0.5);
    CHECK(loo.probabilities[3] > 0.5);
}

TEST_CASE("loo_cv is invariant to duplicated other rows' order") {
    std::vector<std::vector<double>> x = {{0.0}, {1.0}, {5.0}, {6.0}, {2.5}};
    std::vector<int> y = {0, 0, 1, 1, 0};
    auto base = loo_cv(x, y);

    // permute all rows except the last; its held-out prediction must not move
    std::vector<std::vector<double>> x2 = {{1.0}, {5.0}, {0.0}, {6.0}, {2.5}};
    std::vector<int> y2 = {0, 1, 0, 1, 0};
    auto permuted = loo_cv(x2, y2);
    CHECK(permuted.probabilities[4] == doctest::Approx(base.probabilities[4]).epsilon(1e-9));
}

TEST_CASE("loo AUC close to in-sample AUC on a planted task") {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    logistic_data(400, 0.0, 2.5, 0.0, x, y, 55);
    auto fit = fit_logistic(x, y);
    std::vector<double> in_sample;
    for (const auto& row : x) in_sample.push_back(predict(fit, row));
    auto loo = loo_cv(x, y);
    CHECK(roc_auc(loo.probabilities, y) ==
          doctest::Approx(roc_auc(in_sample, y)).epsilon(0.05));
}

TEST_CASE("evaluate on a clean split") {
    auto report = evaluate({0.9, 0.8, 0.3, 0.2}, {1, 1, 0, 0}, 0.5);
    CHECK(report.accuracy == 1.0);
    CHECK(report.roc_auc == 1.0);
    CHECK(report.tn == 2);
    CHECK(report.fp == 0);
    CHECK(report.fn == 0);
    CHECK(report.tp == 2);
    CHECK(report.precision == 1.0);
    CHECK(report.recall == 1.0);
    CHECK(report.f1 == 1.0);
}

TEST_CASE("all-tied probabilities give AUC 0.5") {
    CHECK(roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == 0.5);
}

TEST_CASE("AUC by pair counting") {
    CHECK(roc_auc({0.9, 0.4, 0.8, 0.2}, {1, 0, 0, 1}) == doctest::Approx(0.5));
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
    std::mt19937_64 gen(67);
    std::vector<double> probs(60);
    std::vector<int> labels(60);
    for (int i = 0; i < 60; ++i) {
        probs[i] = rand_unit(gen);
        labels[i] = rand_unit(gen) < 0.4 ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    double base = roc_auc(probs, labels);
    std::vector<double> transformed = probs;
    for (double& p : transformed) p = std::atan(5.0 * p) + 2.0;
    CHECK(roc_auc(transformed, labels) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("confusion identities hold on random inputs") {
    std::mt19937_64 gen(71);
    std::vector<double> probs(80);
    std::vector<int> labels(80);
    for (int i = 0; i < 80; ++i) {
        probs[i] = rand_unit(gen);
        labels[i] = rand_unit(gen) < 0.5 ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    auto r = evaluate(probs, labels, 0.5);
    CHECK(r.tn + r.fp + r.fn + r.tp == r.n);
    if (r.tp + r.fp > 0)
        CHECK(r.precision == doctest::Approx(double(r.tp) / double(r.tp + r.fp)));
    if (r.tp + r.fn > 0)
        CHECK(r.recall == doctest::Approx(double(r.tp) / double(r.tp + r.fn)));
    CHECK(r.accuracy == doctest::Approx(double(r.tp + r.tn) / double(r.n)));
    if (r.precision + r.recall > 0)
        CHECK(r.f1 == doctest::Approx(2 * r.precision * r.recall /
                                      (r.precision + r.recall)));
    CHECK_THROWS_AS(evaluate({}, {}, 0.5), Error);
    CHECK_THROWS_AS(evaluate({0.5}, {1}, 1.5), Error);
}

TEST_CASE("run_model_based separates a strong SND effect") {
    // words whose SND is high get systematically longer gaze times
    SndResult snd;
    std::map<std::string, double> tf;
    std::map<std::string, WordGazeRecord> gaze;
    std::mt19937_64 gen(73);
    for (int i = 0; i < 80; ++i) {
        std::string w = "w" + std::to_string(i);
        bool high = i < 40;
        SndScore score;
        score.word = w;
        score.arc = high ? 0.9 : 0.1;
        score.neighborhood_size = 3;
        score.effective_value = *score.arc;
        snd.scores[w] = score;
        tf[w] = 0.0125;
        double ffd = (high ? 400.0 : 300.0) + 5.0 * rand_normal(gen);
        gaze[w].ffd_ms = ffd;
        gaze[w].n_ffd = 1;
    }
    auto result = run_model_based(snd, tf, gaze, GazeMetric::FFD, SplitKind::Median);
    CHECK(result.report.roc_auc > 0.9);
    CHECK(result.n_words == 80);

    // shuffled labels: same features, gaze decoupled from SND
    std::map<std::string, WordGazeRecord> null_gaze;
    for (int i = 0; i < 80; ++i) {
        std::string w = "w" + std::to_string(i);
        null_gaze[w].ffd_ms = 300.0 + 50.0 * rand_normal(gen);
        null_gaze[w].n_ffd = 1;
    }
    auto null_result =
        run_model_based(snd, tf, null_gaze, GazeMetric::FFD, SplitKind::Median);
    CHECK(null_result.report.roc_auc > 0.3);
    CHECK(null_result.report.roc_auc < 0.7);
}
