#include <doctest.h>

#include <cmath>
#include <random>

#include "lexnorm/nelder_mead.hpp"
#include "lexnorm/synth.hpp"
#include "lexnorm/tuner.hpp"

using namespace lexnorm;

TEST_CASE("recovers the maximum of a 1-d parabola") {
    const Objective f = [](std::span<const double> x) { return -(x[0] - 2.0) * (x[0] - 2.0); };
    const NelderMeadResult result = nelder_mead(f, {0.0});
    CHECK(result.x[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(result.value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("recovers the minimum of a 2-d bowl") {
    // Maximise the negated bowl; the known minimiser is (1, -0.5).
    const Objective f = [](std::span<const double> x) {
        return -((x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 0.5) * (x[1] + 0.5));
    };
    const NelderMeadResult result = nelder_mead(f, {0.0, 0.0});
    CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(result.x[1] == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("constant objective terminates at the start") {
    const Objective f = [](std::span<const double>) { return 3.5; };
    const NelderMeadResult result = nelder_mead(f, {1.0, 2.0});
    CHECK(result.value == doctest::Approx(3.5));
    CHECK(result.evaluations <= 2000);
}

TEST_CASE("box bounds clamp the search") {
    const Objective f = [](std::span<const double> x) { return x[0]; };  // push upward
    NelderMeadConfig config;
    config.lower = {0.0};
    config.upper = {1.0};
    config.max_evals = 200;
    const NelderMeadResult result = nelder_mead(f, {0.5}, config);
    CHECK(result.x[0] <= 1.0);
    CHECK(result.value <= 1.0);
}

TEST_CASE("non-finite objective raises an optimization error") {
    const Objective f = [](std::span<const double> x) {
        return x[0] > 0.1 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    CHECK_THROWS_AS(nelder_mead(f, {0.0}), Error);
}

TEST_CASE("best value never decreases across accepted steps") {
    std::mt19937_64 rng(91);
    const Objective f = [](std::span<const double> x) {
        return -(std::sin(3 * x[0]) + x[0] * x[0] * 0.3 + std::cos(2 * x[1]));
    };
    const NelderMeadResult result =
        nelder_mead(f, {static_cast<double>(rng() % 5), static_cast<double>(rng() % 5)});
    for (std::size_t i = 1; i < result.best_trajectory.size(); ++i)
        CHECK(result.best_trajectory[i] >= result.best_trajectory[i - 1] - 1e-12);
}

namespace {

// Small corpus where the context feature carries no signal: anchors are
// drawn uniformly at random for every sentence.
SynthData noise_context_fixture() {
    SynthData data = synth_corpus({.seed = 3,
                                   .groups = 24,
                                   .variants_min = 3,
                                   .variants_max = 4,
                                   .twin_pct = 0,
                                   .long_twin_pct = 0,
                                   .h_variant_pct = 20,
                                   .sentences_per_variant = 2,
                                   .anchor_pool = 40,
                                   .filler_pool = 30,
                                   .filler_sentences = 30});
    std::mt19937_64 rng(17);
    std::vector<std::string> anchors;
    for (int i = 0; i < 60; ++i) anchors.push_back("n" + std::to_string(i) + "x");
    std::vector<std::string> scrambled;
    for (const auto& line : data.lines) {
        std::string word;
        std::vector<std::string> tokens;
        for (char c : line) {
            if (c == ' ') {
                if (!word.empty()) tokens.push_back(std::move(word));
                word.clear();
            } else {
                word.push_back(c);
            }
        }
        if (!word.empty()) tokens.push_back(std::move(word));
        if (tokens.size() < 3) continue;
        // keep only the middle (variant) token, re-anchor it randomly
        scrambled.push_back(anchors[rng() % anchors.size()] + " " + tokens[1] + " " +
                            anchors[rng() % anchors.size()]);
    }
    data.lines = std::move(scrambled);
    return data;
}

}  // namespace

TEST_CASE("tuning with nothing to search returns the defaults") {
    const SynthData data = synth_corpus({.seed = 4, .groups = 30});
    const auto messages = preprocess(data.lines);
    PipelineConfig base;
    base.threshold = 0.5;
    TuneOptions options;
    options.folds = 3;
    options.search_weights = false;
    options.search_threshold = false;
    const TuneResult result = optimize_parameters(messages, data.gold, base, options);
    for (std::size_t i = 0; i < kFeatureCount; ++i)
        CHECK(result.weights.values[i] == doctest::Approx(1.0));
    CHECK(result.threshold == doctest::Approx(0.5));
    CHECK(result.mean_cv_f == doctest::Approx(result.default_cv_f));
    CHECK(result.mean_cv_f > 0.0);
}

TEST_CASE("noisy context: tuning does not raise the context weight and cv does not drop") {
    const SynthData data = noise_context_fixture();
    const auto messages = preprocess(data.lines);

    PipelineConfig base;
    base.threshold = 0.5;
    base.min_context = 1;

    // Grid oracle over the context weight confirms that noise contexts do
    // not help on the training corpus.
    auto grid_f = [&](double alpha_c) {
        PipelineConfig config = base;
        config.weights[Feature::context_word] = alpha_c;
        return run_pipeline(messages, &data.gold, config).report->f_measure;
    };
    const double at_zero = grid_f(0.0);
    const double at_two = grid_f(2.0);
    CHECK(at_zero >= at_two - 1e-9);

    TuneOptions options;
    options.folds = 3;
    options.search_threshold = false;
    options.nm_max_evals = 30;
    const TuneResult result = optimize_parameters(messages, data.gold, base, options);
    CHECK(result.weights[Feature::context_word] <= 1.0 + 1e-9);
    CHECK(result.mean_cv_f >= result.default_cv_f - 1e-12);
}

TEST_CASE("tuner validates the fold count") {
    const SynthData data = synth_corpus({.seed = 4, .groups = 20});
    const auto messages = preprocess(data.lines);
    PipelineConfig base;
    TuneOptions options;
    options.folds = 1;
    CHECK_THROWS_AS(optimize_parameters(messages, data.gold, base, options), Error);
}
