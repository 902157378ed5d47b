#include "lexnorm/tuner.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace lexnorm {

namespace {

std::vector<Feature> searched_features(const PipelineConfig& base, const TuneOptions& options) {
    std::vector<Feature> features;
    if (!options.search_weights) return features;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const Feature f = static_cast<Feature>(i);
        if (base.features.has(f)) features.push_back(f);
    }
    return features;
}

struct ParamSpace {
    std::vector<Feature> weight_dims;
    bool threshold_dim = false;

    std::size_t size() const { return weight_dims.size() + (threshold_dim ? 1 : 0); }

    std::vector<double> pack(const PipelineConfig& config, double threshold) const {
        std::vector<double> x;
        for (Feature f : weight_dims) x.push_back(config.weights[f]);
        if (threshold_dim) x.push_back(threshold);
        return x;
    }

    void apply(std::span<const double> x, PipelineConfig& config) const {
        for (std::size_t i = 0; i < weight_dims.size(); ++i)
            config.weights[weight_dims[i]] = x[i];
        if (threshold_dim) config.threshold = x.back();
    }
};

double pipeline_f(std::span<const Message> messages, const GoldStandard& gold,
                  const PipelineConfig& config) {
    return run_pipeline(messages, &gold, config).report->f_measure;
}

}  // namespace

TuneResult optimize_parameters(std::span<const Message> messages, const GoldStandard& gold,
                               const PipelineConfig& base, const TuneOptions& options) {
    if (options.folds < 2) throw Error(Error::Kind::config, "cross-validation needs >= 2 folds");
    if (messages.size() < static_cast<std::size_t>(options.folds))
        throw Error(Error::Kind::config, "fewer messages than folds");

    // Message-level fold split with a fixed shuffle.
    std::vector<std::size_t> order(messages.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
    }
    std::vector<int> fold_of(messages.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        fold_of[order[i]] = static_cast<int>(i % static_cast<std::size_t>(options.folds));

    auto fold_messages = [&](int fold, bool held_out) {
        std::vector<Message> subset;
        for (std::size_t i = 0; i < messages.size(); ++i) {
            if ((fold_of[i] == fold) == held_out) subset.push_back(messages[i]);
        }
        return subset;
    };

    ParamSpace space;
    space.weight_dims = searched_features(base, options);
    space.threshold_dim = options.search_threshold;

    TuneResult result;
    const double t0 = base.threshold.value_or(0.3);

    struct Candidate {
        std::vector<double> x;
        double mean_cv = 0;
    };
    std::vector<Candidate> candidates;

    // Default parameters are always a candidate, so tuning can never report
    // parameters worse than them under the CV metric.
    std::vector<double> default_x;
    if (space.size() > 0) default_x = space.pack(base, t0);
    candidates.push_back({default_x, 0});

    std::vector<std::vector<Message>> train_sets, test_sets;
    std::vector<bool> fold_valid(static_cast<std::size_t>(options.folds), true);
    for (int fold = 0; fold < options.folds; ++fold) {
        train_sets.push_back(fold_messages(fold, false));
        test_sets.push_back(fold_messages(fold, true));
    }

    for (int fold = 0; fold < options.folds; ++fold) {
        FoldOutcome outcome;
        outcome.fold = fold;
        double base_train_f = 0;
        try {
            base_train_f = pipeline_f(train_sets[static_cast<std::size_t>(fold)], gold, base);
            pipeline_f(test_sets[static_cast<std::size_t>(fold)], gold, base);
        } catch (const Error& e) {
            if (e.kind() != Error::Kind::empty_input) throw;
            outcome.valid = false;
            fold_valid[static_cast<std::size_t>(fold)] = false;
            result.warnings.push_back("fold " + std::to_string(fold) +
                                      " skipped: " + e.what());
            result.folds.push_back(outcome);
            continue;
        }

        if (space.size() == 0) {
            outcome.train_f = base_train_f;
            outcome.held_out_f =
                pipeline_f(test_sets[static_cast<std::size_t>(fold)], gold, base);
            result.folds.push_back(outcome);
            continue;
        }

        const auto& train = train_sets[static_cast<std::size_t>(fold)];
        const Objective objective = [&](std::span<const double> x) {
            PipelineConfig config = base;
            space.apply(x, config);
            return pipeline_f(train, gold, config);
        };

        NelderMeadConfig nm;
        nm.initial_step = options.nm_step;
        nm.max_evals = options.nm_max_evals;
        nm.diameter_tol = 1e-4;
        nm.lower.assign(space.size(), 0.0);
        nm.upper.assign(space.weight_dims.size(), options.weight_upper);
        if (space.threshold_dim) nm.upper.push_back(1.0);

        std::vector<double> x0 = space.pack(base, t0);
        const NelderMeadResult best = nelder_mead(objective, std::move(x0), nm);

        outcome.train_f = best.value;
        PipelineConfig winner = base;
        space.apply(best.x, winner);
        outcome.held_out_f = pipeline_f(test_sets[static_cast<std::size_t>(fold)], gold, winner);
        result.folds.push_back(outcome);
        candidates.push_back({best.x, 0});
    }

    int valid_folds = 0;
    for (int fold = 0; fold < options.folds; ++fold)
        if (fold_valid[static_cast<std::size_t>(fold)]) ++valid_folds;
    if (valid_folds == 0)
        throw Error(Error::Kind::empty_input, "every cross-validation fold was degenerate");

    // Mean held-out F across valid folds for every candidate.
    for (Candidate& candidate : candidates) {
        double total = 0;
        for (int fold = 0; fold < options.folds; ++fold) {
            if (!fold_valid[static_cast<std::size_t>(fold)]) continue;
            PipelineConfig config = base;
            if (space.size() > 0) space.apply(candidate.x, config);
            total += pipeline_f(test_sets[static_cast<std::size_t>(fold)], gold, config);
        }
        candidate.mean_cv = total / valid_folds;
    }

    std::size_t best_idx = 0;  // ties keep the earliest candidate (defaults first)
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (candidates[i].mean_cv > candidates[best_idx].mean_cv) best_idx = i;
    }

    PipelineConfig chosen = base;
    if (space.size() > 0 && !candidates[best_idx].x.empty())
        space.apply(candidates[best_idx].x, chosen);
    result.weights = chosen.weights;
    result.threshold = chosen.threshold.value_or(t0);
    result.mean_cv_f = candidates[best_idx].mean_cv;
    result.default_cv_f = candidates[0].mean_cv;
    return result;
}

void write_tune_report(std::ostream& out, const TuneResult& result, const PipelineConfig& base) {
    std::ostringstream fmt;
    fmt << std::fixed << std::setprecision(6);
    for (const FoldOutcome& fold : result.folds) {
        fmt << "fold\t" << fold.fold << '\t';
        if (fold.valid)
            fmt << "train_f\t" << fold.train_f << "\theld_out_f\t" << fold.held_out_f << '\n';
        else
            fmt << "skipped\n";
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const Feature f = static_cast<Feature>(i);
        if (base.features.has(f))
            fmt << "weight_" << feature_name(f) << '\t' << result.weights[f] << '\n';
    }
    fmt << "threshold\t" << result.threshold << '\n';
    fmt << "mean_cv_f\t" << result.mean_cv_f << '\n';
    fmt << "default_cv_f\t" << result.default_cv_f << '\n';
    for (const std::string& warning : result.warnings) fmt << "warning\t" << warning << '\n';
    out << fmt.str();
}

}  // namespace lexnorm
