#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexnorm/nelder_mead.hpp"
#include "lexnorm/pipeline.hpp"

namespace lexnorm {

struct TuneOptions {
    int folds = 10;
    std::uint64_t seed = 42;          // message-level fold split
    bool search_weights = true;
    bool search_threshold = true;
    int nm_max_evals = 40;            // per fold
    double nm_step = 0.25;
    double weight_upper = 4.0;
};

struct FoldOutcome {
    int fold = 0;
    bool valid = true;       // degenerate folds are skipped with a warning
    double train_f = 0;      // best objective reached on the hold-in corpus
    double held_out_f = 0;   // fold winner applied to the held-out corpus
};

struct TuneResult {
    FeatureWeights weights;
    double threshold = 0;
    double mean_cv_f = 0;        // chosen parameters, mean over valid folds
    double default_cv_f = 0;     // default parameters on the same folds
    std::vector<FoldOutcome> folds;
    std::vector<std::string> warnings;
};

/// Per fold, maximises the hold-in BCubed F over the searched parameters
/// with Nelder-Mead; the returned parameters are the candidate (defaults
/// included) with the best mean held-out F. Throws Error::Kind::config
/// when folds < 2, Error::Kind::empty_input when every fold is degenerate.
TuneResult optimize_parameters(std::span<const Message> messages, const GoldStandard& gold,
                               const PipelineConfig& base, const TuneOptions& options = {});

void write_tune_report(std::ostream& out, const TuneResult& result, const PipelineConfig& base);

}  // namespace lexnorm
