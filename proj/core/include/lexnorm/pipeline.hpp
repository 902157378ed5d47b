#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "lexnorm/bcubed.hpp"
#include "lexnorm/corpus.hpp"
#include "lexnorm/lexvar.hpp"
#include "lexnorm/phonetic.hpp"
#include "lexnorm/similarity.hpp"

namespace lexnorm {

/// End-to-end batch run: vocabulary, contexts, encodings, initial
/// clustering, Lex-Var (or its hierarchical variant), optional evaluation.
struct PipelineConfig {
    UrduPhoneOptions encoder;
    CodeTable code_table = CodeTable::roman_urdu();

    int context_k = 5;
    // Feature ids used by the context-word channel; cluster_id substitutes
    // initial-cluster indices for word ids.
    ContextFeature word_channel = ContextFeature::word_id;

    FeatureSet features{Feature::phonetic, Feature::string_sim, Feature::context_word};
    FeatureWeights weights;

    enum class Algorithm { lexvar, hierarchical };
    Algorithm algorithm = Algorithm::lexvar;
    std::optional<double> threshold;  // default 0.3 below 20k words, else 0.4
    int neighborhood = 10;            // hierarchical only
    StopRule stop;
    int workers = 1;
    bool cache = true;

    enum class Init { urduphone, random };
    Init init = Init::urduphone;
    std::optional<std::size_t> random_count;  // default: distinct encodings
    std::uint64_t seed = 1;

    int min_context = 1;  // eval-word filter when a gold standard is given

    const CostMatrix* costs = nullptr;
    const EmbeddingTable* embeddings = nullptr;
};

struct PipelineResult {
    Vocabulary vocab;
    VocabEncodings encodings;
    std::vector<WordId> universe;  // the clustered words
    Clustering clustering;
    std::optional<EvalReport> report;
    double threshold_used = 0;
};

double default_threshold(std::size_t universe_size);

/// With a gold standard the clustered universe is the filtered evaluation
/// word set, mirroring evaluation practice; without one the whole
/// vocabulary is clustered.
PipelineResult run_pipeline(std::span<const Message> messages, const GoldStandard* gold,
                            const PipelineConfig& config, IterationObserver observer = {});

}  // namespace lexnorm
