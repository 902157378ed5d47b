#include "lexnorm/pipeline.hpp"

#include <algorithm>
#include <unordered_set>

namespace lexnorm {

double default_threshold(std::size_t universe_size) {
    return universe_size < 20000 ? 0.3 : 0.4;
}

PipelineResult run_pipeline(std::span<const Message> messages, const GoldStandard* gold,
                            const PipelineConfig& config, IterationObserver observer) {
    PipelineResult result;
    result.vocab = build_vocabulary(messages);
    if (result.vocab.size() == 0)
        throw Error(Error::Kind::empty_input, "clustering: corpus produced an empty vocabulary");

    const UrduPhoneEncoder encoder(config.encoder, config.code_table);
    result.encodings = encode_vocabulary(result.vocab, encoder);

    // Context channel over word ids (or initial-cluster ids).
    if (config.word_channel == ContextFeature::cluster_id) {
        const auto all = result.vocab.all_ids();
        const Clustering initial = group_by_encoding(all, result.encodings);
        std::vector<std::uint32_t> cluster_ids(result.vocab.size(), 0);
        for (WordId w = 0; w < result.vocab.size(); ++w)
            cluster_ids[w] = static_cast<std::uint32_t>(initial.cluster_of(w));
        extract_contexts(messages, result.vocab, config.context_k, ContextFeature::cluster_id,
                         &cluster_ids);
    } else if (config.word_channel == ContextFeature::urduphone_id) {
        extract_contexts(messages, result.vocab, config.context_k, ContextFeature::urduphone_id,
                         &result.encodings.ids);
    } else {
        extract_contexts(messages, result.vocab, config.context_k, ContextFeature::word_id);
    }

    // Second channel: contexts over encoding ids.
    std::unique_ptr<Vocabulary> phone_vocab;
    if (config.features.has(Feature::context_phone)) {
        phone_vocab = std::make_unique<Vocabulary>(result.vocab);
        extract_contexts(messages, *phone_vocab, config.context_k, ContextFeature::urduphone_id,
                         &result.encodings.ids);
    }

    if (gold != nullptr) {
        result.universe = filter_eval_words(result.vocab, *gold, config.min_context);
        if (result.universe.empty())
            throw Error(Error::Kind::empty_input,
                        "clustering: no evaluation words survive the gold/context filter");
    } else {
        result.universe = result.vocab.all_ids();
    }

    Clustering init;
    if (config.init == PipelineConfig::Init::urduphone) {
        init = group_by_encoding(result.universe, result.encodings);
    } else {
        std::size_t count = 0;
        if (config.random_count) {
            count = *config.random_count;
        } else {
            std::unordered_set<std::uint32_t> distinct;
            for (WordId w : result.universe) distinct.insert(result.encodings.ids[w]);
            count = distinct.size();
        }
        init = init_random(result.universe, count, config.seed);
    }

    SimilarityEngine::Config engine_config;
    engine_config.features = config.features;
    engine_config.weights = config.weights;
    engine_config.context_k = config.context_k;
    const SimilarityEngine engine(result.vocab, engine_config, &result.encodings, config.costs,
                                  phone_vocab.get(), config.embeddings);
    const SimilarityFn sim = [&engine](WordId a, WordId b) { return engine.similarity(a, b); };

    result.threshold_used = config.threshold.value_or(default_threshold(result.universe.size()));

    if (config.algorithm == PipelineConfig::Algorithm::lexvar) {
        LexVarOptions options;
        options.threshold = result.threshold_used;
        options.stop = config.stop;
        options.workers = config.workers;
        options.cache = config.cache;
        options.observer = std::move(observer);
        result.clustering = lexvar_cluster(result.universe, sim, std::move(init), options);
    } else {
        HierarchicalOptions options;
        options.threshold = result.threshold_used;
        options.neighborhood = config.neighborhood;
        options.stop = config.stop;
        options.observer = std::move(observer);
        result.clustering = hierarchical_cluster(result.universe, sim, options);
    }

    if (gold != nullptr)
        result.report = bcubed_eval(result.clustering, *gold, result.universe, result.vocab);
    return result;
}

}  // namespace lexnorm
