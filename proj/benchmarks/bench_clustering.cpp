#include <benchmark/benchmark.h>

#include "lexnorm/pipeline.hpp"
#include "lexnorm/synth.hpp"

using namespace lexnorm;

namespace {

struct BenchFixture {
    SynthData data;
    std::vector<Message> messages;
    Vocabulary vocab;
    VocabEncodings encodings;
    std::vector<WordId> eval_words;

    explicit BenchFixture(int groups) {
        SynthOptions options;
        options.seed = 21;
        options.groups = groups;
        data = synth_corpus(options);
        messages = preprocess(data.lines);
        vocab = build_vocabulary(messages);
        extract_contexts(messages, vocab, 5, ContextFeature::word_id);
        encodings = encode_vocabulary(vocab, UrduPhoneEncoder());
        eval_words = filter_eval_words(vocab, data.gold, 1);
    }
};

}  // namespace

static void BM_SimilarityEngine(benchmark::State& state) {
    static const BenchFixture fx(120);
    SimilarityEngine::Config config;
    config.features = {Feature::phonetic, Feature::string_sim, Feature::context_word};
    const SimilarityEngine engine(fx.vocab, config, &fx.encodings);
    const std::size_t n = fx.eval_words.size();
    std::size_t i = 0, j = n / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            engine.similarity(fx.eval_words[i % n], fx.eval_words[j % n]));
        ++i;
        j += 3;
    }
}
BENCHMARK(BM_SimilarityEngine);

static void BM_LexVarIteration(benchmark::State& state) {
    static const BenchFixture fx(static_cast<int>(state.range(0)));
    SimilarityEngine::Config config;
    config.features = {Feature::phonetic, Feature::string_sim, Feature::context_word};
    const SimilarityEngine engine(fx.vocab, config, &fx.encodings);
    const SimilarityFn sim = [&engine](WordId a, WordId b) { return engine.similarity(a, b); };

    for (auto _ : state) {
        LexVarOptions options;
        options.threshold = 0.5;
        options.stop.max_iters = 1;  // cost of a single assignment round
        const Clustering init = group_by_encoding(fx.eval_words, fx.encodings);
        benchmark::DoNotOptimize(lexvar_cluster(fx.eval_words, sim, init, options));
    }
}
BENCHMARK(BM_LexVarIteration)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_HierarchicalSetup(benchmark::State& state) {
    static const BenchFixture fx(60);
    SimilarityEngine::Config config;
    config.features = {Feature::phonetic, Feature::string_sim, Feature::context_word};
    const SimilarityEngine engine(fx.vocab, config, &fx.encodings);
    const SimilarityFn sim = [&engine](WordId a, WordId b) { return engine.similarity(a, b); };

    for (auto _ : state) {
        HierarchicalOptions options;
        options.threshold = 0.5;
        options.neighborhood = 10;
        benchmark::DoNotOptimize(hierarchical_cluster(fx.eval_words, sim, options));
    }
}
BENCHMARK(BM_HierarchicalSetup)->Unit(benchmark::kMillisecond);
