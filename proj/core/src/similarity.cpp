#include "lexnorm/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lexnorm {

std::string feature_name(Feature f) {
    switch (f) {
        case Feature::phonetic: return "phonetic";
        case Feature::string_sim: return "string";
        case Feature::context_word: return "context-word";
        case Feature::context_phone: return "context-phone";
        case Feature::embedding: return "embedding";
        case Feature::skipgram: return "skipgram";
    }
    return "?";
}

FeatureSet parse_feature_set(const std::string& csv) {
    FeatureSet set;
    std::istringstream in(csv);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) continue;
        bool known = false;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            if (name == feature_name(static_cast<Feature>(i))) {
                set.set(static_cast<Feature>(i));
                known = true;
                break;
            }
        }
        if (!known) throw Error(Error::Kind::config, "unknown feature: " + name);
    }
    if (!set.any()) throw Error(Error::Kind::config, "no features enabled");
    return set;
}

SimilarityEngine::SimilarityEngine(const Vocabulary& vocab, Config config,
                                   const VocabEncodings* encodings, const CostMatrix* costs,
                                   const Vocabulary* phone_contexts,
                                   const EmbeddingTable* embeddings)
    : vocab_(vocab),
      config_(config),
      encodings_(encodings),
      costs_(costs != nullptr ? *costs : CostMatrix::unit()),
      embeddings_(embeddings) {
    bool any_positive = false;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const Feature f = static_cast<Feature>(i);
        if (config_.weights[f] < 0)
            throw Error(Error::Kind::config, "negative weight for " + feature_name(f));
        if (config_.features.has(f) && config_.weights[f] > 0) any_positive = true;
    }
    if (!config_.features.any()) throw Error(Error::Kind::config, "no features enabled");
    if (!any_positive)
        throw Error(Error::Kind::config, "at least one enabled feature needs a positive weight");

    if (config_.features.has(Feature::phonetic) || config_.features.has(Feature::context_phone)) {
        if (encodings_ == nullptr)
            throw Error(Error::Kind::config, "phonetic features need vocabulary encodings");
    }
    if (config_.features.has(Feature::context_word)) word_ctx_ = build_lists(vocab);
    if (config_.features.has(Feature::context_phone)) {
        if (phone_contexts == nullptr)
            throw Error(Error::Kind::config,
                        "context-phone needs contexts extracted over encoding ids");
        phone_ctx_ = build_lists(*phone_contexts);
    }
    if (config_.features.has(Feature::embedding) && embeddings_ == nullptr)
        throw Error(Error::Kind::config, "embedding feature needs an embedding table");

    if (config_.features.has(Feature::skipgram)) {
        grams_.resize(vocab.size());
        for (WordId w = 0; w < vocab.size(); ++w) grams_[w] = skipgram_set(vocab[w].surface);
    }
    if (config_.features.has(Feature::embedding)) {
        vectors_.resize(vocab.size(), nullptr);
        for (WordId w = 0; w < vocab.size(); ++w) vectors_[w] = embeddings_->find(vocab[w].surface);
    }
}

SimilarityEngine::ContextLists SimilarityEngine::build_lists(const Vocabulary& source) const {
    if (source.context_k() == 0)
        throw Error(Error::Kind::config, "context feature enabled but no contexts extracted");
    if (source.context_k() > config_.context_k)
        throw Error(Error::Kind::config, "extracted context lists exceed the configured K");
    ContextLists lists;
    lists.prev.resize(source.size());
    lists.next.resize(source.size());
    for (WordId w = 0; w < source.size(); ++w) {
        for (const ContextItem& item : source[w].prev_ctx) lists.prev[w].push_back(item.feature);
        for (const ContextItem& item : source[w].next_ctx) lists.next[w].push_back(item.feature);
    }
    return lists;
}

double SimilarityEngine::similarity(WordId a, WordId b) const {
    double sum = 0;
    double weight_total = 0;
    const Config& cfg = config_;

    if (cfg.features.has(Feature::phonetic)) {
        if (encodings_->encodable[a] && encodings_->encodable[b]) {
            const double value = encodings_->ids[a] == encodings_->ids[b] ? 1.0 : 0.0;
            sum += cfg.weights[Feature::phonetic] * value;
            weight_total += cfg.weights[Feature::phonetic];
        }
    }
    if (cfg.features.has(Feature::string_sim)) {
        const double value = string_similarity(vocab_[a].surface, vocab_[b].surface, costs_);
        sum += cfg.weights[Feature::string_sim] * value;
        weight_total += cfg.weights[Feature::string_sim];
    }
    if (cfg.features.has(Feature::context_word)) {
        const double value =
            0.5 * (context_similarity(word_ctx_.prev[a], word_ctx_.prev[b], cfg.context_k) +
                   context_similarity(word_ctx_.next[a], word_ctx_.next[b], cfg.context_k));
        sum += cfg.weights[Feature::context_word] * value;
        weight_total += cfg.weights[Feature::context_word];
    }
    if (cfg.features.has(Feature::context_phone)) {
        const double value =
            0.5 * (context_similarity(phone_ctx_.prev[a], phone_ctx_.prev[b], cfg.context_k) +
                   context_similarity(phone_ctx_.next[a], phone_ctx_.next[b], cfg.context_k));
        sum += cfg.weights[Feature::context_phone] * value;
        weight_total += cfg.weights[Feature::context_phone];
    }
    if (cfg.features.has(Feature::embedding)) {
        const auto* va = vectors_[a];
        const auto* vb = vectors_[b];
        if (va != nullptr && vb != nullptr) {
            double dot = 0, na = 0, nb = 0;
            for (std::size_t i = 0; i < va->size(); ++i) {
                dot += (*va)[i] * (*vb)[i];
                na += (*va)[i] * (*va)[i];
                nb += (*vb)[i] * (*vb)[i];
            }
            double value = 0;
            if (na > 0 && nb > 0) value = dot / (std::sqrt(na) * std::sqrt(nb));
            value = std::max(0.0, std::min(1.0, value));
            sum += cfg.weights[Feature::embedding] * value;
            weight_total += cfg.weights[Feature::embedding];
        }
    }
    if (cfg.features.has(Feature::skipgram)) {
        const auto& ga = grams_[a];
        const auto& gb = grams_[b];
        double value = 0;
        if (!ga.empty() || !gb.empty()) {
            std::size_t inter = 0, i = 0, j = 0;
            while (i < ga.size() && j < gb.size()) {
                if (ga[i] == gb[j]) {
                    ++inter;
                    ++i;
                    ++j;
                } else if (ga[i] < gb[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
            value = static_cast<double>(inter) /
                    static_cast<double>(ga.size() + gb.size() - inter);
        }
        sum += cfg.weights[Feature::skipgram] * value;
        weight_total += cfg.weights[Feature::skipgram];
    }

    if (weight_total == 0)
        throw Error(Error::Kind::undefined_similarity,
                    "no weighted feature available for pair (" + vocab_[a].surface + ", " +
                        vocab_[b].surface + ")");
    return sum / weight_total;
}

}  // namespace lexnorm
