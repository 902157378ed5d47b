#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexnorm/common.hpp"
#include "lexnorm/context_similarity.hpp"
#include "lexnorm/corpus.hpp"
#include "lexnorm/phonetic.hpp"
#include "lexnorm/string_similarity.hpp"

namespace lexnorm {

enum class Feature : std::size_t {
    phonetic = 0,      // encodings identical
    string_sim = 1,    // lcs / (min length + edit distance)
    context_word = 2,  // ranked contexts over word ids
    context_phone = 3, // ranked contexts over encoding ids
    embedding = 4,     // cosine of word vectors
    skipgram = 5,      // 2-skip-1-gram Jaccard
};
constexpr std::size_t kFeatureCount = 6;

class FeatureSet {
public:
    FeatureSet() = default;
    FeatureSet(std::initializer_list<Feature> features) {
        for (Feature f : features) set(f);
    }
    void set(Feature f, bool on = true) { bits_.set(static_cast<std::size_t>(f), on); }
    bool has(Feature f) const { return bits_.test(static_cast<std::size_t>(f)); }
    bool any() const { return bits_.any(); }

private:
    std::bitset<kFeatureCount> bits_;
};

struct FeatureWeights {
    std::array<double, kFeatureCount> values{1, 1, 1, 1, 1, 1};

    double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
    double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
};

FeatureSet parse_feature_set(const std::string& csv);       // "phonetic,string,..."
std::string feature_name(Feature f);

/// Weighted combination over the enabled features that are available for a
/// pair; an unavailable feature (missing embedding, unencodable word) is
/// dropped from numerator and denominator. A context feature's value is
/// the mean of its previous- and next-context scores.
class SimilarityEngine {
public:
    struct Config {
        FeatureSet features;
        FeatureWeights weights;
        int context_k = 5;
    };

    /// References must outlive the engine. phone_contexts supplies
    /// encoding-id context lists when Feature::context_phone is enabled
    /// (a Vocabulary whose contexts were extracted as urduphone_id).
    SimilarityEngine(const Vocabulary& vocab, Config config,
                     const VocabEncodings* encodings = nullptr,
                     const CostMatrix* costs = nullptr,
                     const Vocabulary* phone_contexts = nullptr,
                     const EmbeddingTable* embeddings = nullptr);

    double operator()(WordId a, WordId b) const { return similarity(a, b); }
    double similarity(WordId a, WordId b) const;

    const Config& config() const { return config_; }

private:
    struct ContextLists {
        std::vector<std::vector<std::uint32_t>> prev, next;
    };
    ContextLists build_lists(const Vocabulary& source) const;

    const Vocabulary& vocab_;
    Config config_;
    const VocabEncodings* encodings_;
    CostMatrix costs_;
    const EmbeddingTable* embeddings_;
    ContextLists word_ctx_;
    ContextLists phone_ctx_;
    std::vector<std::vector<std::uint16_t>> grams_;
    std::vector<const std::vector<double>*> vectors_;
};

/// Per word pair memo used inside one clustering iteration. Results are
/// bit-identical with and without it: the engine is a pure function.
class PairCache {
public:
    explicit PairCache(std::size_t max_entries = 1 << 22) : max_entries_(max_entries) {}

    template <typename Fn>
    double get(WordId a, WordId b, const Fn& sim) {
        const std::uint64_t key = a < b
            ? (static_cast<std::uint64_t>(a) << 32) | b
            : (static_cast<std::uint64_t>(b) << 32) | a;
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        if (map_.size() >= max_entries_) map_.clear();
        const double value = sim(a, b);
        map_.emplace(key, value);
        return value;
    }

    void clear() { map_.clear(); }

private:
    std::size_t max_entries_;
    std::unordered_map<std::uint64_t, double> map_;
};

}  // namespace lexnorm
