#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexnorm/common.hpp"

namespace lexnorm {

/// Rank-weighted similarity of two ranked context feature lists, averaged
/// over both directions. A match of the k-th feature of one list with the
/// l-th (lowest unconsumed) of the other scores K+1-max(k,l); directed
/// sums are normalised by 1+2+...+K. Identical full-length contexts score
/// exactly 1. Throws Error::Kind::config when a list is longer than K.
double context_similarity(std::span<const std::uint32_t> ctx_a,
                          std::span<const std::uint32_t> ctx_b, int K = 5);

/// Dense word vectors loaded from a text file: one line per word, surface
/// followed by whitespace separated reals; an optional count/dimension
/// header line is tolerated.
class EmbeddingTable {
public:
    static EmbeddingTable load(const std::string& path);

    void add(std::string_view surface, std::vector<double> vector);
    const std::vector<double>* find(std::string_view surface) const;

    std::size_t size() const { return vectors_.size(); }
    std::size_t dimension() const { return dimension_; }

private:
    std::unordered_map<std::string, std::vector<double>> vectors_;
    std::size_t dimension_ = 0;
};

/// Cosine similarity clamped to [0,1]. Throws Error::Kind::domain when a
/// word is missing; callers that can renormalise should check first.
double embedding_cosine(std::string_view a, std::string_view b, const EmbeddingTable& table);

}  // namespace lexnorm
