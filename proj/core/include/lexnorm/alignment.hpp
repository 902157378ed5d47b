#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lexnorm/common.hpp"
#include "lexnorm/lexvar.hpp"
#include "lexnorm/string_similarity.hpp"

namespace lexnorm {

class Vocabulary;

/// Unordered candidate pairs, stored once each with first < second.
using CandidatePairList = std::vector<std::pair<WordId, WordId>>;

/// For every word, its n most similar words (ties by id ascending); all
/// pairs inside each such neighbourhood are emitted, deduplicated. n is
/// clamped to the vocabulary size minus one.
CandidatePairList candidate_pairs(std::span<const WordId> words, const SimilarityFn& sim, int n);

/// Character alignment probabilities learned by EM. For each source
/// character, probabilities over target characters (plus the null symbol
/// for insertions) sum to one.
class CharAlignmentTable {
public:
    static constexpr int kNull = 128;  // index of the null symbol

    double prob(int src, int tgt) const { return table_[src][tgt]; }
    void set_prob(int src, int tgt, double p) { table_[src][tgt] = p; }

    bool row_present(int src) const { return row_present_[src]; }
    void mark_row(int src) { row_present_[src] = true; }

    /// Per-iteration corpus log-likelihood (non-decreasing).
    const std::vector<double>& log_likelihood() const { return log_likelihood_; }
    void push_log_likelihood(double value) { log_likelihood_.push_back(value); }

private:
    double table_[kNull + 1][kNull + 1] = {};
    bool row_present_[kNull + 1] = {};
    std::vector<double> log_likelihood_;
};

struct EmOptions {
    int iterations = 10;
    // Fixed diagonal position prior: target position m prefers source
    // positions l near m/M; null alignment keeps a constant share.
    double diagonal_strength = 4.0;
    double null_share = 0.08;
};

/// Lexical-translation EM over character sequences, each word treated as a
/// sentence of characters. Uniform initialisation; a fixed diagonal
/// position prior concentrates identical pairs onto matching characters.
/// Throws Error::Kind::empty_input on an empty pair list.
CharAlignmentTable em_align(const CandidatePairList& pairs, const Vocabulary& vocab,
                            const EmOptions& options = {});

/// Substitution cost |1 - P|, averaged over the two directions when both
/// rows were learned; null alignments populate the indel costs; the
/// diagonal stays zero.
CostMatrix costs_from_alignment(const CharAlignmentTable& table);

}  // namespace lexnorm
