#include "lexnorm/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lexnorm/corpus.hpp"

namespace lexnorm {

CandidatePairList candidate_pairs(std::span<const WordId> words, const SimilarityFn& sim, int n) {
    if (n < 1) throw Error(Error::Kind::config, "neighbourhood size must be >= 1");
    std::vector<WordId> ordered(words.begin(), words.end());
    std::sort(ordered.begin(), ordered.end());
    if (ordered.size() < 2) return {};
    const std::size_t limit =
        std::min<std::size_t>(static_cast<std::size_t>(n), ordered.size() - 1);

    std::set<std::pair<WordId, WordId>> emitted;
    std::vector<std::pair<double, WordId>> row;
    std::vector<WordId> neighbourhood;
    for (WordId w : ordered) {
        row.clear();
        for (WordId other : ordered) {
            if (other == w) continue;
            row.emplace_back(sim(w, other), other);
        }
        std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(limit), row.end(),
                          [](const auto& a, const auto& b) {
                              if (a.first != b.first) return a.first > b.first;
                              return a.second < b.second;
                          });
        neighbourhood.clear();
        neighbourhood.push_back(w);
        for (std::size_t i = 0; i < limit; ++i) neighbourhood.push_back(row[i].second);
        for (std::size_t i = 0; i < neighbourhood.size(); ++i) {
            for (std::size_t j = i + 1; j < neighbourhood.size(); ++j) {
                const WordId a = std::min(neighbourhood[i], neighbourhood[j]);
                const WordId b = std::max(neighbourhood[i], neighbourhood[j]);
                emitted.emplace(a, b);
            }
        }
    }
    return CandidatePairList(emitted.begin(), emitted.end());
}

CharAlignmentTable em_align(const CandidatePairList& pairs, const Vocabulary& vocab,
                            const EmOptions& options) {
    if (pairs.empty()) throw Error(Error::Kind::empty_input, "no candidate pairs to align");
    if (options.iterations < 1) throw Error(Error::Kind::config, "EM needs at least one iteration");

    constexpr int kNull = CharAlignmentTable::kNull;

    // Observed alphabets. Pairs run lower id -> higher id.
    std::vector<bool> src_seen(kNull + 1, false), tgt_seen(kNull + 1, false);
    std::vector<int> tgt_chars;
    for (const auto& [a, b] : pairs) {
        for (char c : vocab[a].surface) src_seen[static_cast<unsigned char>(c) & 0x7f] = true;
        for (char c : vocab[b].surface) {
            const int idx = static_cast<unsigned char>(c) & 0x7f;
            if (!tgt_seen[idx]) {
                tgt_seen[idx] = true;
                tgt_chars.push_back(idx);
            }
        }
    }
    std::sort(tgt_chars.begin(), tgt_chars.end());
    src_seen[kNull] = true;

    CharAlignmentTable table;
    const double uniform = 1.0 / static_cast<double>(tgt_chars.size());
    for (int s = 0; s <= kNull; ++s) {
        if (!src_seen[s]) continue;
        table.mark_row(s);
        for (int t : tgt_chars) table.set_prob(s, t, uniform);
    }

    const double lambda = options.diagonal_strength;
    const double p0 = options.null_share;

    for (int iter = 0; iter < options.iterations; ++iter) {
        std::vector<std::vector<double>> counts(kNull + 1, std::vector<double>(kNull + 1, 0.0));
        double log_likelihood = 0;

        for (const auto& [a, b] : pairs) {
            const std::string& src = vocab[a].surface;
            const std::string& tgt = vocab[b].surface;
            const std::size_t L = src.size(), M = tgt.size();
            if (L == 0 || M == 0) continue;

            for (std::size_t m = 0; m < M; ++m) {
                const int tc = static_cast<unsigned char>(tgt[m]) & 0x7f;
                const double mpos = static_cast<double>(m + 1) / static_cast<double>(M);

                double z = 0;
                for (std::size_t l = 0; l < L; ++l) {
                    const double lpos = static_cast<double>(l + 1) / static_cast<double>(L);
                    z += std::exp(-lambda * std::abs(mpos - lpos));
                }

                double denom = p0 * table.prob(kNull, tc);
                for (std::size_t l = 0; l < L; ++l) {
                    const int sc = static_cast<unsigned char>(src[l]) & 0x7f;
                    const double lpos = static_cast<double>(l + 1) / static_cast<double>(L);
                    const double prior = (1.0 - p0) * std::exp(-lambda * std::abs(mpos - lpos)) / z;
                    denom += prior * table.prob(sc, tc);
                }
                if (denom <= 0) continue;
                log_likelihood += std::log(denom);

                counts[kNull][tc] += p0 * table.prob(kNull, tc) / denom;
                for (std::size_t l = 0; l < L; ++l) {
                    const int sc = static_cast<unsigned char>(src[l]) & 0x7f;
                    const double lpos = static_cast<double>(l + 1) / static_cast<double>(L);
                    const double prior = (1.0 - p0) * std::exp(-lambda * std::abs(mpos - lpos)) / z;
                    counts[sc][tc] += prior * table.prob(sc, tc) / denom;
                }
            }
        }

        for (int s = 0; s <= kNull; ++s) {
            if (!table.row_present(s)) continue;
            double total = 0;
            for (int t : tgt_chars) total += counts[s][t];
            if (total <= 0) continue;  // row unseen this round keeps its values
            for (int t : tgt_chars) table.set_prob(s, t, counts[s][t] / total);
        }
        table.push_log_likelihood(log_likelihood);
    }
    return table;
}

CostMatrix costs_from_alignment(const CharAlignmentTable& table) {
    constexpr int kNull = CharAlignmentTable::kNull;
    CostMatrix costs;
    for (int a = 0; a < kNull; ++a) {
        for (int b = a + 1; b < kNull; ++b) {
            const bool ab = table.row_present(a);
            const bool ba = table.row_present(b);
            double cost;
            if (ab && ba)
                cost = (std::abs(1.0 - table.prob(a, b)) + std::abs(1.0 - table.prob(b, a))) / 2.0;
            else if (ab)
                cost = std::abs(1.0 - table.prob(a, b));
            else if (ba)
                cost = std::abs(1.0 - table.prob(b, a));
            else
                continue;
            costs.set_substitution(static_cast<char>(a), static_cast<char>(b), cost);
        }
    }
    if (table.row_present(kNull)) {
        for (int c = 0; c < kNull; ++c) {
            const double p = table.prob(kNull, c);
            if (p > 0) costs.set_indel(static_cast<char>(c), std::abs(1.0 - p));
        }
    }
    return costs;
}

}  // namespace lexnorm
