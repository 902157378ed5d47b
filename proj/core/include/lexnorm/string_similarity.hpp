#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lexnorm/common.hpp"

namespace lexnorm {

/// Per character-pair substitution and per-character insertion/deletion
/// costs for the edit distance. Stored symmetric: substitution costs are
/// mirrored, insertion and deletion share one indel cost per character, and
/// the diagonal is zero. Costs are capped at 1 per operation.
class CostMatrix {
public:
    CostMatrix();  // unit costs

    static CostMatrix unit() { return CostMatrix(); }

    /// TSV `src<TAB>tgt<TAB>cost` with a literal `-` as the null symbol for
    /// insertion/deletion rows. Directed duplicates are averaged.
    static CostMatrix load_tsv(const std::string& path);
    void save_tsv(const std::string& path) const;
    void save_tsv(std::ostream& out) const;

    double sub(unsigned char a, unsigned char b) const {
        return a == b ? 0.0 : sub_[a][b];
    }
    double ins(unsigned char c) const { return indel_[c]; }
    double del(unsigned char c) const { return indel_[c]; }

    /// Sets both directions.
    void set_substitution(char a, char b, double cost);
    void set_indel(char c, double cost);

private:
    static constexpr int kAlphabet = 128;
    std::array<std::array<double, kAlphabet>, kAlphabet> sub_;
    std::array<double, kAlphabet> indel_;
};

/// Length of the longest common subsequence.
int lcs_length(std::string_view a, std::string_view b);

/// Minimal-cost alignment allowing insertion, deletion and substitution.
/// With unit costs this is the Levenshtein distance.
double edit_distance(std::string_view a, std::string_view b, const CostMatrix& costs);

/// lcs / (min length + edit distance), in [0,1]; 1 iff a == b.
/// Throws Error::Kind::domain on an empty token.
double string_similarity(std::string_view a, std::string_view b, const CostMatrix& costs);

/// The set of character pairs (w[k], w[k+2]); empty for words shorter
/// than three characters.
std::vector<std::uint16_t> skipgram_set(std::string_view word);

/// Jaccard coefficient of the 2-skip-1-gram sets; 0 when both are empty.
double skipgram_similarity(std::string_view a, std::string_view b);

}  // namespace lexnorm
