#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexnorm/clustering.hpp"
#include "lexnorm/common.hpp"

namespace lexnorm {

class Vocabulary;

/// Maps each word surface to its gold group id.
class GoldStandard {
public:
    /// TSV `surface<TAB>group_id`; group ids are interned in file order.
    static GoldStandard load_tsv(const std::string& path);
    void save_tsv(const std::string& path) const;

    void add(std::string_view surface, std::string_view group);
    std::optional<std::uint32_t> group(std::string_view surface) const;

    std::size_t word_count() const { return group_of_.size(); }
    std::size_t group_count() const { return group_names_.size(); }

private:
    std::unordered_map<std::string, std::uint32_t> group_of_;
    std::unordered_map<std::string, std::uint32_t> group_ids_;
    std::vector<std::string> group_names_;
};

struct EvalReport {
    double precision = 0;
    double recall = 0;
    double f_measure = 0;
    std::size_t predicted_clusters = 0;  // after restriction to the eval set
    std::size_t gold_clusters = 0;
    std::size_t singleton_clusters = 0;
    std::size_t evaluated_words = 0;
};

/// 1 iff both words share a predicted cluster and a gold group; C(w,w)=1.
/// Throws Error::Kind::domain when a word is missing from either side.
int correctness(WordId a, WordId b, const Clustering& pred, const GoldStandard& gold,
                const Vocabulary& vocab);

/// BCubed precision/recall/F averaged over eval_set; clusters and gold
/// groups are restricted to eval_set before any size enters a denominator.
/// Throws Error::Kind::empty_input on an empty eval set.
EvalReport bcubed_eval(const Clustering& pred, const GoldStandard& gold,
                       std::span<const WordId> eval_set, const Vocabulary& vocab);

/// Key/value text block, plus one machine-readable TSV row if tsv_row.
void write_report(std::ostream& out, const EvalReport& report, bool tsv_row = false);

}  // namespace lexnorm
