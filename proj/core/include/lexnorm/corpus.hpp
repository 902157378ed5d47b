#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexnorm/common.hpp"

namespace lexnorm {

class GoldStandard;

/// One message after preprocessing: lowercase tokens, none empty, none
/// containing whitespace.
struct Message {
    std::vector<std::string> tokens;
};

struct ContextItem {
    std::uint32_t feature = 0;
    std::uint32_t count = 0;
};

struct WordEntry {
    WordId id = kInvalidWord;
    std::string surface;
    std::uint32_t freq = 0;
    // Ranked by count descending, ties by feature id ascending; at most the
    // configured context size k.
    std::vector<ContextItem> prev_ctx;
    std::vector<ContextItem> next_ctx;
};

class Vocabulary {
public:
    WordId add(std::string_view surface);  // returns existing id if known
    std::optional<WordId> find(std::string_view surface) const;

    std::size_t size() const { return entries_.size(); }
    const WordEntry& operator[](WordId id) const { return entries_[id]; }
    WordEntry& operator[](WordId id) { return entries_[id]; }

    std::vector<WordId> all_ids() const;

    /// Context size used by the last extract_contexts call (0 = none yet).
    int context_k() const { return context_k_; }
    void set_context_k(int k) { context_k_ = k; }

private:
    std::vector<WordEntry> entries_;
    std::unordered_map<std::string, WordId> index_;
    int context_k_ = 0;
};

struct PreprocessOptions {
    // Tokens whose lowercase form starts with one of these literal patterns
    // are removed before any other step (group-messaging commands).
    std::vector<std::string> command_patterns;
};

/// Cleans one raw message per line: placeholder substitution for urls,
/// emails, times, years and long digit runs; repeated-group collapsing;
/// punctuation stripping; lowercasing. Messages left with fewer than two
/// tokens are dropped. Throws Error::Kind::decode on invalid UTF-8,
/// naming the line number.
std::vector<Message> preprocess(std::istream& raw_lines, const PreprocessOptions& options = {});
std::vector<Message> preprocess(std::span<const std::string> raw_lines,
                                const PreprocessOptions& options = {});

/// Single-line helper used by tests and the preprocess pipeline.
/// Returns the cleaned tokens for one raw line (may be empty or dropped
/// later by the two-token rule, which preprocess applies).
std::vector<std::string> preprocess_line(std::string_view line,
                                         const PreprocessOptions& options = {});

/// One entry per distinct surface, ids in first-seen order, freq = total
/// occurrences. Throws Error::Kind::empty_input on an empty corpus.
Vocabulary build_vocabulary(std::span<const Message> messages);

enum class ContextFeature { word_id, urduphone_id, cluster_id };

/// Fills prev/next context lists with the top-k co-occurring features.
/// Sentence-boundary neighbours are skipped. For urduphone_id and
/// cluster_id the caller supplies word_to_feature, a per-word-id feature
/// id (e.g. interned encoding ids or initial cluster indices).
void extract_contexts(std::span<const Message> messages, Vocabulary& vocab, int k,
                      ContextFeature feature,
                      const std::vector<std::uint32_t>* word_to_feature = nullptr);

/// Ids present in the gold standard with at least min_ctx distinct prev and
/// next context features. Requires min_ctx not to exceed the context size
/// used by extract_contexts; list lengths are exact distinct counts below k.
std::vector<WordId> filter_eval_words(const Vocabulary& vocab, const GoldStandard& gold,
                                      int min_ctx);

/// Loads a command-pattern list: plain text, one pattern per line.
std::vector<std::string> load_pattern_list(const std::string& path);

std::vector<std::string> read_lines(const std::string& path);
void write_messages(std::ostream& out, std::span<const Message> messages);

}  // namespace lexnorm
