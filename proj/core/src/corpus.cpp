#include "lexnorm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lexnorm/bcubed.hpp"

namespace lexnorm {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool is_alnum(char c) { return is_digit(c) || is_lower_alpha(c); }

void check_utf8(const std::string& line, std::size_t lineno) {
    std::size_t i = 0;
    const std::size_t n = line.size();
    auto fail = [&] {
        throw Error(Error::Kind::decode,
                    "invalid UTF-8 on line " + std::to_string(lineno));
    };
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(line[i]);
        std::size_t extra = 0;
        if (c < 0x80)
            extra = 0;
        else if ((c & 0xe0) == 0xc0)
            extra = 1;
        else if ((c & 0xf0) == 0xe0)
            extra = 2;
        else if ((c & 0xf8) == 0xf0)
            extra = 3;
        else
            fail();
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= n || (static_cast<unsigned char>(line[i + k]) & 0xc0) != 0x80) fail();
        }
        i += extra + 1;
    }
}

struct Piece {
    std::string text;
    bool frozen = false;  // placeholder token, exempt from later rewriting
};

// Groups repeated more than twice collapse to two repetitions. Repeat
// units longer than 32 characters are left alone.
std::string collapse_repeats(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        bool collapsed = false;
        const std::size_t remaining = n - i;
        const std::size_t max_unit = std::min<std::size_t>(32, remaining / 3);
        for (std::size_t unit = 1; unit <= max_unit; ++unit) {
            std::size_t reps = 1;
            while (i + (reps + 1) * unit <= n && s.compare(i + reps * unit, unit, s, i, unit) == 0)
                ++reps;
            if (reps > 2) {
                out.append(s, i, 2 * unit);
                i += reps * unit;
                collapsed = true;
                break;
            }
        }
        if (!collapsed) {
            out.push_back(s[i]);
            ++i;
        }
    }
    return out;
}

bool looks_like_url(std::string_view token) {
    if (token.substr(0, 4) == "www." && token.size() > 4) return true;
    auto pos = token.find("://");
    if (pos == std::string_view::npos || pos == 0) return false;
    for (std::size_t i = 0; i < pos; ++i) {
        char c = token[i];
        if (!is_lower_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
}

bool looks_like_email(std::string_view token) {
    // Tolerate trailing punctuation.
    while (!token.empty() && !is_alnum(token.back())) token.remove_suffix(1);
    auto at = token.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 >= token.size()) return false;
    if (token.find('@', at + 1) != std::string_view::npos) return false;
    for (char c : token.substr(0, at)) {
        if (!is_alnum(c) && c != '.' && c != '_' && c != '%' && c != '+' && c != '-') return false;
    }
    const std::string_view domain = token.substr(at + 1);
    auto dot = domain.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 >= domain.size()) return false;
    for (char c : domain) {
        if (!is_alnum(c) && c != '.' && c != '-') return false;
    }
    for (char c : domain.substr(dot + 1)) {
        if (!is_lower_alpha(c)) return false;
    }
    return true;
}

// Rewrites time / year / number digit patterns inside one whitespace token,
// appending text and placeholder pieces.
void rewrite_digit_patterns(std::string_view token, std::vector<Piece>& pieces) {
    std::string text;
    std::size_t i = 0;
    const std::size_t n = token.size();
    auto flush = [&] {
        if (!text.empty()) {
            pieces.push_back({std::move(text), false});
            text.clear();
        }
    };
    while (i < n) {
        if (!is_digit(token[i])) {
            text.push_back(token[i]);
            ++i;
            continue;
        }
        std::size_t run = i;
        while (run < n && is_digit(token[run])) ++run;
        // time: digit run, ':', digit run (optionally repeated)
        if (run < n && token[run] == ':' && run + 1 < n && is_digit(token[run + 1])) {
            std::size_t end = run + 1;
            while (end < n && (is_digit(token[end]) || (token[end] == ':' && end + 1 < n &&
                                                        is_digit(token[end + 1]))))
                ++end;
            flush();
            pieces.push_back({"<time>", true});
            i = end;
            continue;
        }
        const std::size_t len = run - i;
        const bool standalone = (i == 0 || !is_alnum(token[i - 1])) &&
                                (run == n || !is_alnum(token[run]));
        if (len == 4 && standalone) {
            const int value = (token[i] - '0') * 1000 + (token[i + 1] - '0') * 100 +
                              (token[i + 2] - '0') * 10 + (token[i + 3] - '0');
            if (value >= 1900 && value <= 2099) {
                flush();
                pieces.push_back({"<year>", true});
                i = run;
                continue;
            }
        }
        if (len >= 4) {
            flush();
            pieces.push_back({"<number>", true});
            i = run;
            continue;
        }
        text.append(token.substr(i, len));
        i = run;
    }
    flush();
}

}  // namespace

std::vector<std::string> preprocess_line(std::string_view line, const PreprocessOptions& options) {
    std::string lowered(line);
    for (char& c : lowered) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }

    // Whitespace tokens drive url/email detection and command removal;
    // digit patterns are rewritten inside tokens.
    std::vector<Piece> pieces;
    std::size_t i = 0;
    const std::size_t n = lowered.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(lowered[i]))) {
            pieces.push_back({" ", false});
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < n && !std::isspace(static_cast<unsigned char>(lowered[end]))) ++end;
        const std::string_view token(lowered.data() + i, end - i);
        i = end;

        bool is_command = false;
        for (const auto& pattern : options.command_patterns) {
            if (!pattern.empty() && token.substr(0, pattern.size()) == pattern) {
                is_command = true;
                break;
            }
        }
        if (is_command) {
            pieces.push_back({" ", false});
            continue;
        }
        if (token == "<url>" || token == "<email>" || token == "<time>" || token == "<year>" ||
            token == "<number>") {  // keeps preprocessing idempotent
            pieces.push_back({std::string(token), true});
        } else if (looks_like_url(token)) {
            pieces.push_back({"<url>", true});
        } else if (looks_like_email(token)) {
            pieces.push_back({"<email>", true});
        } else {
            rewrite_digit_patterns(token, pieces);
        }
        pieces.push_back({" ", false});
    }

    std::string joined;
    for (auto& piece : pieces) {
        if (piece.frozen) {
            joined.push_back(' ');
            joined += piece.text;
            joined.push_back(' ');
        } else {
            std::string collapsed = collapse_repeats(piece.text);
            for (char c : collapsed) joined.push_back(is_alnum(c) ? c : ' ');
        }
    }

    std::vector<std::string> tokens;
    std::istringstream split(joined);
    std::string token;
    while (split >> token) tokens.push_back(std::move(token));
    return tokens;
}

std::vector<Message> preprocess(std::span<const std::string> raw_lines,
                                const PreprocessOptions& options) {
    std::vector<Message> messages;
    std::size_t lineno = 0;
    for (const auto& line : raw_lines) {
        ++lineno;
        check_utf8(line, lineno);
        std::vector<std::string> tokens = preprocess_line(line, options);
        if (tokens.size() < 2) continue;  // single-token messages are dropped
        messages.push_back({std::move(tokens)});
    }
    return messages;
}

std::vector<Message> preprocess(std::istream& raw_lines, const PreprocessOptions& options) {
    std::vector<Message> messages;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(raw_lines, line)) {
        ++lineno;
        check_utf8(line, lineno);
        std::vector<std::string> tokens = preprocess_line(line, options);
        if (tokens.size() < 2) continue;
        messages.push_back({std::move(tokens)});
    }
    return messages;
}

WordId Vocabulary::add(std::string_view surface) {
    auto it = index_.find(std::string(surface));
    if (it != index_.end()) return it->second;
    const WordId id = static_cast<WordId>(entries_.size());
    WordEntry entry;
    entry.id = id;
    entry.surface = std::string(surface);
    index_.emplace(entry.surface, id);
    entries_.push_back(std::move(entry));
    return id;
}

std::optional<WordId> Vocabulary::find(std::string_view surface) const {
    auto it = index_.find(std::string(surface));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<WordId> Vocabulary::all_ids() const {
    std::vector<WordId> ids(entries_.size());
    for (WordId i = 0; i < entries_.size(); ++i) ids[i] = i;
    return ids;
}

Vocabulary build_vocabulary(std::span<const Message> messages) {
    Vocabulary vocab;
    for (const auto& message : messages) {
        for (const auto& token : message.tokens) {
            const WordId id = vocab.add(token);
            ++vocab[id].freq;
        }
    }
    return vocab;
}

void extract_contexts(std::span<const Message> messages, Vocabulary& vocab, int k,
                      ContextFeature feature,
                      const std::vector<std::uint32_t>* word_to_feature) {
    if (k < 1) throw Error(Error::Kind::config, "context size must be >= 1");
    if (feature != ContextFeature::word_id && word_to_feature == nullptr)
        throw Error(Error::Kind::config, "feature mapping required for non-word-id contexts");
    if (word_to_feature != nullptr && word_to_feature->size() < vocab.size())
        throw Error(Error::Kind::config, "feature mapping does not cover the vocabulary");

    auto feature_of = [&](WordId w) -> std::uint32_t {
        return feature == ContextFeature::word_id ? w : (*word_to_feature)[w];
    };

    std::unordered_map<std::uint64_t, std::uint32_t> prev_counts, next_counts;
    for (const auto& message : messages) {
        const std::size_t len = message.tokens.size();
        for (std::size_t p = 0; p < len; ++p) {
            auto word = vocab.find(message.tokens[p]);
            if (!word) continue;
            if (p > 0) {
                if (auto neighbor = vocab.find(message.tokens[p - 1])) {
                    ++prev_counts[(static_cast<std::uint64_t>(*word) << 32) | feature_of(*neighbor)];
                }
            }
            if (p + 1 < len) {
                if (auto neighbor = vocab.find(message.tokens[p + 1])) {
                    ++next_counts[(static_cast<std::uint64_t>(*word) << 32) | feature_of(*neighbor)];
                }
            }
        }
    }

    auto fill = [&](const std::unordered_map<std::uint64_t, std::uint32_t>& counts,
                    bool fill_prev) {
        std::vector<std::vector<ContextItem>> per_word(vocab.size());
        for (const auto& [key, count] : counts) {
            const WordId w = static_cast<WordId>(key >> 32);
            per_word[w].push_back({static_cast<std::uint32_t>(key & 0xffffffffu), count});
        }
        for (WordId w = 0; w < vocab.size(); ++w) {
            auto& items = per_word[w];
            std::sort(items.begin(), items.end(), [](const ContextItem& a, const ContextItem& b) {
                if (a.count != b.count) return a.count > b.count;
                return a.feature < b.feature;
            });
            if (items.size() > static_cast<std::size_t>(k)) items.resize(static_cast<std::size_t>(k));
            if (fill_prev)
                vocab[w].prev_ctx = std::move(items);
            else
                vocab[w].next_ctx = std::move(items);
        }
    };
    fill(prev_counts, true);
    fill(next_counts, false);
    vocab.set_context_k(k);
}

std::vector<WordId> filter_eval_words(const Vocabulary& vocab, const GoldStandard& gold,
                                      int min_ctx) {
    if (min_ctx < 0) throw Error(Error::Kind::config, "min context must be >= 0");
    if (min_ctx > vocab.context_k())
        throw Error(Error::Kind::config,
                    "min context exceeds the extracted context size; re-extract with larger k");
    std::vector<WordId> out;
    for (WordId w = 0; w < vocab.size(); ++w) {
        const WordEntry& entry = vocab[w];
        if (!gold.group(entry.surface)) continue;
        if (entry.prev_ctx.size() < static_cast<std::size_t>(min_ctx)) continue;
        if (entry.next_ctx.size() < static_cast<std::size_t>(min_ctx)) continue;
        out.push_back(w);
    }
    return out;
}

std::vector<std::string> load_pattern_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open pattern list: " + path);
    std::vector<std::string> patterns;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) patterns.push_back(line);
    }
    return patterns;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

void write_messages(std::ostream& out, std::span<const Message> messages) {
    for (const auto& message : messages) {
        for (std::size_t i = 0; i < message.tokens.size(); ++i) {
            if (i > 0) out << ' ';
            out << message.tokens[i];
        }
        out << '\n';
    }
}

}  // namespace lexnorm
