#include "lexnorm/phonetic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "lexnorm/corpus.hpp"

namespace lexnorm {

namespace {

std::uint16_t digraph_key(char a, char b) {
    return static_cast<std::uint16_t>((static_cast<unsigned char>(a) << 8) |
                                      static_cast<unsigned char>(b));
}

std::string strip_non_alpha(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalpha(u)) out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

}  // namespace

CodeTable CodeTable::roman_urdu() {
    CodeTable t;
    t.single_.fill(-1);
    const std::pair<const char*, int> groups[] = {
        {"sc", 1}, {"t", 2},  {"zx", 3}, {"d", 5},  {"f", 6},  {"qk", 7},
        {"j", 8},  {"b", 9},  {"p", 10}, {"n", 11}, {"m", 12}, {"g", 13},
        {"r", 14}, {"wv", 15}, {"l", 17}, {"h", 19},
    };
    for (const auto& [chars, code] : groups) {
        for (const char* p = chars; *p; ++p) t.set_code(*p, code);
    }
    const std::pair<const char*, int> digraphs[] = {
        {"sh", 1},  {"ch", 4},  {"zh", 16}, {"kh", 18}, {"gh", 20}, {"bh", 21},
        {"ph", 22}, {"jh", 23}, {"th", 24}, {"dh", 25}, {"rh", 26},
    };
    for (const auto& [pair, code] : digraphs) t.set_digraph(pair[0], pair[1], code);
    return t;
}

int CodeTable::code(char c) const {
    if (c < 'a' || c > 'z') return -1;
    return single_[static_cast<std::size_t>(c - 'a')];
}

int CodeTable::digraph_code(char a, char b) const {
    auto it = digraphs_.find(digraph_key(a, b));
    return it == digraphs_.end() ? -1 : it->second;
}

void CodeTable::set_code(char c, int code) {
    if (c < 'a' || c > 'z')
        throw Error(Error::Kind::config, "code table entries must be lowercase letters");
    if (is_vowel(c)) throw Error(Error::Kind::config, std::string("vowels carry no code: ") + c);
    single_[static_cast<std::size_t>(c - 'a')] = code;
}

void CodeTable::set_digraph(char a, char b, int code) {
    if (a < 'a' || a > 'z' || b < 'a' || b > 'z')
        throw Error(Error::Kind::config, "digraph entries must be lowercase letters");
    digraphs_[digraph_key(a, b)] = code;
}

CodeTable CodeTable::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open code table: " + path);
    CodeTable t;
    t.single_.fill(-1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(Error::Kind::io,
                        "code table line " + std::to_string(lineno) + ": expected char<TAB>code");
        std::string chars = line.substr(0, tab);
        int code = 0;
        try {
            code = std::stoi(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw Error(Error::Kind::io, "code table line " + std::to_string(lineno) + ": bad code");
        }
        if (chars.size() == 1) {
            t.set_code(chars[0], code);
        } else if (chars.size() == 2) {
            t.set_digraph(chars[0], chars[1], code);
        } else {
            throw Error(Error::Kind::io,
                        "code table line " + std::to_string(lineno) + ": key must be 1 or 2 letters");
        }
    }
    return t;
}

void CodeTable::save_tsv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::io, "cannot write code table: " + path);
    for (char c = 'a'; c <= 'z'; ++c) {
        int v = code(c);
        if (v >= 0) out << c << '\t' << v << '\n';
    }
    std::vector<std::pair<std::uint16_t, int>> sorted(digraphs_.begin(), digraphs_.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, v] : sorted) {
        out << static_cast<char>(key >> 8) << static_cast<char>(key & 0xff) << '\t' << v << '\n';
    }
}

UrduPhoneEncoder::UrduPhoneEncoder(UrduPhoneOptions options, CodeTable table)
    : options_(options), table_(std::move(table)) {
    if (options_.length < 4 || options_.length > 8)
        throw Error(Error::Kind::config, "encoding length must be in 4..8");
}

std::string UrduPhoneEncoder::encode(std::string_view word) const {
    const std::string w = strip_non_alpha(word);
    if (w.empty())
        throw Error(Error::Kind::unencodable,
                    "no alphabetic characters to encode: \"" + std::string(word) + "\"");

    const std::size_t max_codes = static_cast<std::size_t>(options_.length) - 1;
    std::vector<int> codes;
    codes.reserve(max_codes);

    for (std::size_t i = 1; i < w.size() && codes.size() < max_codes;) {
        const char c = w[i];
        if (i + 1 < w.size() && c == w[i + 1]) {  // adjacent duplicate
            ++i;
            continue;
        }
        if (CodeTable::is_vowel(c)) {
            ++i;
            continue;
        }
        if (options_.h_omission && c == 'h' && !CodeTable::is_vowel(w[i - 1])) {
            ++i;
            continue;
        }
        if (options_.digraphs && i + 1 < w.size()) {
            int dc = table_.digraph_code(c, w[i + 1]);
            if (dc >= 0) {
                codes.push_back(dc);
                i += 2;
                continue;
            }
        }
        codes.push_back(std::max(table_.code(c), 0));
        ++i;
    }
    while (codes.size() < max_codes) codes.push_back(0);

    std::string out(1, static_cast<char>(std::toupper(static_cast<unsigned char>(w[0]))));
    for (int code : codes) {
        out.push_back('_');
        out += std::to_string(code);
    }
    return out;
}

std::string soundex_encode(std::string_view word) {
    const std::string w = strip_non_alpha(word);
    if (w.empty())
        throw Error(Error::Kind::unencodable,
                    "no alphabetic characters to encode: \"" + std::string(word) + "\"");

    auto code_of = [](char c) -> int {
        switch (c) {
            case 'b': case 'f': case 'p': case 'v': return 1;
            case 'c': case 'g': case 'j': case 'k':
            case 'q': case 's': case 'x': case 'z': return 2;
            case 'd': case 't': return 3;
            case 'l': return 4;
            case 'm': case 'n': return 5;
            case 'r': return 6;
            case 'h': case 'w': return -1;  // transparent
            default: return 0;              // vowels separate runs
        }
    };

    std::vector<int> digits;
    int prev = code_of(w[0]);
    for (std::size_t i = 1; i < w.size() && digits.size() < 3; ++i) {
        int d = code_of(w[i]);
        if (d < 0) continue;  // h and w do not break a run
        if (d == 0) {
            prev = 0;
            continue;
        }
        if (d != prev) digits.push_back(d);
        prev = d;
    }
    while (digits.size() < 3) digits.push_back(0);

    std::string out(1, static_cast<char>(std::toupper(static_cast<unsigned char>(w[0]))));
    for (int d : digits) {
        out.push_back('_');
        out += std::to_string(d);
    }
    return out;
}

int phonetic_similarity(std::string_view a, std::string_view b, const UrduPhoneEncoder& encoder) {
    return encoder.encode(a) == encoder.encode(b) ? 1 : 0;
}

namespace {

VocabEncodings intern_encodings(const Vocabulary& vocab,
                                const std::function<std::string(std::string_view)>& encode) {
    VocabEncodings enc;
    const std::size_t n = vocab.size();
    enc.rendered.resize(n);
    enc.ids.resize(n);
    enc.encodable.resize(n, false);
    std::unordered_map<std::string, std::uint32_t> intern;
    std::uint32_t next_id = 0;
    // Two passes so unencodable words get ids above all real encodings.
    for (WordId w = 0; w < n; ++w) {
        try {
            enc.rendered[w] = encode(vocab[w].surface);
            enc.encodable[w] = true;
        } catch (const Error& e) {
            if (e.kind() != Error::Kind::unencodable) throw;
        }
    }
    for (WordId w = 0; w < n; ++w) {
        if (!enc.encodable[w]) continue;
        auto [it, inserted] = intern.emplace(enc.rendered[w], next_id);
        if (inserted) ++next_id;
        enc.ids[w] = it->second;
    }
    for (WordId w = 0; w < n; ++w) {
        if (!enc.encodable[w]) enc.ids[w] = next_id++;
    }
    enc.distinct = next_id;
    return enc;
}

}  // namespace

VocabEncodings encode_vocabulary(const Vocabulary& vocab, const UrduPhoneEncoder& encoder) {
    return intern_encodings(vocab, [&](std::string_view w) { return encoder.encode(w); });
}

VocabEncodings encode_vocabulary_soundex(const Vocabulary& vocab) {
    return intern_encodings(vocab, [](std::string_view w) { return soundex_encode(w); });
}

Clustering group_by_encoding(std::span<const WordId> words, const VocabEncodings& encodings) {
    std::unordered_map<std::uint32_t, std::vector<WordId>> groups;
    for (WordId w : words) groups[encodings.ids[w]].push_back(w);

    std::vector<std::vector<WordId>> ordered;
    ordered.reserve(groups.size());
    for (auto& [id, members] : groups) {
        std::sort(members.begin(), members.end());
        ordered.push_back(std::move(members));
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    Clustering out;
    for (auto& members : ordered) out.add_cluster(std::move(members));
    return out;
}

}  // namespace lexnorm
