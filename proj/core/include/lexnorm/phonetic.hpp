#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexnorm/clustering.hpp"
#include "lexnorm/common.hpp"

namespace lexnorm {

class Vocabulary;

/// Character-to-code mapping for the phonetic encoder. Characters in one
/// homophone group share a code; vowels (a,e,i,o,u,y) carry none.
class CodeTable {
public:
    /// The built-in Roman Urdu homophone groups:
    ///   s,c=1  t=2  z,x=3  d=5  f=6  q,k=7  j=8  b=9  p=10  n=11  m=12
    ///   g=13  r=14  w,v=15  l=17  h=19
    /// and digraphs (used only in digraph mode):
    ///   sh=1  ch=4  zh=16  kh=18  gh=20  bh=21  ph=22  jh=23  th=24
    ///   dh=25  rh=26
    static CodeTable roman_urdu();

    /// TSV `character<TAB>code`; a first column of two letters defines a
    /// digraph. Vowels may not be assigned codes.
    static CodeTable load_tsv(const std::string& path);
    void save_tsv(const std::string& path) const;

    static bool is_vowel(char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    }

    int code(char c) const;                    // -1 for vowels / unmapped
    int digraph_code(char a, char b) const;    // -1 if not a digraph

    void set_code(char c, int code);
    void set_digraph(char a, char b, int code);

private:
    std::array<int, 26> single_{};
    std::unordered_map<std::uint16_t, int> digraphs_;
};

struct UrduPhoneOptions {
    int length = 6;           // total rendered tokens, head included; 4..8
    bool h_omission = false;  // also skip 'h' right after a consonant
    bool digraphs = false;    // longest-match digraph scanning
};

/// Fixed-length phonetic encoder: uppercase head letter plus length-1
/// zero-padded numeric codes, rendered with underscores (M_1_2_7_9_17).
class UrduPhoneEncoder {
public:
    explicit UrduPhoneEncoder(UrduPhoneOptions options = {},
                              CodeTable table = CodeTable::roman_urdu());

    /// Throws Error::Kind::unencodable when the word has no alphabetic
    /// characters. Non-alphabetic characters are stripped first.
    std::string encode(std::string_view word) const;

    const UrduPhoneOptions& options() const { return options_; }

private:
    UrduPhoneOptions options_;
    CodeTable table_;
};

/// Classic Soundex (letter plus three digits), rendered with underscores
/// to match the encoder's output format (M_2_3_2).
std::string soundex_encode(std::string_view word);

/// 1 iff both words encode identically, else 0. Propagates unencodable.
int phonetic_similarity(std::string_view a, std::string_view b, const UrduPhoneEncoder& encoder);

/// Per-word rendered encodings with interned ids. Unencodable words get a
/// unique id each and encodable=false, so they form singletons downstream.
struct VocabEncodings {
    std::vector<std::string> rendered;   // empty string when unencodable
    std::vector<std::uint32_t> ids;      // equal encodings share an id
    std::vector<bool> encodable;
    std::uint32_t distinct = 0;          // number of distinct ids
};

VocabEncodings encode_vocabulary(const Vocabulary& vocab, const UrduPhoneEncoder& encoder);
VocabEncodings encode_vocabulary_soundex(const Vocabulary& vocab);

/// Partition of `words` by identical encoding id; centroid of each cluster
/// is its lowest word id.
Clustering group_by_encoding(std::span<const WordId> words, const VocabEncodings& encodings);

}  // namespace lexnorm
