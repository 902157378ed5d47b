#include "lexnorm/synth.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_set>

#include "lexnorm/corpus.hpp"

namespace lexnorm {

namespace {

constexpr const char* kConsonants = "bdfgjklmnpqrstz";
constexpr std::size_t kConsonantCount = 15;
constexpr const char* kVowels = "aeiou";
constexpr std::size_t kVowelCount = 5;

std::uint64_t randint(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

char random_consonant(std::mt19937_64& rng) { return kConsonants[rng() % kConsonantCount]; }
char random_vowel(std::mt19937_64& rng) { return kVowels[rng() % kVowelCount]; }

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Interleaves vowels into a consonant skeleton; wide=true doubles vowels
// often, producing a long-vowel spelling of the same skeleton.
std::string word_from_skeleton(std::mt19937_64& rng, const std::string& skeleton, bool wide) {
    std::string word;
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        word.push_back(skeleton[i]);
        if (i + 1 < skeleton.size() || rng() % 2 == 0) {
            const char v = random_vowel(rng);
            word.push_back(v);
            if (wide && rng() % 2 == 0) word.push_back(v);
        }
    }
    return word;
}

// Spelling-variation operators.
std::string op_vowel_swap(std::mt19937_64& rng, std::string w) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (is_vowel(w[i])) positions.push_back(i);
    if (positions.empty()) return w;
    const std::size_t pos = positions[rng() % positions.size()];
    char replacement = random_vowel(rng);
    while (replacement == w[pos]) replacement = random_vowel(rng);
    w[pos] = replacement;
    return w;
}

std::string op_vowel_delete(std::mt19937_64& rng, std::string w) {
    if (w.size() < 4) return w;
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (is_vowel(w[i])) positions.push_back(i);
    if (positions.empty()) return w;
    w.erase(positions[rng() % positions.size()], 1);
    return w;
}

std::string op_vowel_double(std::mt19937_64& rng, std::string w) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (is_vowel(w[i])) positions.push_back(i);
    if (positions.empty()) return w;
    const std::size_t pos = positions[rng() % positions.size()];
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), w[pos]);
    return w;
}

std::string op_consonant_double(std::mt19937_64& rng, std::string w) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!is_vowel(w[i])) positions.push_back(i);
    if (positions.empty()) return w;
    const std::size_t pos = positions[rng() % positions.size()];
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), w[pos]);
    return w;
}

// Insert h after one of the first two consonants, where every encoding
// length notices it.
std::string op_h_insert(std::mt19937_64& rng, std::string w) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < w.size() && positions.size() < 2; ++i)
        if (!is_vowel(w[i]) && w[i] != 'h') positions.push_back(i);
    if (positions.empty()) return w;
    const std::size_t pos = positions[rng() % positions.size()];
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, 'h');
    return w;
}

struct GroupSpec {
    std::vector<std::string> variants;
    int partner = -1;       // index of the twin group sharing a skeleton
    bool long_twin = false; // twins that only longer encodings separate
    bool decoy = false;     // single-word gold group colliding with a real one
};

}  // namespace

SynthData synth_corpus(const SynthOptions& options) {
    if (options.groups < 2) throw Error(Error::Kind::config, "synth needs at least two groups");
    std::mt19937_64 rng(options.seed);
    SynthData data;
    std::unordered_set<std::string> used;

    auto claim = [&](const std::string& word) {
        if (word.empty()) return false;
        // Only surfaces that survive corpus preprocessing unchanged may
        // enter the corpus (repeat collapsing rewrites the rest).
        const auto cleaned = preprocess_line(word);
        if (cleaned.size() != 1 || cleaned[0] != word) return false;
        return used.insert(word).second;
    };

    auto fresh_base = [&](const std::string& skeleton, bool wide) -> std::string {
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::string w = word_from_skeleton(rng, skeleton, wide);
            if (claim(w)) return w;
        }
        return {};
    };

    // Base words. Collision units are gold groups whose consonant skeletons
    // collide in the encoder: short units are triples sharing the whole
    // skeleton (identical encodings at every length); long units are pairs
    // sharing a four-consonant prefix and differing at the fifth (identical
    // only for encodings shorter than six).
    std::vector<GroupSpec> groups;
    const int collided_groups = options.groups * options.twin_pct / 100;
    const int long_pairs = collided_groups * options.long_twin_pct / 100 / 2;
    const int short_units = (collided_groups - 2 * long_pairs) / 3;
    for (int pair = 0; pair < long_pairs; ++pair) {
        std::string first(5, 'x');
        for (char& c : first) c = random_consonant(rng);
        std::string second = first;
        char replacement = random_consonant(rng);
        while (replacement == second[4]) replacement = random_consonant(rng);
        second[4] = replacement;
        const std::string a = fresh_base(first, false);
        const std::string b = fresh_base(second, true);  // wide vowels: lower string overlap
        if (a.empty() || b.empty()) continue;
        const int ia = static_cast<int>(groups.size());
        groups.push_back({{a}, ia + 1, true});
        groups.push_back({{b}, ia, true});
    }
    for (int unit = 0; unit < short_units; ++unit) {
        // One real group plus two decoys: different words whose skeletons
        // collide in the encoder (the maalik/malika/malaika pattern).
        std::string skeleton(static_cast<std::size_t>(randint(rng, 3, 4)), 'x');
        for (char& c : skeleton) c = random_consonant(rng);
        const std::string a = fresh_base(skeleton, false);
        const std::string b = fresh_base(skeleton, true);
        const std::string c = fresh_base(skeleton, true);
        if (a.empty() || b.empty() || c.empty()) continue;
        groups.push_back({{a}, -1, false, false});
        groups.push_back({{b}, -1, false, true});
        groups.push_back({{c}, -1, false, true});
    }
    while (groups.size() < static_cast<std::size_t>(options.groups)) {
        std::string skeleton(static_cast<std::size_t>(randint(rng, 3, 5)), 'x');
        for (char& c : skeleton) c = random_consonant(rng);
        const std::string base = fresh_base(skeleton, false);
        if (!base.empty()) groups.push_back({{base}, -1, false});
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].decoy) {
            data.gold.add(groups[g].variants.front(), "g" + std::to_string(g));
            continue;
        }
        const std::string base = groups[g].variants.front();  // copy: the vector grows below
        const int wanted = static_cast<int>(
            randint(rng, static_cast<std::uint64_t>(options.variants_min),
                    static_cast<std::uint64_t>(options.variants_max)));
        for (int v = 1; v < wanted; ++v) {
            const bool with_h =
                randint(rng, 0, 99) < static_cast<std::uint64_t>(options.h_variant_pct);
            std::string variant;
            for (int attempt = 0; attempt < 10 && variant.empty(); ++attempt) {
                std::string w = base;
                if (with_h) {
                    w = op_h_insert(rng, w);
                } else {
                    switch (rng() % 4) {
                        case 0: w = op_vowel_swap(rng, w); break;
                        case 1: w = op_vowel_delete(rng, w); break;
                        case 2: w = op_vowel_double(rng, w); break;
                        default: w = op_consonant_double(rng, w); break;
                    }
                }
                if (claim(w)) variant = w;
            }
            if (!variant.empty()) groups[g].variants.push_back(variant);
        }
        for (const std::string& v : groups[g].variants)
            data.gold.add(v, "g" + std::to_string(g));
    }

    // Anchor and filler pools.
    auto fresh_pool_word = [&](std::size_t len) -> std::string {
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::string skeleton(len, 'x');
            for (char& c : skeleton) c = random_consonant(rng);
            std::string w = word_from_skeleton(rng, skeleton, false);
            if (claim(w)) return w;
        }
        return {};
    };
    std::vector<std::string> anchors, fillers, shared_anchors;
    for (int i = 0; i < options.anchor_pool; ++i) {
        std::string w = fresh_pool_word(static_cast<std::size_t>(randint(rng, 2, 3)));
        if (!w.empty()) anchors.push_back(w);
    }
    for (int i = 0; i < options.filler_pool; ++i) {
        std::string w = fresh_pool_word(static_cast<std::size_t>(randint(rng, 2, 4)));
        if (!w.empty()) fillers.push_back(w);
    }
    for (int i = 0; i < 12; ++i) {
        std::string w = fresh_pool_word(2);
        if (!w.empty()) shared_anchors.push_back(w);
    }
    if (anchors.size() < 6 || fillers.empty() || shared_anchors.empty())
        throw Error(Error::Kind::config, "synth pools too small");

    // Anchor assignment. Variants of one group share ranked contexts; a
    // long-twin pair also shares its strongest left anchor, so contextual
    // similarity alone cannot fully separate what the encoding collides.
    std::vector<std::array<std::string, 3>> left(groups.size()), right(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (auto& a : left[g]) a = anchors[rng() % anchors.size()];
        for (auto& a : right[g]) a = anchors[rng() % anchors.size()];
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].long_twin && groups[g].partner >= 0 &&
            static_cast<std::size_t>(groups[g].partner) < g) {
            left[g][0] = left[static_cast<std::size_t>(groups[g].partner)][0];
        }
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto graded = [&](const std::array<std::string, 3>& pool) -> const std::string& {
            const std::uint64_t roll = randint(rng, 0, 99);
            return roll < 50 ? pool[0] : (roll < 80 ? pool[1] : pool[2]);
        };
        bool first_variant = true;
        for (const std::string& variant : groups[g].variants) {
            // Context orphans: variants seen only in unrelated contexts
            // (never the base word, so every group keeps its anchor core).
            const bool orphan =
                !first_variant &&
                randint(rng, 0, 99) < static_cast<std::uint64_t>(options.orphan_pct);
            first_variant = false;
            for (int s = 0; s < options.sentences_per_variant; ++s) {
                std::string la = orphan ? anchors[rng() % anchors.size()] : graded(left[g]);
                std::string ra = orphan ? anchors[rng() % anchors.size()] : graded(right[g]);
                if (!orphan && randint(rng, 0, 99) < 8)
                    la = shared_anchors[rng() % shared_anchors.size()];
                std::string line = la + " " + variant + " " + ra;
                const std::uint64_t shape = randint(rng, 0, 99);
                if (shape < 20)
                    line += " " + fillers[rng() % fillers.size()];
                else if (shape < 30)
                    line = fillers[rng() % fillers.size()] + " " + line;
                data.lines.push_back(std::move(line));
            }
        }
    }
    for (int i = 0; i < options.filler_sentences; ++i) {
        std::string line = fillers[rng() % fillers.size()];
        const int extra = static_cast<int>(randint(rng, 1, 2));
        for (int j = 0; j < extra; ++j) line += " " + fillers[rng() % fillers.size()];
        data.lines.push_back(std::move(line));
    }

    // Deterministic shuffle.
    for (std::size_t i = data.lines.size(); i > 1; --i)
        std::swap(data.lines[i - 1], data.lines[rng() % i]);
    return data;
}

}  // namespace lexnorm
