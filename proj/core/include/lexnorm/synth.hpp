#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexnorm/bcubed.hpp"

namespace lexnorm {

/// Knobs for the self-contained evaluation corpus. Base words spawn
/// spelling variants (vowel changes, doublings, h-insertion) embedded in
/// template sentences so variants of one word share contexts; the gold
/// standard groups variants by their base word.
struct SynthOptions {
    std::uint64_t seed = 7;
    int groups = 1150;             // gold lexical groups (decoys included)
    int variants_min = 3;
    int variants_max = 6;
    int twin_pct = 70;             // % of groups in encoder-collision units
    int long_twin_pct = 40;        // % of collided groups on 5-consonant skeletons
    int h_variant_pct = 3;         // % of variants with an inserted h
    int orphan_pct = 12;           // % of variants anchored at random (context noise)
    int sentences_per_variant = 4;
    int anchor_pool = 600;
    int filler_pool = 420;
    int filler_sentences = 1000;
};

struct SynthData {
    std::vector<std::string> lines;  // raw corpus, one message per line
    GoldStandard gold;
};

SynthData synth_corpus(const SynthOptions& options = {});

}  // namespace lexnorm
