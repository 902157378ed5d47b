#include <benchmark/benchmark.h>

#include <random>

#include "lexnorm/phonetic.hpp"
#include "lexnorm/similarity.hpp"
#include "lexnorm/string_similarity.hpp"

using namespace lexnorm;

namespace {

std::vector<std::string> random_words(std::size_t count, std::size_t max_len,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::string letters = "abdeghiklmnorstuz";
    std::vector<std::string> words;
    words.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string w;
        const std::size_t len = 3 + rng() % max_len;
        for (std::size_t j = 0; j < len; ++j) w.push_back(letters[rng() % letters.size()]);
        words.push_back(std::move(w));
    }
    return words;
}

}  // namespace

static void BM_UrduPhoneEncode(benchmark::State& state) {
    const auto words = random_words(1024, 9, 1);
    const UrduPhoneEncoder encoder;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(encoder.encode(words[i++ & 1023]));
    }
}
BENCHMARK(BM_UrduPhoneEncode);

static void BM_SoundexEncode(benchmark::State& state) {
    const auto words = random_words(1024, 9, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(soundex_encode(words[i++ & 1023]));
    }
}
BENCHMARK(BM_SoundexEncode);

static void BM_EditDistanceUnit(benchmark::State& state) {
    const auto words = random_words(1024, static_cast<std::size_t>(state.range(0)), 3);
    const CostMatrix unit;
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = words[i & 1023];
        const auto& b = words[(i + 511) & 1023];
        ++i;
        benchmark::DoNotOptimize(edit_distance(a, b, unit));
    }
}
BENCHMARK(BM_EditDistanceUnit)->Arg(6)->Arg(12);

static void BM_StringSimilarity(benchmark::State& state) {
    const auto words = random_words(1024, 9, 4);
    const CostMatrix unit;
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = words[i & 1023];
        const auto& b = words[(i + 257) & 1023];
        ++i;
        benchmark::DoNotOptimize(string_similarity(a, b, unit));
    }
}
BENCHMARK(BM_StringSimilarity);

static void BM_SkipgramSimilarity(benchmark::State& state) {
    const auto words = random_words(1024, 9, 5);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = words[i & 1023];
        const auto& b = words[(i + 130) & 1023];
        ++i;
        benchmark::DoNotOptimize(skipgram_similarity(a, b));
    }
}
BENCHMARK(BM_SkipgramSimilarity);
