#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "lexnorm/bcubed.hpp"
#include "lexnorm/corpus.hpp"
#include "lexnorm/phonetic.hpp"
#include "lexnorm/synth.hpp"
#include "oracles.hpp"

using namespace lexnorm;

namespace {

std::vector<std::string> tokens_of(std::string_view line) { return preprocess_line(line); }

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

}  // namespace

TEST_CASE("repeated groups collapse to two repetitions") {
    CHECK(tokens_of("hahahaha x") == std::vector<std::string>{"haha", "x"});
    CHECK(tokens_of("aaaa x") == std::vector<std::string>{"aa", "x"});
    CHECK(tokens_of("wowwowwow x") == std::vector<std::string>{"wowwow", "x"});
    CHECK(tokens_of("haha x") == std::vector<std::string>{"haha", "x"});  // two stay two
}

TEST_CASE("punctuation becomes space and spaces collapse") {
    CHECK(tokens_of("a!!b   c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(tokens_of("Hello, WORLD!") == std::vector<std::string>{"hello", "world"});
}

TEST_CASE("placeholders for urls emails times years numbers") {
    CHECK(tokens_of("call 03001234567") == std::vector<std::string>{"call", "<number>"});
    CHECK(tokens_of("see www.example.com now") ==
          std::vector<std::string>{"see", "<url>", "now"});
    CHECK(tokens_of("see http://x.y/z now") == std::vector<std::string>{"see", "<url>", "now"});
    CHECK(tokens_of("mail a.b@host.org ok") == std::vector<std::string>{"mail", "<email>", "ok"});
    CHECK(tokens_of("at 12:30 sharp") == std::vector<std::string>{"at", "<time>", "sharp"});
    CHECK(tokens_of("in 1999 it") == std::vector<std::string>{"in", "<year>", "it"});
    CHECK(tokens_of("in 2150 it") == std::vector<std::string>{"in", "<number>", "it"});  // not a year
    CHECK(tokens_of("room 123 ok") == std::vector<std::string>{"room", "123", "ok"});  // short digits stay
    CHECK(tokens_of("ab12345cd x") == std::vector<std::string>{"ab", "<number>", "cd", "x"});
}

TEST_CASE("no output token still matches a placeholder pattern") {
    std::mt19937_64 rng(31);
    const std::string chars = "abc0123456789.:@/w ";
    for (int trial = 0; trial < 500; ++trial) {
        std::string line;
        const std::size_t len = 1 + rng() % 40;
        for (std::size_t i = 0; i < len; ++i) line.push_back(chars[rng() % chars.size()]);
        for (const std::string& token : tokens_of(line)) {
            if (token.front() == '<') continue;  // already a placeholder
            std::size_t digits = 0;
            for (char c : token) digits = (c >= '0' && c <= '9') ? digits + 1 : 0;
            CHECK(digits < 4);
            CHECK(token.find("://") == std::string::npos);
            CHECK(token.find('@') == std::string::npos);
            CHECK(token.substr(0, 4) != "www.");
        }
    }
}

TEST_CASE("preprocess is idempotent at the token level") {
    const std::vector<std::string> lines = {
        "hahahaha lolol!!",
        "Call me at 12:30 or 03001234567",
        "visit www.site.com and a@b.co",
        "aaaaaa bbbb ab ab ab done",
        "year 1999 and 12345678",
    };
    for (const auto& line : lines) {
        const auto once = tokens_of(line);
        CHECK(tokens_of(join(once)) == once);
    }
    const SynthData synth = synth_corpus({.seed = 5, .groups = 40});
    for (const auto& line : synth.lines) {
        const auto once = tokens_of(line);
        CHECK(tokens_of(join(once)) == once);
    }
    std::mt19937_64 rng(32);
    const std::string chars = "abcdz0123456789.:@!?www ";
    for (int trial = 0; trial < 400; ++trial) {
        std::string line;
        const std::size_t len = 1 + rng() % 30;
        for (std::size_t i = 0; i < len; ++i) line.push_back(chars[rng() % chars.size()]);
        const auto once = tokens_of(line);
        CHECK(tokens_of(join(once)) == once);
    }
}

TEST_CASE("single token messages are dropped") {
    const std::vector<std::string> lines = {"hello", "hello world", "", "  ok  "};
    const auto messages = preprocess(lines);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0].tokens == std::vector<std::string>{"hello", "world"});
}

TEST_CASE("command patterns are removed first") {
    PreprocessOptions options;
    options.command_patterns = {"@", "#join"};
    const std::vector<std::string> lines = {"@bot hello there", "#joinroom foo bar"};
    const auto messages = preprocess(lines, options);
    REQUIRE(messages.size() == 2);
    CHECK(messages[0].tokens == std::vector<std::string>{"hello", "there"});
    CHECK(messages[1].tokens == std::vector<std::string>{"foo", "bar"});
}

TEST_CASE("invalid utf8 names the line") {
    const std::vector<std::string> lines = {"fine line one", std::string("bad \xff byte")};
    try {
        preprocess(lines);
        FAIL("expected a decode error");
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::decode);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("valid multibyte utf8 is treated as punctuation") {
    CHECK(tokens_of("caf\xc3\xa9 time x") == std::vector<std::string>{"caf", "time", "x"});
}

TEST_CASE("vocabulary counting") {
    CHECK(build_vocabulary({}).size() == 0);

    std::vector<Message> messages{{{"a", "b"}}, {{"a", "c"}}};
    const Vocabulary vocab = build_vocabulary(messages);
    REQUIRE(vocab.size() == 3);
    CHECK(vocab[*vocab.find("a")].freq == 2);
    CHECK(vocab[*vocab.find("b")].freq == 1);
    CHECK(*vocab.find("a") == 0);  // first-seen order
    CHECK(*vocab.find("c") == 2);
}

TEST_CASE("vocabulary size equals the distinct token count on a fixture") {
    const SynthData synth = synth_corpus({.seed = 9, .groups = 30});
    std::vector<std::string> lines(synth.lines.begin(),
                                   synth.lines.begin() + std::min<std::size_t>(100, synth.lines.size()));
    const auto messages = preprocess(lines);
    const Vocabulary vocab = build_vocabulary(messages);
    std::set<std::string> distinct;
    for (const auto& m : messages)
        for (const auto& token : m.tokens) distinct.insert(token);
    CHECK(vocab.size() == distinct.size());
}

TEST_CASE("context extraction basics") {
    std::vector<Message> messages{{{"left", "pivot", "right"}}};
    Vocabulary vocab = build_vocabulary(messages);
    extract_contexts(messages, vocab, 5, ContextFeature::word_id);
    const WordEntry& pivot = vocab[*vocab.find("pivot")];
    REQUIRE(pivot.prev_ctx.size() == 1);
    REQUIRE(pivot.next_ctx.size() == 1);
    CHECK(pivot.prev_ctx[0].feature == *vocab.find("left"));
    CHECK(pivot.next_ctx[0].feature == *vocab.find("right"));
    // Sentence boundaries are skipped, not padded.
    CHECK(vocab[*vocab.find("left")].prev_ctx.empty());
    CHECK(vocab[*vocab.find("right")].next_ctx.empty());
}

TEST_CASE("context lists hold at most k and fewer when scarce") {
    std::vector<Message> messages{
        {{"a", "w"}}, {{"b", "w"}}, {{"c", "w"}}, {{"b", "w"}},
    };
    Vocabulary vocab = build_vocabulary(messages);
    extract_contexts(messages, vocab, 5, ContextFeature::word_id);
    const WordEntry& w = vocab[*vocab.find("w")];
    REQUIRE(w.prev_ctx.size() == 3);  // only three distinct predecessors
    CHECK(w.prev_ctx[0].feature == *vocab.find("b"));  // count 2 first
    CHECK(w.prev_ctx[0].count == 2);
    // counts tie at 1: feature id ascending
    CHECK(w.prev_ctx[1].feature < w.prev_ctx[2].feature);

    extract_contexts(messages, vocab, 2, ContextFeature::word_id);
    CHECK(vocab[*vocab.find("w")].prev_ctx.size() == 2);
}

TEST_CASE("context lists match the exhaustive bigram oracle") {
    const SynthData synth = synth_corpus({.seed = 77, .groups = 60});
    const auto messages = preprocess(synth.lines);
    Vocabulary vocab = build_vocabulary(messages);
    extract_contexts(messages, vocab, 5, ContextFeature::word_id);

    std::vector<std::vector<std::uint32_t>> sentences;
    for (const auto& m : messages) {
        std::vector<std::uint32_t> ids;
        for (const auto& token : m.tokens) ids.push_back(*vocab.find(token));
        sentences.push_back(std::move(ids));
    }
    const auto prev = oracle::top_contexts(sentences, static_cast<std::uint32_t>(vocab.size()), 5, true);
    const auto next = oracle::top_contexts(sentences, static_cast<std::uint32_t>(vocab.size()), 5, false);
    for (WordId w = 0; w < vocab.size(); ++w) {
        std::vector<std::uint32_t> got_prev, got_next;
        for (const auto& item : vocab[w].prev_ctx) got_prev.push_back(item.feature);
        for (const auto& item : vocab[w].next_ctx) got_next.push_back(item.feature);
        CHECK(got_prev == prev[w]);
        CHECK(got_next == next[w]);
    }
}

TEST_CASE("context extraction over encoding ids uses the mapping") {
    std::vector<Message> messages{{{"zindagi", "w"}}, {{"zindagee", "w"}}};
    Vocabulary vocab = build_vocabulary(messages);
    CHECK_THROWS_AS(extract_contexts(messages, vocab, 5, ContextFeature::urduphone_id, nullptr),
                    Error);
    const VocabEncodings encodings = encode_vocabulary(vocab, UrduPhoneEncoder());
    extract_contexts(messages, vocab, 5, ContextFeature::urduphone_id, &encodings.ids);
    // zindagi and zindagee share an encoding, so w sees one prev feature.
    CHECK(vocab[*vocab.find("w")].prev_ctx.size() == 1);
}

TEST_CASE("filter_eval_words applies gold overlap and context floor") {
    std::vector<Message> messages{
        {{"a", "w", "b"}}, {{"c", "w", "d"}}, {{"a", "v", "b"}}, {{"x", "y"}},
    };
    Vocabulary vocab = build_vocabulary(messages);
    extract_contexts(messages, vocab, 5, ContextFeature::word_id);
    GoldStandard gold;
    gold.add("w", "1");
    gold.add("v", "1");
    gold.add("missing", "2");
    gold.add("x", "3");

    const auto all = filter_eval_words(vocab, gold, 0);
    CHECK(all == std::vector<WordId>{*vocab.find("w"), *vocab.find("v"), *vocab.find("x")});

    const auto two = filter_eval_words(vocab, gold, 2);
    CHECK(two == std::vector<WordId>{*vocab.find("w")});

    // Brute-force recount for min_ctx = 1.
    const auto one = filter_eval_words(vocab, gold, 1);
    std::vector<WordId> expected;
    for (WordId w = 0; w < vocab.size(); ++w) {
        if (!gold.group(vocab[w].surface)) continue;
        std::set<std::string> prev, next;
        for (const auto& m : messages) {
            for (std::size_t p = 0; p < m.tokens.size(); ++p) {
                if (m.tokens[p] != vocab[w].surface) continue;
                if (p > 0) prev.insert(m.tokens[p - 1]);
                if (p + 1 < m.tokens.size()) next.insert(m.tokens[p + 1]);
            }
        }
        if (prev.size() >= 1 && next.size() >= 1) expected.push_back(w);
    }
    CHECK(one == expected);

    CHECK_THROWS_AS(filter_eval_words(vocab, gold, 6), Error);  // beyond extracted k
}

TEST_CASE("read and write helpers") {
    std::vector<Message> messages{{{"a", "b"}}, {{"c", "d", "e"}}};
    std::ostringstream out;
    write_messages(out, messages);
    CHECK(out.str() == "a b\nc d e\n");
}
