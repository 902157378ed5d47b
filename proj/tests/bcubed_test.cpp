#include <doctest.h>

#include <cstdio>
#include <map>
#include <random>

#include "lexnorm/bcubed.hpp"
#include "lexnorm/corpus.hpp"
#include "oracles.hpp"

using namespace lexnorm;

namespace {

struct Setup {
    Vocabulary vocab;
    std::vector<WordId> words;

    explicit Setup(int n) {
        for (int i = 0; i < n; ++i) vocab.add("w" + std::to_string(i));
        words = vocab.all_ids();
    }
};

Clustering from_labels(const std::vector<int>& labels) {
    std::map<int, std::vector<WordId>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i)
        groups[labels[i]].push_back(static_cast<WordId>(i));
    Clustering out;
    for (auto& [label, members] : groups) out.add_cluster(std::move(members));
    return out;
}

GoldStandard gold_from_labels(const Vocabulary& vocab, const std::vector<int>& labels) {
    GoldStandard gold;
    for (std::size_t i = 0; i < labels.size(); ++i)
        gold.add(vocab[static_cast<WordId>(i)].surface, std::to_string(labels[i]));
    return gold;
}

}  // namespace

TEST_CASE("correctness definition") {
    Setup s(4);
    const Clustering pred = from_labels({0, 0, 1, 1});
    const GoldStandard gold = gold_from_labels(s.vocab, {0, 1, 1, 1});
    CHECK(correctness(0, 0, pred, gold, s.vocab) == 1);  // C(w,w) = 1
    CHECK(correctness(0, 1, pred, gold, s.vocab) == 0);  // same pred, different gold
    CHECK(correctness(1, 2, pred, gold, s.vocab) == 0);  // same gold, different pred
    CHECK(correctness(2, 3, pred, gold, s.vocab) == 1);
}

TEST_CASE("hand example: pairs versus one gold group") {
    Setup s(3);
    const Clustering pred = from_labels({0, 0, 1});
    const GoldStandard gold = gold_from_labels(s.vocab, {7, 7, 7});
    const EvalReport report = bcubed_eval(pred, gold, s.words, s.vocab);
    CHECK(report.precision == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.recall == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    CHECK(report.f_measure == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(report.predicted_clusters == 2);
    CHECK(report.gold_clusters == 1);
    CHECK(report.singleton_clusters == 1);
}

TEST_CASE("identical partitions score one") {
    Setup s(6);
    const std::vector<int> labels{0, 1, 0, 2, 1, 2};
    const EvalReport report =
        bcubed_eval(from_labels(labels), gold_from_labels(s.vocab, labels), s.words, s.vocab);
    CHECK(report.precision == doctest::Approx(1.0));
    CHECK(report.recall == doctest::Approx(1.0));
    CHECK(report.f_measure == doctest::Approx(1.0));
}

TEST_CASE("all singletons versus one gold group") {
    const int n = 8;
    Setup s(n);
    std::vector<int> singleton_labels(n), one_group(n, 0);
    for (int i = 0; i < n; ++i) singleton_labels[static_cast<std::size_t>(i)] = i;
    const EvalReport report = bcubed_eval(from_labels(singleton_labels),
                                          gold_from_labels(s.vocab, one_group), s.words, s.vocab);
    CHECK(report.precision == doctest::Approx(1.0));
    CHECK(report.recall == doctest::Approx(1.0 / n).epsilon(1e-12));
}

TEST_CASE("random partitions agree with the pair-counting oracle") {
    std::mt19937_64 rng(61);
    const int n = 60;
    Setup s(n);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> pred(n), gold(n);
        for (int i = 0; i < n; ++i) {
            pred[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 7);
            gold[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 5);
        }
        const EvalReport report =
            bcubed_eval(from_labels(pred), gold_from_labels(s.vocab, gold), s.words, s.vocab);
        const oracle::BCubedScores expected = oracle::bcubed(pred, gold);
        CHECK(report.precision == doctest::Approx(expected.precision).epsilon(1e-12));
        CHECK(report.recall == doctest::Approx(expected.recall).epsilon(1e-12));
        CHECK(report.f_measure == doctest::Approx(expected.f).epsilon(1e-12));
    }
}

TEST_CASE("swapping prediction and gold swaps precision and recall") {
    std::mt19937_64 rng(62);
    const int n = 40;
    Setup s(n);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 6);
            b[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 6);
        }
        const EvalReport fwd =
            bcubed_eval(from_labels(a), gold_from_labels(s.vocab, b), s.words, s.vocab);
        const EvalReport rev =
            bcubed_eval(from_labels(b), gold_from_labels(s.vocab, a), s.words, s.vocab);
        CHECK(fwd.precision == doctest::Approx(rev.recall).epsilon(1e-12));
        CHECK(fwd.recall == doctest::Approx(rev.precision).epsilon(1e-12));
    }
}

TEST_CASE("words outside the eval set leave the denominators") {
    Setup s(4);
    // Cluster {0,1,3} with 3 outside the eval set: precision denominators
    // must shrink to the evaluated members.
    const Clustering pred = from_labels({0, 0, 1, 0});
    GoldStandard gold;
    gold.add("w0", "a");
    gold.add("w1", "a");
    gold.add("w2", "a");
    const std::vector<WordId> eval_set{0, 1, 2};
    const EvalReport report = bcubed_eval(pred, gold, eval_set, s.vocab);
    CHECK(report.precision == doctest::Approx(1.0));
    CHECK(report.recall == doctest::Approx((2.0 / 3 + 2.0 / 3 + 1.0 / 3) / 3).epsilon(1e-12));
    CHECK(report.f_measure == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("error paths") {
    Setup s(3);
    const Clustering pred = from_labels({0, 0, 1});
    const GoldStandard gold = gold_from_labels(s.vocab, {0, 0, 0});
    CHECK_THROWS_AS(bcubed_eval(pred, gold, std::vector<WordId>{}, s.vocab), Error);
    GoldStandard partial;
    partial.add("w0", "0");
    CHECK_THROWS_AS(bcubed_eval(pred, partial, s.words, s.vocab), Error);
    CHECK_THROWS_AS(correctness(0, 1, pred, partial, s.vocab), Error);
}

TEST_CASE("gold standard tsv round trip") {
    GoldStandard gold;
    gold.add("alpha", "g1");
    gold.add("beta", "g1");
    gold.add("gamma", "g2");
    const std::string path = "gold_test.tsv";
    gold.save_tsv(path);
    const GoldStandard loaded = GoldStandard::load_tsv(path);
    CHECK(loaded.word_count() == 3);
    CHECK(loaded.group_count() == 2);
    CHECK(*loaded.group("alpha") == *loaded.group("beta"));
    CHECK(*loaded.group("alpha") != *loaded.group("gamma"));
    CHECK(!loaded.group("delta"));
    std::remove(path.c_str());
}
