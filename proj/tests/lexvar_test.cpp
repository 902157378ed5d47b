#include <doctest.h>

#include <random>

#include "lexnorm/lexvar.hpp"
#include "lexnorm/pipeline.hpp"
#include "lexnorm/synth.hpp"

using namespace lexnorm;

namespace {

SimilarityFn matrix_sim(std::vector<std::vector<double>> m) {
    return [m = std::move(m)](WordId a, WordId b) { return m[a][b]; };
}

std::vector<WordId> iota_words(std::size_t n) {
    std::vector<WordId> words(n);
    for (std::size_t i = 0; i < n; ++i) words[i] = static_cast<WordId>(i);
    return words;
}

Clustering make_clustering(std::vector<std::vector<WordId>> groups) {
    Clustering out;
    for (auto& g : groups) out.add_cluster(std::move(g));
    return out;
}

std::vector<std::vector<WordId>> member_sets(const Clustering& clustering) {
    const Clustering canon = clustering.canonical();
    std::vector<std::vector<WordId>> sets;
    for (const auto& c : canon.clusters()) sets.push_back(c.members);
    return sets;
}

// Random symmetric similarity matrix with unit diagonal.
std::vector<std::vector<double>> random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = m[j][i] = (rng() % 1000) / 999.0;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("find_centroid basics") {
    // Row sums over the full 3x3 block decide; ties take the lowest id.
    const auto sim = matrix_sim({
        {1.0, 0.9, 0.2},
        {0.9, 1.0, 0.6},
        {0.2, 0.6, 1.0},
    });
    Cluster cluster;
    cluster.members = {0, 1, 2};
    // sums: w0 = 2.1, w1 = 2.5, w2 = 1.8
    CHECK(find_centroid(cluster, sim) == 1);

    Cluster single;
    single.members = {2};
    CHECK(find_centroid(single, sim) == 2);

    const auto tied = matrix_sim({
        {1.0, 0.5, 0.5},
        {0.5, 1.0, 0.5},
        {0.5, 0.5, 1.0},
    });
    CHECK(find_centroid(cluster, tied) == 0);
}

TEST_CASE("four word toy converges to the two tight pairs") {
    // Hand simulation from init {{0,2,3},{1}}: centroids become {2,1};
    // word 0 prefers centroid 1 (0.9), word 3 prefers centroid 2 (0.85),
    // giving {0,1},{2,3}; the next pass fixes the centroids and changes
    // nothing.
    const auto sim = matrix_sim({
        {1.0, 0.9, 0.1, 0.1},
        {0.9, 1.0, 0.1, 0.1},
        {0.1, 0.1, 1.0, 0.85},
        {0.1, 0.1, 0.85, 1.0},
    });
    const auto words = iota_words(4);
    LexVarOptions options;
    options.threshold = 0.5;
    const Clustering out =
        lexvar_cluster(words, sim, make_clustering({{0, 2, 3}, {1}}), options);
    CHECK(member_sets(out) == std::vector<std::vector<WordId>>{{0, 1}, {2, 3}});
    out.validate(words);
}

TEST_CASE("threshold one yields singletons in one pass") {
    const auto sim = matrix_sim({
        {1.0, 0.9, 0.9},
        {0.9, 1.0, 0.9},
        {0.9, 0.9, 1.0},
    });
    const auto words = iota_words(3);
    LexVarOptions options;
    options.threshold = 1.0;
    int iterations = 0;
    options.observer = [&](const Clustering& c, const IterationStats& stats) {
        ++iterations;
        if (stats.iteration == 1) CHECK(c.size() == 3);
    };
    const Clustering out = lexvar_cluster(words, sim, make_clustering({{0, 1, 2}}), options);
    CHECK(out.size() == 3);
    CHECK(iterations == 2);  // second pass observes no membership change
}

TEST_CASE("threshold zero on identical words forms one cluster") {
    const auto sim = [](WordId, WordId) { return 1.0; };
    const auto words = iota_words(5);
    LexVarOptions options;
    options.threshold = 0.0;
    const Clustering out =
        lexvar_cluster(words, sim, init_random(words, 5, 99), options);
    CHECK(out.size() == 1);
    CHECK(out[0].members.size() == 5);
}

TEST_CASE("members end above the threshold to their centroid") {
    std::mt19937_64 rng(71);
    const std::size_t n = 40;
    const auto matrix = random_matrix(rng, n);
    const auto sim = matrix_sim(matrix);
    const auto words = iota_words(n);
    LexVarOptions options;
    options.threshold = 0.6;
    options.observer = [&](const Clustering& c, const IterationStats&) {
        c.validate(words);
        for (const auto& cluster : c.clusters()) {
            for (WordId w : cluster.members) {
                if (w != cluster.centroid) CHECK(matrix[w][cluster.centroid] > 0.6);
            }
        }
    };
    lexvar_cluster(words, sim, init_random(words, 8, 3), options);
}

TEST_CASE("per-iteration similarity queries respect the complexity bound") {
    std::mt19937_64 rng(72);
    const std::size_t n = 60;
    const auto sim = matrix_sim(random_matrix(rng, n));
    const auto words = iota_words(n);

    Clustering previous = init_random(words, 10, 4);
    LexVarOptions options;
    options.threshold = 0.55;
    options.observer = [&](const Clustering& current, const IterationStats& stats) {
        std::size_t bound = 0;
        for (const auto& cluster : previous.clusters())
            bound += cluster.members.size() * cluster.members.size();
        bound += n * previous.size();
        CHECK(stats.sim_queries <= bound);
        previous = current;
    };
    lexvar_cluster(words, sim, previous, options);
}

TEST_CASE("worker count and cache do not change the result") {
    std::mt19937_64 rng(73);
    const std::size_t n = 80;
    const auto sim = matrix_sim(random_matrix(rng, n));
    const auto words = iota_words(n);
    const Clustering init = init_random(words, 12, 5);

    LexVarOptions base;
    base.threshold = 0.5;
    const auto reference = member_sets(lexvar_cluster(words, sim, init, base));

    for (int workers : {2, 3, 7}) {
        LexVarOptions options = base;
        options.workers = workers;
        CHECK(member_sets(lexvar_cluster(words, sim, init, options)) == reference);
    }
    LexVarOptions uncached = base;
    uncached.cache = false;
    CHECK(member_sets(lexvar_cluster(words, sim, init, uncached)) == reference);
}

TEST_CASE("init_random properties") {
    const auto words = iota_words(30);
    const Clustering one = init_random(words, 1, 7);
    CHECK(one.size() == 1);
    CHECK(one[0].members.size() == 30);

    const Clustering many = init_random(words, 30, 7);
    many.validate(words);  // partition regardless of collisions

    CHECK_THROWS_AS(init_random(words, 0, 7), Error);
    CHECK_THROWS_AS(init_random(words, 31, 7), Error);

    // Deterministic in the seed.
    CHECK(member_sets(init_random(words, 6, 11)) == member_sets(init_random(words, 6, 11)));
    CHECK(member_sets(init_random(words, 6, 11)) != member_sets(init_random(words, 6, 12)));
}

TEST_CASE("threshold outside the unit interval is rejected") {
    const auto sim = [](WordId, WordId) { return 1.0; };
    const auto words = iota_words(3);
    LexVarOptions options;
    options.threshold = 1.5;
    CHECK_THROWS_AS(lexvar_cluster(words, sim, make_clustering({{0, 1, 2}}), options), Error);
    HierarchicalOptions h;
    h.threshold = -0.1;
    CHECK_THROWS_AS(hierarchical_cluster(words, sim, h), Error);
}

TEST_CASE("hierarchical matches the toy pairs with a full neighbourhood") {
    const auto sim = matrix_sim({
        {1.0, 0.9, 0.1, 0.1},
        {0.9, 1.0, 0.1, 0.1},
        {0.1, 0.1, 1.0, 0.85},
        {0.1, 0.1, 0.85, 1.0},
    });
    const auto words = iota_words(4);
    HierarchicalOptions options;
    options.threshold = 0.5;
    options.neighborhood = 3;
    const Clustering out = hierarchical_cluster(words, sim, options);
    CHECK(member_sets(out) == std::vector<std::vector<WordId>>{{0, 1}, {2, 3}});
}

TEST_CASE("hierarchical with threshold one stays singleton") {
    const auto sim = matrix_sim({
        {1.0, 0.9, 0.9},
        {0.9, 1.0, 0.9},
        {0.9, 0.9, 1.0},
    });
    HierarchicalOptions options;
    options.threshold = 1.0;
    const Clustering out = hierarchical_cluster(iota_words(3), sim, options);
    CHECK(out.size() == 3);
}

TEST_CASE("hierarchical cluster count never increases") {
    std::mt19937_64 rng(74);
    const std::size_t n = 50;
    const auto sim = matrix_sim(random_matrix(rng, n));
    const auto words = iota_words(n);
    HierarchicalOptions options;
    options.threshold = 0.55;
    options.neighborhood = 10;
    std::size_t last = n + 1;
    options.observer = [&](const Clustering& c, const IterationStats&) {
        c.validate(words);
        CHECK(c.size() <= last);
        last = c.size();
    };
    hierarchical_cluster(words, sim, options);
}

TEST_CASE("raising the threshold never lowers the final cluster count") {
    // Block-structured similarities, the shape the algorithm is built for:
    // nine groups of five, in-block 0.55..0.95, cross-block below 0.45.
    std::mt19937_64 rng(75);
    const std::size_t n = 45;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_block = i / 5 == j / 5;
            const double lo = same_block ? 0.55 : 0.0;
            const double hi = same_block ? 0.95 : 0.45;
            m[i][j] = m[j][i] = lo + (hi - lo) * ((rng() % 1000) / 999.0);
        }
    }
    const auto sim = matrix_sim(std::move(m));
    const auto words = iota_words(n);
    const Clustering init = init_random(words, 9, 13);
    std::size_t previous = 0;
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        LexVarOptions options;
        options.threshold = t;
        const std::size_t count = lexvar_cluster(words, sim, init, options).size();
        CHECK(count >= previous);
        previous = count;
    }
}
