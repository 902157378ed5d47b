#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lexnorm/clustering.hpp"
#include "lexnorm/common.hpp"

namespace lexnorm {

using SimilarityFn = std::function<double(WordId, WordId)>;

struct StopRule {
    double epsilon = 0.001;  // stop when the changed-word fraction drops below
    int max_iters = 100;
};

struct IterationStats {
    int iteration = 0;
    std::size_t sim_queries = 0;   // pair similarity lookups this iteration
    std::size_t changed = 0;       // words whose cluster membership changed
    std::size_t cluster_count = 0;
};

/// Called after each iteration with the current partition.
using IterationObserver = std::function<void(const Clustering&, const IterationStats&)>;

struct LexVarOptions {
    double threshold = 0.3;
    StopRule stop;
    int workers = 1;
    bool cache = true;  // per-iteration pair cache; results identical either way
    IterationObserver observer;
};

/// Uniform random assignment of words to `count` clusters (fixed algorithm:
/// mt19937_64 modulo count), empty clusters dropped.
Clustering init_random(std::span<const WordId> words, std::size_t count, std::uint64_t seed);

/// Member maximising the sum of similarities to all cluster members
/// (self included); ties go to the lowest word id.
WordId find_centroid(const Cluster& cluster, const SimilarityFn& sim);

/// Iterative centroid/assignment clustering: each word joins the cluster
/// whose centroid is most similar with similarity strictly above the
/// threshold (ties to the lowest cluster index), otherwise founds a new
/// singleton. Stops when the fraction of words changing clusters falls
/// below stop.epsilon or after stop.max_iters.
Clustering lexvar_cluster(std::span<const WordId> words, const SimilarityFn& sim,
                          Clustering init, const LexVarOptions& options);

struct HierarchicalOptions {
    double threshold = 0.3;
    int neighborhood = 10;
    StopRule stop;
    IterationObserver observer;
};

/// Starts from singletons; each word repeatedly moves to the cluster of its
/// most similar precomputed neighbour with similarity strictly above the
/// threshold, until no word moves. Words are processed in ascending id
/// order; cluster centroids are refreshed after every pass.
Clustering hierarchical_cluster(std::span<const WordId> words, const SimilarityFn& sim,
                                const HierarchicalOptions& options);

}  // namespace lexnorm
