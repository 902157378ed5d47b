#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexnorm/common.hpp"

namespace lexnorm {

class Vocabulary;

struct Cluster {
    std::vector<WordId> members;  // sorted ascending
    WordId centroid = kInvalidWord;
};

/// A partition of a word set into clusters, each with a centroidal word.
class Clustering {
public:
    Clustering() = default;

    std::size_t size() const { return clusters_.size(); }
    bool empty() const { return clusters_.empty(); }
    const Cluster& operator[](std::size_t i) const { return clusters_[i]; }
    const std::vector<Cluster>& clusters() const { return clusters_; }

    /// Index of the cluster holding `w`, or -1 if `w` is not clustered.
    std::int64_t cluster_of(WordId w) const;

    std::size_t word_count() const { return index_.size(); }
    std::size_t singleton_count() const;

    /// Appends a cluster. Members are sorted; the centroid defaults to the
    /// lowest member id when none is given.
    void add_cluster(std::vector<WordId> members, WordId centroid = kInvalidWord);
    void set_centroid(std::size_t cluster, WordId centroid);

    /// Throws if the clusters are not a partition of `words` or a centroid
    /// is missing from its cluster.
    void validate(std::span<const WordId> words) const;

    /// Stable canonical form: members sorted, clusters ordered by lowest
    /// member id, centroids preserved.
    Clustering canonical() const;

private:
    std::vector<Cluster> clusters_;
    std::unordered_map<WordId, std::uint32_t> index_;
};

/// TSV rows `surface<TAB>cluster_id<TAB>is_centroid(0|1)`, one per word in
/// word-id order; cluster ids are renumbered by lowest member id.
void save_clustering_tsv(std::ostream& out, const Clustering& clustering, const Vocabulary& vocab);
void save_clustering_tsv(const std::string& path, const Clustering& clustering, const Vocabulary& vocab);

/// Reads the format written by save_clustering_tsv, resolving surfaces
/// against `vocab` (unknown surfaces are added).
Clustering load_clustering_tsv(std::istream& in, Vocabulary& vocab);
Clustering load_clustering_tsv(const std::string& path, Vocabulary& vocab);

}  // namespace lexnorm
