#include "lexnorm/clustering.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lexnorm/corpus.hpp"

namespace lexnorm {

std::int64_t Clustering::cluster_of(WordId w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t Clustering::singleton_count() const {
    std::size_t n = 0;
    for (const auto& c : clusters_)
        if (c.members.size() == 1) ++n;
    return n;
}

void Clustering::add_cluster(std::vector<WordId> members, WordId centroid) {
    if (members.empty()) throw Error(Error::Kind::empty_input, "cluster must have members");
    std::sort(members.begin(), members.end());
    const auto idx = static_cast<std::uint32_t>(clusters_.size());
    for (WordId w : members) {
        if (!index_.emplace(w, idx).second)
            throw Error(Error::Kind::domain, "word appears in two clusters");
    }
    Cluster c;
    c.centroid = centroid == kInvalidWord ? members.front() : centroid;
    c.members = std::move(members);
    clusters_.push_back(std::move(c));
}

void Clustering::set_centroid(std::size_t cluster, WordId centroid) {
    clusters_.at(cluster).centroid = centroid;
}

void Clustering::validate(std::span<const WordId> words) const {
    if (index_.size() != words.size())
        throw Error(Error::Kind::domain, "clustering does not cover the word set");
    for (WordId w : words) {
        if (index_.find(w) == index_.end())
            throw Error(Error::Kind::domain, "word missing from the clustering");
    }
    for (const auto& c : clusters_) {
        if (c.members.empty()) throw Error(Error::Kind::domain, "empty cluster");
        if (!std::binary_search(c.members.begin(), c.members.end(), c.centroid))
            throw Error(Error::Kind::domain, "centroid not a member of its cluster");
    }
}

Clustering Clustering::canonical() const {
    std::vector<Cluster> sorted = clusters_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Cluster& a, const Cluster& b) { return a.members.front() < b.members.front(); });
    Clustering out;
    for (auto& c : sorted) out.add_cluster(std::move(c.members), c.centroid);
    return out;
}

void save_clustering_tsv(std::ostream& out, const Clustering& clustering, const Vocabulary& vocab) {
    const Clustering canon = clustering.canonical();
    std::vector<std::pair<WordId, std::uint32_t>> rows;  // word, cluster id
    rows.reserve(canon.word_count());
    for (std::uint32_t ci = 0; ci < canon.size(); ++ci) {
        for (WordId w : canon[ci].members) rows.emplace_back(w, ci);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [w, ci] : rows) {
        out << vocab[w].surface << '\t' << ci << '\t' << (canon[ci].centroid == w ? 1 : 0) << '\n';
    }
}

void save_clustering_tsv(const std::string& path, const Clustering& clustering,
                         const Vocabulary& vocab) {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::io, "cannot write clustering: " + path);
    save_clustering_tsv(out, clustering, vocab);
}

Clustering load_clustering_tsv(std::istream& in, Vocabulary& vocab) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<WordId>> members;
    std::vector<WordId> centroids;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string surface, cluster_str, centroid_str;
        if (!std::getline(row, surface, '\t') || !std::getline(row, cluster_str, '\t') ||
            !std::getline(row, centroid_str))
            throw Error(Error::Kind::io,
                        "clustering line " + std::to_string(lineno) + ": expected 3 columns");
        std::size_t cluster = 0;
        try {
            cluster = std::stoul(cluster_str);
        } catch (const std::exception&) {
            throw Error(Error::Kind::io, "clustering line " + std::to_string(lineno) + ": bad id");
        }
        WordId w = vocab.add(surface);
        if (cluster >= members.size()) {
            members.resize(cluster + 1);
            centroids.resize(cluster + 1, kInvalidWord);
        }
        members[cluster].push_back(w);
        if (centroid_str == "1") centroids[cluster] = w;
    }
    Clustering out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].empty())
            throw Error(Error::Kind::io, "clustering file skips cluster id " + std::to_string(i));
        out.add_cluster(std::move(members[i]), centroids[i]);
    }
    return out;
}

Clustering load_clustering_tsv(const std::string& path, Vocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open clustering: " + path);
    return load_clustering_tsv(in, vocab);
}

}  // namespace lexnorm
