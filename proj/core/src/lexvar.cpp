#include "lexnorm/lexvar.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <unordered_map>

#include "lexnorm/similarity.hpp"

namespace lexnorm {

namespace {

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t, int)>& body) {
    if (workers <= 1 || n < 2) {
        body(0, n, 0);
        return;
    }
    const int w = std::min<int>(workers, static_cast<int>(n));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    const std::size_t chunk = (n + static_cast<std::size_t>(w) - 1) / static_cast<std::size_t>(w);
    for (int k = 0; k < w; ++k) {
        const std::size_t begin = static_cast<std::size_t>(k) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&body, begin, end, k] { body(begin, end, k); });
    }
    for (auto& t : threads) t.join();
}

std::vector<WordId> sorted_words(std::span<const WordId> words) {
    std::vector<WordId> out(words.begin(), words.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() != words.size())
        throw Error(Error::Kind::domain, "duplicate word ids in the clustering universe");
    return out;
}

WordId centroid_of_members(const std::vector<WordId>& members, const SimilarityFn& sim,
                           PairCache* cache, std::size_t& queries) {
    WordId best = members.front();
    double best_sum = -1;
    for (WordId candidate : members) {
        double total = 0;
        for (WordId other : members) {
            total += cache != nullptr ? cache->get(candidate, other, sim) : sim(candidate, other);
        }
        queries += members.size();
        if (total > best_sum) {
            best_sum = total;
            best = candidate;  // ascending member order: ties keep the lowest id
        }
    }
    return best;
}

}  // namespace

Clustering init_random(std::span<const WordId> words, std::size_t count, std::uint64_t seed) {
    if (count < 1 || count > words.size())
        throw Error(Error::Kind::config, "random cluster count must be in 1..N");
    const std::vector<WordId> ordered = sorted_words(words);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<WordId>> buckets(count);
    for (WordId w : ordered) buckets[rng() % count].push_back(w);
    Clustering out;
    for (auto& members : buckets) {
        if (!members.empty()) out.add_cluster(std::move(members));
    }
    return out;
}

WordId find_centroid(const Cluster& cluster, const SimilarityFn& sim) {
    if (cluster.members.empty()) throw Error(Error::Kind::empty_input, "empty cluster");
    std::size_t queries = 0;
    return centroid_of_members(cluster.members, sim, nullptr, queries);
}

Clustering lexvar_cluster(std::span<const WordId> words, const SimilarityFn& sim,
                          Clustering init, const LexVarOptions& options) {
    if (options.threshold < 0.0 || options.threshold > 1.0)
        throw Error(Error::Kind::config, "threshold must be in [0,1]");
    if (options.stop.max_iters < 1)
        throw Error(Error::Kind::config, "max iterations must be >= 1");
    const std::vector<WordId> ordered = sorted_words(words);
    init.validate(ordered);

    const std::size_t n = ordered.size();
    const double t = options.threshold;
    const int workers = std::max(1, options.workers);

    std::vector<std::vector<WordId>> clusters;
    clusters.reserve(init.size());
    for (const Cluster& c : init.clusters()) clusters.push_back(c.members);

    // Canonical membership key: lowest member id of the word's cluster.
    std::unordered_map<WordId, WordId> prev_key;
    for (const auto& members : clusters) {
        for (WordId w : members) prev_key[w] = members.front();
    }

    Clustering result = init.canonical();
    for (int iter = 1; iter <= options.stop.max_iters; ++iter) {
        std::vector<PairCache> caches(static_cast<std::size_t>(workers));
        std::vector<std::size_t> worker_queries(static_cast<std::size_t>(workers), 0);

        // Centroid step.
        const std::size_t k_clusters = clusters.size();
        std::vector<WordId> centroids(k_clusters);
        parallel_for(k_clusters, workers, [&](std::size_t begin, std::size_t end, int worker) {
            PairCache* cache = options.cache ? &caches[static_cast<std::size_t>(worker)] : nullptr;
            for (std::size_t c = begin; c < end; ++c) {
                centroids[c] = centroid_of_members(clusters[c], sim, cache,
                                                   worker_queries[static_cast<std::size_t>(worker)]);
            }
        });

        // Assignment step against the frozen centroid snapshot.
        std::vector<std::int32_t> target(n);
        parallel_for(n, workers, [&](std::size_t begin, std::size_t end, int worker) {
            PairCache* cache = options.cache ? &caches[static_cast<std::size_t>(worker)] : nullptr;
            std::size_t& queries = worker_queries[static_cast<std::size_t>(worker)];
            for (std::size_t i = begin; i < end; ++i) {
                const WordId w = ordered[i];
                std::int32_t best = -1;
                double best_sim = t;  // assignments need similarity strictly above t
                for (std::size_t c = 0; c < k_clusters; ++c) {
                    const double s =
                        cache != nullptr ? cache->get(w, centroids[c], sim) : sim(w, centroids[c]);
                    if (s > best_sim) {
                        best_sim = s;
                        best = static_cast<std::int32_t>(c);  // first max wins: lowest index
                    }
                }
                target[i] = best;
                queries += k_clusters;
            }
        });

        // Rebuild clusters; new singletons are founded in word order and
        // become assignment targets only from the next iteration.
        std::vector<std::vector<WordId>> next(k_clusters);
        std::vector<std::vector<WordId>> singletons;
        for (std::size_t i = 0; i < n; ++i) {
            if (target[i] >= 0)
                next[static_cast<std::size_t>(target[i])].push_back(ordered[i]);
            else
                singletons.push_back({ordered[i]});
        }

        Clustering built;
        std::size_t changed = 0;
        auto account = [&](const std::vector<WordId>& members) {
            for (WordId w : members) {
                if (prev_key[w] != members.front()) ++changed;
            }
        };
        for (std::size_t c = 0; c < k_clusters; ++c) {
            if (next[c].empty()) continue;
            WordId centroid = centroids[c];
            if (!std::binary_search(next[c].begin(), next[c].end(), centroid)) {
                // Snapshot centroid defected on an exact tie; fall back to the
                // medoid of what remains.
                std::size_t extra = 0;
                centroid = centroid_of_members(next[c], sim, nullptr, extra);
                worker_queries[0] += extra;
            }
            account(next[c]);
            built.add_cluster(std::move(next[c]), centroid);
        }
        for (auto& single : singletons) {
            account(single);
            const WordId founder = single.front();
            built.add_cluster(std::move(single), founder);
        }
        built.validate(ordered);

        prev_key.clear();
        clusters.clear();
        for (const Cluster& c : built.clusters()) {
            for (WordId w : c.members) prev_key[w] = c.members.front();
            clusters.push_back(c.members);
        }

        IterationStats stats;
        stats.iteration = iter;
        stats.changed = changed;
        stats.cluster_count = built.size();
        for (std::size_t q : worker_queries) stats.sim_queries += q;
        result = std::move(built);
        if (options.observer) options.observer(result, stats);

        if (static_cast<double>(changed) / static_cast<double>(n) < options.stop.epsilon) break;
    }
    return result;
}

Clustering hierarchical_cluster(std::span<const WordId> words, const SimilarityFn& sim,
                                const HierarchicalOptions& options) {
    if (options.threshold < 0.0 || options.threshold > 1.0)
        throw Error(Error::Kind::config, "threshold must be in [0,1]");
    if (options.neighborhood < 1)
        throw Error(Error::Kind::config, "neighborhood must be >= 1");
    const std::vector<WordId> ordered = sorted_words(words);
    const std::size_t n = ordered.size();
    const double t = options.threshold;

    // Static neighborhoods: similarities never change, so each word's best
    // qualifying neighbour is fixed. It is the head of the neighbourhood
    // sorted by similarity descending, ties by id ascending.
    std::size_t setup_queries = 0;
    std::vector<std::int64_t> target(n, -1);  // index into `ordered`, -1 = stay
    {
        std::unordered_map<WordId, std::size_t> position;
        for (std::size_t i = 0; i < n; ++i) position[ordered[i]] = i;
        std::vector<std::pair<double, WordId>> row;
        row.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            row.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                row.emplace_back(sim(ordered[i], ordered[j]), ordered[j]);
            }
            setup_queries += n - 1;
            const std::size_t keep = std::min<std::size_t>(
                static_cast<std::size_t>(options.neighborhood), row.size());
            std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(keep),
                              row.end(), [](const auto& a, const auto& b) {
                                  if (a.first != b.first) return a.first > b.first;
                                  return a.second < b.second;
                              });
            if (keep > 0 && row[0].first > t) target[i] = static_cast<std::int64_t>(position[row[0].second]);
        }
    }

    // All singletons initially.
    std::vector<std::vector<WordId>> members(n);
    std::vector<std::size_t> cluster_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = {ordered[i]};
        cluster_of[i] = i;
    }

    Clustering result;
    bool have_result = false;
    for (int iter = 1; iter <= options.stop.max_iters; ++iter) {
        std::size_t moved = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (target[i] < 0) continue;
            const std::size_t from = cluster_of[i];
            const std::size_t to = cluster_of[static_cast<std::size_t>(target[i])];
            if (from == to) continue;
            auto& src = members[from];
            src.erase(std::find(src.begin(), src.end(), ordered[i]));
            members[to].push_back(ordered[i]);
            cluster_of[i] = to;
            ++moved;
        }

        std::size_t centroid_queries = 0;
        Clustering built;
        {
            std::vector<std::vector<WordId>> live;
            for (auto& m : members) {
                if (m.empty()) continue;
                std::vector<WordId> sorted(m.begin(), m.end());
                std::sort(sorted.begin(), sorted.end());
                live.push_back(std::move(sorted));
            }
            std::sort(live.begin(), live.end(),
                      [](const auto& a, const auto& b) { return a.front() < b.front(); });
            for (auto& m : live) {
                const WordId centroid = centroid_of_members(m, sim, nullptr, centroid_queries);
                built.add_cluster(std::move(m), centroid);
            }
        }
        built.validate(ordered);

        IterationStats stats;
        stats.iteration = iter;
        stats.changed = moved;
        stats.cluster_count = built.size();
        stats.sim_queries = centroid_queries + (iter == 1 ? setup_queries : 0);
        result = std::move(built);
        have_result = true;
        if (options.observer) options.observer(result, stats);
        if (moved == 0) break;
    }
    if (!have_result) throw Error(Error::Kind::config, "max iterations must be >= 1");
    return result;
}

}  // namespace lexnorm
