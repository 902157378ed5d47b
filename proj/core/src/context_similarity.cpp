#include "lexnorm/context_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lexnorm {

namespace {

double directed_score(std::span<const std::uint32_t> from, std::span<const std::uint32_t> to,
                      int K) {
    // Each feature of `to` may be consumed by at most one match.
    bool consumed[16] = {};
    double total = 0;
    for (std::size_t k = 0; k < from.size(); ++k) {
        for (std::size_t l = 0; l < to.size(); ++l) {
            if (!consumed[l] && to[l] == from[k]) {
                consumed[l] = true;
                total += static_cast<double>(K + 1) -
                         static_cast<double>(std::max(k, l) + 1);
                break;
            }
        }
    }
    const double denom = static_cast<double>(K) * static_cast<double>(K + 1) / 2.0;
    return total / denom;
}

}  // namespace

double context_similarity(std::span<const std::uint32_t> ctx_a,
                          std::span<const std::uint32_t> ctx_b, int K) {
    if (K < 1) throw Error(Error::Kind::config, "context size K must be >= 1");
    if (K > 15) throw Error(Error::Kind::config, "context size K must be <= 15");
    if (ctx_a.size() > static_cast<std::size_t>(K) || ctx_b.size() > static_cast<std::size_t>(K))
        throw Error(Error::Kind::config, "context list longer than K");
    return 0.5 * (directed_score(ctx_a, ctx_b, K) + directed_score(ctx_b, ctx_a, K));
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open embeddings: " + path);

    EmbeddingTable table;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string surface;
        row >> surface;
        std::vector<double> vec;
        double v;
        while (row >> v) vec.push_back(v);
        if (first) {
            first = false;
            // word2vec-style "count dimension" header
            bool numeric = !surface.empty() &&
                           surface.find_first_not_of("0123456789") == std::string::npos;
            if (numeric && vec.size() <= 1) continue;
        }
        if (vec.empty())
            throw Error(Error::Kind::io,
                        "embedding line " + std::to_string(lineno) + ": no vector components");
        for (double component : vec) {
            if (!std::isfinite(component))
                throw Error(Error::Kind::io,
                            "embedding line " + std::to_string(lineno) + ": non-finite component");
        }
        table.add(surface, std::move(vec));
    }
    return table;
}

void EmbeddingTable::add(std::string_view surface, std::vector<double> vector) {
    if (dimension_ == 0) dimension_ = vector.size();
    if (vector.size() != dimension_)
        throw Error(Error::Kind::io, "embedding dimension mismatch for \"" + std::string(surface) +
                                         "\"");
    vectors_[std::string(surface)] = std::move(vector);
}

const std::vector<double>* EmbeddingTable::find(std::string_view surface) const {
    auto it = vectors_.find(std::string(surface));
    return it == vectors_.end() ? nullptr : &it->second;
}

double embedding_cosine(std::string_view a, std::string_view b, const EmbeddingTable& table) {
    const auto* va = table.find(a);
    const auto* vb = table.find(b);
    if (va == nullptr || vb == nullptr)
        throw Error(Error::Kind::domain, "word missing from the embedding table");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < va->size(); ++i) {
        dot += (*va)[i] * (*vb)[i];
        na += (*va)[i] * (*va)[i];
        nb += (*vb)[i] * (*vb)[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    const double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::max(0.0, std::min(1.0, cosine));
}

}  // namespace lexnorm
