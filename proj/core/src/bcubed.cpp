#include "lexnorm/bcubed.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lexnorm/corpus.hpp"

namespace lexnorm {

GoldStandard GoldStandard::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open gold standard: " + path);
    GoldStandard gold;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw Error(Error::Kind::io,
                        "gold line " + std::to_string(lineno) + ": expected surface<TAB>group");
        gold.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return gold;
}

void GoldStandard::save_tsv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::io, "cannot write gold standard: " + path);
    std::vector<std::pair<std::string, std::uint32_t>> rows(group_of_.begin(), group_of_.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [surface, group] : rows) out << surface << '\t' << group_names_[group] << '\n';
}

void GoldStandard::add(std::string_view surface, std::string_view group) {
    auto [it, inserted] = group_ids_.emplace(std::string(group),
                                             static_cast<std::uint32_t>(group_names_.size()));
    if (inserted) group_names_.emplace_back(group);
    group_of_[std::string(surface)] = it->second;
}

std::optional<std::uint32_t> GoldStandard::group(std::string_view surface) const {
    auto it = group_of_.find(std::string(surface));
    if (it == group_of_.end()) return std::nullopt;
    return it->second;
}

int correctness(WordId a, WordId b, const Clustering& pred, const GoldStandard& gold,
                const Vocabulary& vocab) {
    const auto ca = pred.cluster_of(a);
    const auto cb = pred.cluster_of(b);
    if (ca < 0 || cb < 0) throw Error(Error::Kind::domain, "word missing from the clustering");
    const auto ga = gold.group(vocab[a].surface);
    const auto gb = gold.group(vocab[b].surface);
    if (!ga || !gb) throw Error(Error::Kind::domain, "word missing from the gold standard");
    return (ca == cb && *ga == *gb) ? 1 : 0;
}

EvalReport bcubed_eval(const Clustering& pred, const GoldStandard& gold,
                       std::span<const WordId> eval_set, const Vocabulary& vocab) {
    if (eval_set.empty()) throw Error(Error::Kind::empty_input, "empty evaluation set");

    // Per-word predicted cluster and gold group, restricted to eval_set.
    struct Assignment {
        std::uint32_t cluster;
        std::uint32_t group;
    };
    std::vector<Assignment> assign;
    assign.reserve(eval_set.size());
    std::unordered_map<std::uint32_t, std::uint32_t> cluster_size;
    std::unordered_map<std::uint32_t, std::uint32_t> group_size;
    std::unordered_map<std::uint64_t, std::uint32_t> joint_size;  // (cluster, group) pairs

    for (WordId w : eval_set) {
        const auto cluster = pred.cluster_of(w);
        if (cluster < 0) throw Error(Error::Kind::domain, "eval word missing from the clustering");
        const auto group = gold.group(vocab[w].surface);
        if (!group) throw Error(Error::Kind::domain, "eval word missing from the gold standard");
        const Assignment a{static_cast<std::uint32_t>(cluster), *group};
        assign.push_back(a);
        ++cluster_size[a.cluster];
        ++group_size[a.group];
        ++joint_size[(static_cast<std::uint64_t>(a.cluster) << 32) | a.group];
    }

    double sum_p = 0, sum_r = 0, sum_f = 0;
    for (const Assignment& a : assign) {
        const double joint =
            joint_size[(static_cast<std::uint64_t>(a.cluster) << 32) | a.group];
        const double p = joint / cluster_size[a.cluster];
        const double r = joint / group_size[a.group];
        sum_p += p;
        sum_r += r;
        sum_f += 2.0 * p * r / (p + r);  // p, r > 0 because C(w,w) = 1
    }

    EvalReport report;
    const double n = static_cast<double>(assign.size());
    report.precision = sum_p / n;
    report.recall = sum_r / n;
    report.f_measure = sum_f / n;
    report.predicted_clusters = cluster_size.size();
    report.gold_clusters = group_size.size();
    report.evaluated_words = assign.size();
    for (const auto& [cluster, size] : cluster_size) {
        if (size == 1) ++report.singleton_clusters;
    }
    return report;
}

void write_report(std::ostream& out, const EvalReport& report, bool tsv_row) {
    std::ostringstream fmt;
    fmt << std::fixed << std::setprecision(6);
    fmt << "precision\t" << report.precision << '\n';
    fmt << "recall\t" << report.recall << '\n';
    fmt << "f_measure\t" << report.f_measure << '\n';
    fmt << "predicted_clusters\t" << report.predicted_clusters << '\n';
    fmt << "gold_clusters\t" << report.gold_clusters << '\n';
    fmt << "singleton_clusters\t" << report.singleton_clusters << '\n';
    fmt << "evaluated_words\t" << report.evaluated_words << '\n';
    if (tsv_row) {
        fmt << report.precision << '\t' << report.recall << '\t' << report.f_measure << '\t'
            << report.predicted_clusters << '\t' << report.gold_clusters << '\t'
            << report.singleton_clusters << '\t' << report.evaluated_words << '\n';
    }
    out << fmt.str();
}

}  // namespace lexnorm
