#include "lexnorm/string_similarity.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lexnorm {

namespace {

constexpr double kMaxCost = 1.0;

double capped(double cost) { return std::min(std::max(cost, 0.0), kMaxCost); }

}  // namespace

CostMatrix::CostMatrix() {
    for (auto& row : sub_) row.fill(1.0);
    indel_.fill(1.0);
}

void CostMatrix::set_substitution(char a, char b, double cost) {
    auto ua = static_cast<unsigned char>(a);
    auto ub = static_cast<unsigned char>(b);
    sub_[ua][ub] = sub_[ub][ua] = capped(cost);
}

void CostMatrix::set_indel(char c, double cost) {
    indel_[static_cast<unsigned char>(c)] = capped(cost);
}

CostMatrix CostMatrix::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::io, "cannot open cost matrix: " + path);

    struct Raw {
        double sum = 0;
        int n = 0;
    };
    // Keyed (a, b) with a <= b so directed duplicates average out.
    std::array<std::array<Raw, 128>, 128> sub{};
    std::array<Raw, 128> ins{};   // rows "-<TAB>c"
    std::array<Raw, 128> del{};   // rows "c<TAB>-"

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string src, tgt, cost_str;
        if (!std::getline(row, src, '\t') || !std::getline(row, tgt, '\t') ||
            !std::getline(row, cost_str))
            throw Error(Error::Kind::io,
                        "cost matrix line " + std::to_string(lineno) + ": expected src<TAB>tgt<TAB>cost");
        if (src.size() != 1 || tgt.size() != 1)
            throw Error(Error::Kind::io,
                        "cost matrix line " + std::to_string(lineno) + ": symbols must be single bytes");
        double cost = 0;
        try {
            cost = std::stod(cost_str);
        } catch (const std::exception&) {
            throw Error(Error::Kind::io, "cost matrix line " + std::to_string(lineno) + ": bad cost");
        }
        if (!(cost >= 0))
            throw Error(Error::Kind::io,
                        "cost matrix line " + std::to_string(lineno) + ": cost must be >= 0");
        const char s = src[0], t = tgt[0];
        if (s == '-' && t == '-')
            throw Error(Error::Kind::io, "cost matrix line " + std::to_string(lineno) + ": null pair");
        if (s == '-') {
            auto& r = ins[static_cast<unsigned char>(t)];
            r.sum += cost;
            ++r.n;
        } else if (t == '-') {
            auto& r = del[static_cast<unsigned char>(s)];
            r.sum += cost;
            ++r.n;
        } else {
            unsigned char a = static_cast<unsigned char>(std::min(s, t));
            unsigned char b = static_cast<unsigned char>(std::max(s, t));
            if (a >= 128 || b >= 128)
                throw Error(Error::Kind::io,
                            "cost matrix line " + std::to_string(lineno) + ": non-ASCII symbol");
            auto& r = sub[a][b];
            r.sum += cost;
            ++r.n;
        }
    }

    CostMatrix out;
    for (int a = 0; a < 128; ++a) {
        for (int b = a; b < 128; ++b) {
            if (sub[a][b].n > 0)
                out.set_substitution(static_cast<char>(a), static_cast<char>(b),
                                     sub[a][b].sum / sub[a][b].n);
        }
        // Insertion and deletion share one indel cost; when only one
        // direction was learned it is adopted for both.
        const Raw& i = ins[a];
        const Raw& d = del[a];
        if (i.n > 0 && d.n > 0)
            out.set_indel(static_cast<char>(a), (i.sum / i.n + d.sum / d.n) / 2.0);
        else if (i.n > 0)
            out.set_indel(static_cast<char>(a), i.sum / i.n);
        else if (d.n > 0)
            out.set_indel(static_cast<char>(a), d.sum / d.n);
    }
    return out;
}

void CostMatrix::save_tsv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::io, "cannot write cost matrix: " + path);
    save_tsv(static_cast<std::ostream&>(out));
}

void CostMatrix::save_tsv(std::ostream& out) const {
    out << std::setprecision(17);  // lossless double round trip
    for (int a = 0; a < kAlphabet; ++a) {
        for (int b = a + 1; b < kAlphabet; ++b) {
            if (sub_[a][b] != 1.0) {
                out << static_cast<char>(a) << '\t' << static_cast<char>(b) << '\t' << sub_[a][b]
                    << '\n';
            }
        }
    }
    for (int c = 0; c < kAlphabet; ++c) {
        if (indel_[c] != 1.0) out << '-' << '\t' << static_cast<char>(c) << '\t' << indel_[c] << '\n';
    }
}

int lcs_length(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) return 0;
    const std::size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

double edit_distance(std::string_view a, std::string_view b, const CostMatrix& costs) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<double> prev(m + 1), cur(m + 1);
    prev[0] = 0;
    for (std::size_t j = 1; j <= m; ++j)
        prev[j] = prev[j - 1] + costs.ins(static_cast<unsigned char>(b[j - 1]));
    for (std::size_t i = 1; i <= n; ++i) {
        const unsigned char ca = static_cast<unsigned char>(a[i - 1]);
        cur[0] = prev[0] + costs.del(ca);
        for (std::size_t j = 1; j <= m; ++j) {
            const unsigned char cb = static_cast<unsigned char>(b[j - 1]);
            double best = prev[j - 1] + costs.sub(ca, cb);
            best = std::min(best, prev[j] + costs.del(ca));
            best = std::min(best, cur[j - 1] + costs.ins(cb));
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

double string_similarity(std::string_view a, std::string_view b, const CostMatrix& costs) {
    if (a.empty() || b.empty())
        throw Error(Error::Kind::domain, "string similarity is undefined for empty tokens");
    const double lcs = lcs_length(a, b);
    const double min_len = static_cast<double>(std::min(a.size(), b.size()));
    return lcs / (min_len + edit_distance(a, b, costs));
}

std::vector<std::uint16_t> skipgram_set(std::string_view word) {
    std::vector<std::uint16_t> grams;
    if (word.size() < 3) return grams;
    grams.reserve(word.size() - 2);
    for (std::size_t k = 0; k + 2 < word.size(); ++k) {
        grams.push_back(static_cast<std::uint16_t>(
            (static_cast<unsigned char>(word[k]) << 8) | static_cast<unsigned char>(word[k + 2])));
    }
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    return grams;
}

double skipgram_similarity(std::string_view a, std::string_view b) {
    const auto ga = skipgram_set(a);
    const auto gb = skipgram_set(b);
    if (ga.empty() && gb.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < ga.size() && j < gb.size()) {
        if (ga[i] == gb[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (ga[i] < gb[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = ga.size() + gb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace lexnorm
