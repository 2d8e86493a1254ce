#include "spectra1d/young.hpp"

#include <numeric>

#include "spectra1d/errors.hpp"
#include "spectra1d/permutation.hpp"

namespace spectra1d {

YoungDiagram::YoungDiagram(std::vector<int> r) : rows(std::move(r)) {
    if (rows.empty())
        throw Error("group_theory", "Young diagram needs at least one row");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 1)
            throw Error("group_theory", "Young diagram rows must be positive");
        if (i > 0 && rows[i] > rows[i - 1])
            throw Error("group_theory", "Young diagram rows must be weakly decreasing");
    }
    if (size() > kMaxDegree)
        throw Error("group_theory", "Young diagram size exceeds the library cap of " +
                                        std::to_string(kMaxDegree));
}

int YoungDiagram::size() const { return std::accumulate(rows.begin(), rows.end(), 0); }

std::string YoungDiagram::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(rows[i]);
    }
    return s + "]";
}

YoungDiagram conjugate(const YoungDiagram& d) {
    std::vector<int> cols(d.rows[0], 0);
    for (int r : d.rows)
        for (int c = 0; c < r; ++c) ++cols[c];
    return YoungDiagram(std::move(cols));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& acc,
                    std::vector<YoungDiagram>& out) {
    if (remaining == 0) {
        out.push_back(YoungDiagram(acc));
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        acc.push_back(p);
        partitions_rec(remaining - p, p, acc, out);
        acc.pop_back();
    }
}

std::vector<int> hook_lengths(const YoungDiagram& d) {
    const auto conj = conjugate(d);
    std::vector<int> hooks;
    for (int r = 0; r < d.row_count(); ++r)
        for (int c = 0; c < d.rows[r]; ++c)
            hooks.push_back((d.rows[r] - c) + (conj.rows[c] - r) - 1);
    return hooks;
}

} // namespace

std::vector<YoungDiagram> partitions_of(int n) {
    if (n < 1 || n > kMaxDegree)
        throw Error("group_theory", "partitions_of: n out of range 1.." + std::to_string(kMaxDegree));
    std::vector<YoungDiagram> out;
    std::vector<int> acc;
    partitions_rec(n, n, acc, out);
    return out;
}

std::int64_t standard_tableaux_count(const YoungDiagram& d) {
    std::int64_t nfact = 1;
    for (int i = 2; i <= d.size(); ++i) nfact *= i;
    std::int64_t hp = 1;
    for (int h : hook_lengths(d)) hp *= h;
    return nfact / hp;
}

std::int64_t semistandard_count(const YoungDiagram& d, int J) {
    if (J < 1)
        throw Error("group_theory", "semistandard_count: J must be >= 1");
    if (d.row_count() > J) return 0;
    // Stanley's hook-content formula: prod (J + content) / prod hooks.
    std::int64_t num = 1;
    for (int r = 0; r < d.row_count(); ++r)
        for (int c = 0; c < d.rows[r]; ++c) num *= (J + c - r);
    std::int64_t hp = 1;
    for (int h : hook_lengths(d)) hp *= h;
    return num / hp;
}

namespace {

void tableaux_rec(const YoungDiagram& d, std::vector<int>& fill, std::vector<int>& seq, int entry,
                  std::vector<std::vector<int>>& out) {
    if (entry > d.size()) {
        out.push_back(seq);
        return;
    }
    for (int r = 0; r < d.row_count(); ++r) {
        if (fill[r] >= d.rows[r]) continue;
        if (r > 0 && fill[r] >= fill[r - 1]) continue; // column would decrease
        ++fill[r];
        seq.push_back(r);
        tableaux_rec(d, fill, seq, entry + 1, out);
        seq.pop_back();
        --fill[r];
    }
}

} // namespace

std::vector<std::vector<int>> standard_tableaux_row_sequences(const YoungDiagram& d) {
    std::vector<std::vector<int>> out;
    std::vector<int> fill(d.row_count(), 0), seq;
    tableaux_rec(d, fill, seq, 1, out);
    return out;
}

std::vector<int> tableau_contents(const std::vector<int>& row_seq) {
    std::vector<int> fill(row_seq.size(), 0), contents;
    contents.reserve(row_seq.size());
    for (int r : row_seq) {
        contents.push_back(fill[r] - r);
        ++fill[r];
    }
    return contents;
}

std::int64_t spin_multiplicity(const YoungDiagram& spatial, Statistics stat, int J) {
    return semistandard_count(stat == Statistics::boson ? spatial : conjugate(spatial), J);
}

} // namespace spectra1d
