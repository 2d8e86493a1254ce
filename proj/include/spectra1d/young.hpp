#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace spectra1d {

// Integer partition of N, weakly decreasing positive rows.
struct YoungDiagram {
    std::vector<int> rows;

    explicit YoungDiagram(std::vector<int> r);

    int size() const; // N = sum of rows
    int row_count() const { return static_cast<int>(rows.size()); }
    std::string to_string() const; // e.g. [3,2]

    auto operator<=>(const YoungDiagram&) const = default;
};

YoungDiagram conjugate(const YoungDiagram& d);

// All partitions of n, listed from [n] down to [1^n] (reverse lexicographic).
std::vector<YoungDiagram> partitions_of(int n);

// Number of standard Young tableaux of shape d (hook length formula).
std::int64_t standard_tableaux_count(const YoungDiagram& d);

// Number of semistandard tableaux of shape d with entries in 1..J; zero when
// d has more than J rows.
std::int64_t semistandard_count(const YoungDiagram& d, int J);

// Standard tableaux of shape d encoded as row sequences: element m-1 holds the
// 0-based row receiving entry m.  Listed in ascending lexicographic order of
// the sequence; this fixes the Gelfand-Tsetlin basis order everywhere.
std::vector<std::vector<int>> standard_tableaux_row_sequences(const YoungDiagram& d);

// Contents (column - row, 0-based) of entries 1..N as they are placed along a
// row sequence; entry 1 always has content 0.
std::vector<int> tableau_contents(const std::vector<int>& row_seq);

enum class Statistics { fermion, boson };

// Spin-space multiplicity attached to a spatial irrep: semistandard_count of
// the diagram itself for bosons, of its conjugate for fermions.
std::int64_t spin_multiplicity(const YoungDiagram& spatial, Statistics stat, int J);

} // namespace spectra1d
