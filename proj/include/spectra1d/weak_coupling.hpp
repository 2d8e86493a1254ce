#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spectra1d/contact_tensor.hpp"
#include "spectra1d/isotypic.hpp"
#include "spectra1d/one_body.hpp"
#include "spectra1d/young.hpp"

namespace spectra1d {

// One eigenstate of the non-interacting N-body problem, orbital index per
// particle slot.
struct ProductState {
    std::vector<int> orbitals;
    auto operator<=>(const ProductState&) const = default;
};

// A degenerate non-interacting level: one orbital multiset with all its
// distinct arrangements.  Distinct multisets landing on the same energy are
// cross-flagged as accidental partners, never merged silently.
struct DegenerateLevel {
    double energy = 0.0;
    std::vector<int> multiset; // sorted orbital indices
    std::vector<ProductState> states;
    std::vector<std::vector<int>> accidental_partners;

    bool generic() const { return accidental_partners.empty(); }
};

// All levels with energy <= e_cut, ascending (ties in multiset order).
// Grouping tolerance for "same energy" is 1e-9 absolute.
std::vector<DegenerateLevel> enumerate_levels(const OneBodyBasis& basis, int n_particles,
                                              double e_cut);

struct SplittingBlock {
    YoungDiagram lambda{std::vector<int>{1}};
    int size = 0;                // multiplicity of lambda in the level
    Eigen::MatrixXd reduced;     // size×size reduced matrix of W, per unit g
    std::vector<double> eigenvalues; // first-order shifts per unit g
};

struct LabeledShift {
    double shift = 0.0;
    YoungDiagram lambda{std::vector<int>{1}};
};

struct SplittingReport {
    double level_energy = 0.0;
    std::vector<int> multiset; // of the primary level; merged partners appended
    std::vector<std::vector<int>> merged_multisets;
    int state_count = 0;
    std::vector<SplittingBlock> blocks;
    bool solvable = false; // every block size <= 4 (quartic-by-radicals boundary)
    bool generic = true;   // false for explicitly merged accidental levels
    std::vector<LabeledShift> first_order_energies;
    double w_trace = 0.0;
};

// First-order degenerate perturbation theory on one generic level: builds
// W_uv = sum_{i<j} <u|V_ij|v> per unit g over the level's states and
// block-diagonalizes it by particle-permutation symmetry.  Levels with
// accidental partners are refused; merge them explicitly instead.
SplittingReport first_order_splitting(const DegenerateLevel& level, const TwoBodyTensor& tensor);

// Same analysis on the union of levels (for accidental/emergent coincidences);
// the report is marked non-generic.
SplittingReport first_order_splitting_merged(const std::vector<DegenerateLevel>& levels,
                                             const TwoBodyTensor& tensor);

struct PhysicalLine {
    double shift = 0.0;
    YoungDiagram lambda{std::vector<int>{1}};
    std::int64_t spin_multiplicity = 0;
};

// Keep the spatial blocks admissible for the given statistics and J and
// attach their spin multiplicities (Schur-Weyl pairing).
std::vector<PhysicalLine> assemble_statistics(const SplittingReport& report, Statistics stat,
                                              int J);

} // namespace spectra1d
