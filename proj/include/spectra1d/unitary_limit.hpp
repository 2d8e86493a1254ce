#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spectra1d/one_body.hpp"
#include "spectra1d/permutation.hpp"
#include "spectra1d/young.hpp"

namespace spectra1d {

// One g→∞ level: a strictly distinct orbital set, N!-fold degenerate before
// symmetrization.
struct UnitaryLevel {
    std::vector<int> orbitals; // ascending, all distinct
    double energy = 0.0;
    std::int64_t pre_symmetrization_degeneracy = 0; // N!
};

std::vector<UnitaryLevel> unitary_spectrum(const OneBodyBasis& basis, int n_particles,
                                           double e_cut);

// The two commuting S_N actions on sector labels: particle permutations act
// on the right, ordering permutations on the left.
Permutation particle_action(const Permutation& p, const Permutation& sector);
Permutation ordering_action(const Permutation& o, const Permutation& sector);

// The N! ordering sectors with their adjacency structure: for each position
// k the perfect matching pairing s with s∘s_k (swap of the particles at
// positions k, k+1), weighted by a tunneling parameter t_k >= 0 carrying an
// implicit 1/g scale.
class SectorGraph {
public:
    SectorGraph(int n_particles, std::vector<double> tunneling);

    int particles() const { return n_; }
    const std::vector<Permutation>& nodes() const { return nodes_; }
    // matching(k)[i] = index of the partner of node i across position k+1
    const std::vector<int>& matching(int k) const { return matchings_[k]; }
    const std::vector<double>& tunneling() const { return tunneling_; }
    bool palindromic(double tol = 1e-12) const;

    // H_eff = -sum_k t_k A_k on the sector space (shifts relative to the
    // unitary level).
    Eigen::MatrixXd effective_hamiltonian() const;

private:
    int n_;
    std::vector<Permutation> nodes_; // lexicographic
    std::vector<std::vector<int>> matchings_;
    std::vector<double> tunneling_;
};

struct NearUnitaryBlock {
    YoungDiagram lambda{std::vector<int>{1}};
    std::optional<int> reversal_parity; // ±1 when the order-reversal split applies
    int size = 0;
    std::vector<double> eigenvalues;
};

struct NearUnitaryReport {
    int n_particles = 0;
    std::vector<double> tunneling;
    bool trap_symmetric = false;
    std::vector<NearUnitaryBlock> blocks;
    bool solvable = false;
    // The literature asserts solvability for five particles in a symmetric
    // trap; if the computed blocks ever contradict that, it is reported
    // rather than assumed away.
    bool discrepancy = false;
    std::string discrepancy_note;
};

// Block-diagonalizes H_eff by the ordering-permutation action; with a
// symmetric trap (palindromic t) the order-reversal symmetry splits blocks
// further.  Errors when trap_symmetric is set but t is not palindromic.
NearUnitaryReport near_unitary_splitting(const SectorGraph& graph, bool trap_symmetric);

// Physical degeneracy of one generic unitary-limit level.
std::int64_t degeneracy_count(int n_particles, int J, Statistics stat);

struct DegeneracyLine {
    YoungDiagram lambda{std::vector<int>{1}};
    std::int64_t tableaux = 0; // f^lambda
    std::int64_t spin = 0;     // paired semistandard count
};

std::vector<DegeneracyLine> degeneracy_breakdown(int n_particles, int J, Statistics stat);

struct UnitaryStatisticsLine {
    double shift = 0.0;
    YoungDiagram lambda{std::vector<int>{1}};
    std::int64_t spin_multiplicity = 0;
};

// Spin assembly of a near-unitary report: ordering-irrep blocks paired with
// their Schur-Weyl spin multiplicities; inadmissible blocks dropped.
std::vector<UnitaryStatisticsLine> assemble_unitary_statistics(const NearUnitaryReport& report,
                                                               Statistics stat, int J);

struct TunnelingFitOptions {
    // Exact-diagonalization cutoff schedule; empty selects a trap-aware
    // default.  The lowest-level splitting at each g is Richardson-
    // extrapolated over the schedule in e_cut^(-1/2) before fitting.
    std::vector<double> e_cut_schedule;
};

struct TunnelingFit {
    std::vector<double> g_values;
    std::vector<double> splittings; // extrapolated multiplet spreads
    double coefficient = 0.0;       // c in  spread = c/g + d/g^2
    double curvature = 0.0;         // d
    double exponent = 0.0;          // fitted leading power of g
    double exponent_residual = 0.0; // relative rms of the corrected power fit
    std::vector<double> t_estimates; // per g, single palindromic parameter
    std::vector<double> e_cut_schedule;
};

// Empirical route to the tunneling scale for N = 2, 3 in a symmetric trap:
// runs the exact-diagonalization oracle at each coupling, measures the spread
// of the lowest unitary multiplet and fits spread = c/g + O(1/g²).
TunnelingFit tunneling_from_fit(const OneBodyBasis& basis, int n_particles,
                                const std::vector<double>& g_values,
                                const TunnelingFitOptions& opts = {});

} // namespace spectra1d
