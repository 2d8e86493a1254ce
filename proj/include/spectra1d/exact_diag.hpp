#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "spectra1d/contact_tensor.hpp"
#include "spectra1d/one_body.hpp"
#include "spectra1d/weak_coupling.hpp"
#include "spectra1d/young.hpp"

namespace spectra1d {

// Dense many-body Hamiltonian H = H0 + g sum_{i<j} V_ij in the
// energy-truncated product basis.
struct ManyBodyMatrix {
    int n_particles = 0;
    double g = 0.0;
    double e_cut = 0.0;
    std::vector<ProductState> basis_states; // lexicographic tuple order
    Eigen::MatrixXd h;
    std::uint64_t basis_hash = 0;
    bool trap_symmetric = false;
    // per-orbital parity labels when the trap is symmetric
    std::optional<std::vector<int>> orbital_parity;

    int dimension() const { return static_cast<int>(basis_states.size()); }
};

// N in 2..4 (larger N is served combinatorially elsewhere); the truncated
// basis keeps product states with total energy <= e_cut and is capped at
// 5000 states.
ManyBodyMatrix build_hamiltonian(const OneBodyBasis& basis, const TwoBodyTensor& tensor,
                                 int n_particles, double g, double e_cut);

// Lowest k eigenvalues inside the lambda isotypic component of the
// particle-permutation action: the seed-reduced block is diagonalized and
// every eigenvalue is repeated dim(lambda) times.
std::vector<double> sector_spectrum(const ManyBodyMatrix& h, const YoungDiagram& lambda, int k);

struct ConvergenceReport {
    std::vector<double> e_cuts;
    std::vector<std::vector<double>> eigenvalues; // lowest k per cutoff
    std::vector<double> drifts;                   // per-eigenvalue max drift between cutoffs
    std::vector<int> flagged;                     // indices with drift above tolerance
    double tolerance = 0.0;
};

// Re-diagonalizes across an ascending cutoff schedule (>= 3 entries) and
// reports the per-eigenvalue drift honestly.
ConvergenceReport convergence_probe(const OneBodyBasis& basis, const TwoBodyTensor& tensor,
                                    int n_particles, double g,
                                    const std::vector<double>& e_cut_schedule, int k,
                                    double tolerance = 1e-6);

} // namespace spectra1d
