#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "spectra1d/one_body.hpp"

namespace spectra1d {

// Contact matrix elements V_abcd = ∫ φ_a φ_b φ_c φ_d dx per unit coupling.
// Stored once per canonically sorted index quadruple; retrieval with any
// index order returns the canonical value (the 24-fold state-permutation
// symmetry is exact for real orbitals).
class TwoBodyTensor {
public:
    TwoBodyTensor() = default;
    TwoBodyTensor(std::uint64_t basis_hash, int cutoff,
                  std::unordered_map<std::uint32_t, double> values, double quadrature_error);

    double get(int a, int b, int c, int d) const;
    int cutoff() const { return cutoff_; }
    double quadrature_error() const { return quadrature_error_; }
    std::uint64_t basis_hash() const { return basis_hash_; }
    std::size_t stored_count() const { return values_.size(); }

    static std::uint32_t canonical_key(int a, int b, int c, int d);
    const std::unordered_map<std::uint32_t, double>& raw() const { return values_; }

private:
    std::uint64_t basis_hash_ = 0;
    int cutoff_ = 0;
    double quadrature_error_ = 0.0;
    std::unordered_map<std::uint32_t, double> values_;
};

// One contact element by direct quadrature in the given index order, never
// consulting canonical storage: closed trigonometric form for the well,
// Gauss-Hermite for the harmonic trap, composite Simpson on grid samples.
// The grid path fails when the Richardson error estimate exceeds 1e-8.
double two_body_element(const OneBodyBasis& basis, int a, int b, int c, int d);

// All canonical quadruples with indices below cutoff; entry work is pure and
// parallelized over quadruples.  A finite pair_energy_cap keeps only
// quadruples reachable as <pair|V|pair> with both pair energies under the
// cap, which is what a many-body basis with that energy cutoff can request.
TwoBodyTensor build_tensor(const OneBodyBasis& basis, int cutoff,
                           double pair_energy_cap = std::numeric_limits<double>::infinity());

struct SymmetryReport {
    int trials = 0;
    int max_index = 0;
    // max over trials of (max-min over the 24 orderings) / max(1, |element|)
    double max_deviation = 0.0;
};

// Re-integrates random quadruples independently in all 24 index orders.
SymmetryReport check_state_permutation_symmetry(const OneBodyBasis& basis, int trials,
                                                std::uint64_t seed, int max_index = -1);

} // namespace spectra1d
