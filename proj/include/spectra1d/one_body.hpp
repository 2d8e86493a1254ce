#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectra1d {

enum class TrapKind { harmonic, infinite_well, grid };

// One-particle trap. Units ħ = m = 1 throughout; the harmonic trap has ω = 1
// and the infinite well sits on [0, 1].
struct TrapSpec {
    TrapKind kind = TrapKind::harmonic;
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<double> v; // grid potential samples, inclusive endpoints

    static TrapSpec harmonic();
    static TrapSpec infinite_well();
    static TrapSpec grid(double x_min, double x_max, std::vector<double> v);

    int grid_points() const { return static_cast<int>(v.size()); }
    double grid_spacing() const;
    // Reflection symmetry about the trap centre (exact for the analytic
    // traps, sample-palindrome test for grids).
    bool symmetric() const;
    std::uint64_t hash() const;
    std::string kind_name() const;
};

// Phase-fixed real orbitals: the first lobe from the left is positive.
class OneBodyBasis {
public:
    int size() const { return static_cast<int>(energies_.size()); }
    double energy(int n) const;
    const std::vector<double>& energies() const { return energies_; }
    // orbital_value; grid orbitals are linearly interpolated.
    double orbital(int n, double x) const;
    const std::optional<std::vector<int>>& parity() const { return parity_; }
    const TrapSpec& trap() const { return trap_; }
    std::uint64_t hash() const { return hash_; }

    // Grid data (empty for analytic traps): sample abscissae including the
    // walls and orbital values with the wall zeros in place.
    const std::vector<double>& grid_x() const { return grid_x_; }
    const Eigen::MatrixXd& grid_orbitals() const { return grid_orbitals_; }

private:
    friend OneBodyBasis one_body_solve(const TrapSpec&, int, double);
    TrapSpec trap_;
    std::vector<double> energies_;
    std::optional<std::vector<int>> parity_;
    std::vector<double> grid_x_;
    Eigen::MatrixXd grid_orbitals_;
    std::uint64_t hash_ = 0;
};

// Solve the trap for the lowest n_levels states.  Analytic spectra for the
// harmonic and hard-wall traps; second-order central differences with
// Dirichlet walls for grids.  grid_tol is the advertised per-level eigenvalue
// accuracy for grids; the solve fails with a recommended point count when the
// leading discretization-error estimate exceeds it.
OneBodyBasis one_body_solve(const TrapSpec& trap, int n_levels, double grid_tol = 1e-4);

// Harmonic orbitals with the Gaussian factored out:
// returns phase-fixed φ_n(x)·exp(x²/2) for n = 0..nmax-1 (stable recurrence;
// shared with the harmonic contact-element quadrature).
std::vector<double> harmonic_orbitals_scaled(int nmax, double x);

} // namespace spectra1d
