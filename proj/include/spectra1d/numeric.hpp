#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace spectra1d {

// ---- symmetric eigensolvers (LAPACK dsyevr/dstevr behind the scenes) ----

// Lowest k eigenvalues of a dense symmetric matrix.
std::vector<double> sym_lowest_eigenvalues(const Eigen::MatrixXd& a, int k);

// Full ascending spectrum.
std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& a);

// Lowest k eigenpairs of a symmetric tridiagonal matrix.
void tridiag_lowest(const std::vector<double>& diag, const std::vector<double>& offdiag, int k,
                    std::vector<double>& values, Eigen::MatrixXd& vectors);

// ---- quadrature ----

// Gauss-Hermite nodes/weights for weight exp(-x^2) (Golub-Welsch).
void gauss_hermite(int npoints, std::vector<double>& nodes, std::vector<double>& weights);

// Composite Simpson on uniformly spaced samples; the trailing interval of an
// even-length grid is handled by a trapezoid step (the integrands here vanish
// at the walls, so that step contributes nothing measurable).  Summation is
// paired symmetrically so odd integrands on symmetric grids cancel exactly.
double simpson(const std::vector<double>& f, double h);

// ---- fitting / extrapolation ----

// Least-squares fit y = c0 + c1 * x^(-power); returns {c0, c1}.
std::pair<double, double> inverse_power_extrapolate(const std::vector<double>& x,
                                                    const std::vector<double>& y, double power);

struct PowerLawFit {
    double exponent = 0.0;    // alpha in y = c g^alpha + e g^(alpha-1)
    double coefficient = 0.0; // c
    double correction = 0.0;  // e
    double rel_rms = 0.0;     // relative residual of the corrected model
};

// Leading power of a decaying law with one subleading correction retained:
// y(g) = c g^alpha + e g^(alpha-1).  Grid search on alpha with a weighted
// linear inner solve; robust for 3+ strictly positive samples.
PowerLawFit fit_power_law_with_correction(const std::vector<double>& g,
                                          const std::vector<double>& y);

// Plain log-log slope.
double loglog_slope(const std::vector<double>& g, const std::vector<double>& y);

// ---- misc ----

// Worker count: min(SPECTRA1D_THREADS if set, hardware threads, 8), >= 1.
int worker_count();

// Chunked parallel loop over [0, n); fn(i) must write to disjoint slots.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

// FNV-1a over bytes, used for config/basis fingerprints.
std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a(const std::string& s);

} // namespace spectra1d
