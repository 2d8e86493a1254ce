#include "spectra1d/one_body.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectra1d/errors.hpp"
#include "spectra1d/numeric.hpp"

namespace spectra1d {

namespace {
constexpr int kMinGridPoints = 64;
constexpr int kHarmonicLevelCap = 128; // keeps the scaled-Hermite quadrature in double range
} // namespace

TrapSpec TrapSpec::harmonic() { return TrapSpec{TrapKind::harmonic, 0.0, 0.0, {}}; }

TrapSpec TrapSpec::infinite_well() { return TrapSpec{TrapKind::infinite_well, 0.0, 1.0, {}}; }

TrapSpec TrapSpec::grid(double x_min, double x_max, std::vector<double> v) {
    if (!(x_min < x_max))
        throw Error("one_body", "grid trap needs x_min < x_max");
    if (static_cast<int>(v.size()) < kMinGridPoints)
        throw Error("one_body", "grid trap needs at least " + std::to_string(kMinGridPoints) +
                                    " samples");
    for (double s : v)
        if (!std::isfinite(s)) throw Error("one_body", "grid potential samples must be finite");
    return TrapSpec{TrapKind::grid, x_min, x_max, std::move(v)};
}

double TrapSpec::grid_spacing() const {
    return (x_max - x_min) / (grid_points() - 1);
}

bool TrapSpec::symmetric() const {
    if (kind != TrapKind::grid) return true;
    const int m = grid_points();
    for (int i = 0; i < m; ++i) {
        const double a = v[i], b = v[m - 1 - i];
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) return false;
    }
    return true;
}

std::uint64_t TrapSpec::hash() const {
    std::uint64_t h = fnv1a(kind_name());
    if (kind == TrapKind::grid) {
        h ^= fnv1a(&x_min, sizeof(x_min));
        h ^= fnv1a(&x_max, sizeof(x_max)) * 3;
        h ^= fnv1a(v.data(), v.size() * sizeof(double)) * 7;
    }
    return h;
}

std::string TrapSpec::kind_name() const {
    switch (kind) {
        case TrapKind::harmonic: return "harmonic";
        case TrapKind::infinite_well: return "infinite_well";
        case TrapKind::grid: return "grid";
    }
    return "?";
}

std::vector<double> harmonic_orbitals_scaled(int nmax, double x) {
    std::vector<double> h(nmax);
    if (nmax <= 0) return h;
    h[0] = std::pow(M_PI, -0.25);
    if (nmax > 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int n = 1; n + 1 < nmax; ++n)
        h[n + 1] = std::sqrt(2.0 / (n + 1)) * x * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
    for (int n = 1; n < nmax; n += 2) h[n] = -h[n]; // leftmost lobe positive
    return h;
}

double OneBodyBasis::energy(int n) const {
    if (n < 0 || n >= size())
        throw Error("one_body", "energy index out of range");
    return energies_[n];
}

double OneBodyBasis::orbital(int n, double x) const {
    if (n < 0 || n >= size())
        throw Error("one_body", "orbital index out of range");
    switch (trap_.kind) {
        case TrapKind::harmonic: {
            const auto h = harmonic_orbitals_scaled(n + 1, x);
            return h[n] * std::exp(-0.5 * x * x);
        }
        case TrapKind::infinite_well: {
            if (x < 0.0 || x > 1.0)
                throw Error("one_body", "position outside the well [0,1]");
            return std::sqrt(2.0) * std::sin((n + 1) * M_PI * x);
        }
        case TrapKind::grid: {
            if (x < trap_.x_min || x > trap_.x_max)
                throw Error("one_body", "position outside the grid domain");
            const double h = trap_.grid_spacing();
            const double s = (x - trap_.x_min) / h;
            const int i = std::min(static_cast<int>(s), trap_.grid_points() - 2);
            const double w = s - i;
            return (1.0 - w) * grid_orbitals_(i, n) + w * grid_orbitals_(i + 1, n);
        }
    }
    return 0.0;
}

namespace {

struct GridSolution {
    std::vector<double> energies;
    std::vector<double> x;
    Eigen::MatrixXd orbitals;
    std::optional<std::vector<int>> parity;
};

GridSolution solve_grid(const TrapSpec& trap, int n_levels, double grid_tol) {
    const int m = trap.grid_points();
    if (n_levels > m / 4)
        throw Error("one_body", "grid trap supports at most M/4 levels (asked " +
                                    std::to_string(n_levels) + " with M = " + std::to_string(m) +
                                    ")");
    const double h = trap.grid_spacing();
    const int ni = m - 2; // interior points, hard-wall zeros at both ends

    std::vector<double> diag(ni), off(ni - 1, -0.5 / (h * h));
    for (int i = 0; i < ni; ++i) diag[i] = 1.0 / (h * h) + trap.v[i + 1];

    std::vector<double> vals;
    Eigen::MatrixXd vecs;
    tridiag_lowest(diag, off, n_levels, vals, vecs);

    // Leading FD error per level: eps_h - eps ~ -(h^2/24) ||psi''||^2 with
    // psi'' = 2 (V - eps) psi.
    double worst = 0.0;
    for (int n = 0; n < n_levels; ++n) {
        double acc = 0.0;
        for (int i = 0; i < ni; ++i) {
            const double c = 2.0 * (trap.v[i + 1] - vals[n]) * vecs(i, n);
            acc += c * c;
        }
        worst = std::max(worst, (h * h / 24.0) * acc);
    }
    if (worst > grid_tol) {
        const int rec = static_cast<int>(std::ceil(m * std::sqrt(worst / grid_tol)));
        throw Error("one_body", "grid too coarse: estimated eigenvalue error " +
                                    std::to_string(worst) + " exceeds " + std::to_string(grid_tol) +
                                    "; use M >= " + std::to_string(rec));
    }

    GridSolution sol;
    sol.energies = vals;
    for (int n = 0; n + 1 < n_levels; ++n)
        if (!(vals[n + 1] > vals[n]))
            throw Error("one_body", "grid spectrum is not strictly increasing");

    sol.x.resize(m);
    for (int i = 0; i < m; ++i) sol.x[i] = trap.x_min + i * h;
    sol.orbitals = Eigen::MatrixXd::Zero(m, n_levels);
    for (int n = 0; n < n_levels; ++n) {
        for (int i = 0; i < ni; ++i) sol.orbitals(i + 1, n) = vecs(i, n);
        // normalize with the same quadrature the tensor uses
        std::vector<double> sq(m);
        for (int i = 0; i < m; ++i) sq[i] = sol.orbitals(i, n) * sol.orbitals(i, n);
        sol.orbitals.col(n) /= std::sqrt(simpson(sq, h));
        // phase: first appreciable sample from the left is positive
        const double scale = sol.orbitals.col(n).cwiseAbs().maxCoeff();
        for (int i = 0; i < m; ++i) {
            const double val = sol.orbitals(i, n);
            if (std::abs(val) > 1e-10 * scale) {
                if (val < 0) sol.orbitals.col(n) = -sol.orbitals.col(n);
                break;
            }
        }
    }

    if (trap.symmetric()) {
        std::vector<int> par(n_levels);
        for (int n = 0; n < n_levels; ++n) {
            double s = 0.0;
            for (int i = 0; i < m; ++i)
                s += sol.orbitals(i, n) * sol.orbitals(m - 1 - i, n) * h;
            if (std::abs(s) < 0.5)
                throw Error("one_body", "could not resolve the parity of level " +
                                            std::to_string(n));
            par[n] = s > 0 ? 1 : -1;
        }
        sol.parity = std::move(par);
    }
    return sol;
}

} // namespace

OneBodyBasis one_body_solve(const TrapSpec& trap, int n_levels, double grid_tol) {
    if (n_levels < 1)
        throw Error("one_body", "n_levels must be positive");

    OneBodyBasis basis;
    basis.trap_ = trap;
    switch (trap.kind) {
        case TrapKind::harmonic: {
            if (n_levels > kHarmonicLevelCap)
                throw Error("one_body", "harmonic basis capped at " +
                                            std::to_string(kHarmonicLevelCap) + " levels");
            basis.energies_.resize(n_levels);
            for (int n = 0; n < n_levels; ++n) basis.energies_[n] = n + 0.5;
            std::vector<int> par(n_levels);
            for (int n = 0; n < n_levels; ++n) par[n] = (n % 2 == 0) ? 1 : -1;
            basis.parity_ = std::move(par);
            break;
        }
        case TrapKind::infinite_well: {
            basis.energies_.resize(n_levels);
            for (int n = 0; n < n_levels; ++n)
                basis.energies_[n] = 0.5 * (n + 1.0) * (n + 1.0) * M_PI * M_PI;
            std::vector<int> par(n_levels);
            for (int n = 0; n < n_levels; ++n) par[n] = (n % 2 == 0) ? 1 : -1;
            basis.parity_ = std::move(par);
            break;
        }
        case TrapKind::grid: {
            auto sol = solve_grid(trap, n_levels, grid_tol);
            basis.energies_ = std::move(sol.energies);
            basis.grid_x_ = std::move(sol.x);
            basis.grid_orbitals_ = std::move(sol.orbitals);
            basis.parity_ = std::move(sol.parity);
            break;
        }
    }
    basis.hash_ = trap.hash() * 31 + static_cast<std::uint64_t>(n_levels);
    return basis;
}

} // namespace spectra1d
