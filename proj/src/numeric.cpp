#include "spectra1d/numeric.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "spectra1d/errors.hpp"

namespace spectra1d {

namespace {

void dsyevr(Eigen::MatrixXd a, char range, int il, int iu, bool want_vectors,
            std::vector<double>& values, Eigen::MatrixXd* vectors) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) {
        values.clear();
        return;
    }
    const int nsel = (range == 'I') ? (iu - il + 1) : n;
    values.assign(n, 0.0);
    Eigen::MatrixXd z;
    if (want_vectors) z.resize(n, nsel);
    std::vector<int> isuppz(2 * std::max(1, nsel));
    int m = 0;
    const int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', range, 'L', n, a.data(), n, 0.0, 0.0, il, iu,
        0.0, &m, values.data(), want_vectors ? z.data() : nullptr, want_vectors ? n : 1,
        isuppz.data());
    if (info != 0)
        throw Error("numeric", "dsyevr failed with info " + std::to_string(info));
    values.resize(m);
    if (want_vectors) *vectors = z.leftCols(m);
}

} // namespace

std::vector<double> sym_lowest_eigenvalues(const Eigen::MatrixXd& a, int k) {
    const int n = static_cast<int>(a.rows());
    k = std::min(k, n);
    if (k <= 0) return {};
    std::vector<double> values;
    dsyevr(a, 'I', 1, k, false, values, nullptr);
    return values;
}

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& a) {
    std::vector<double> values;
    dsyevr(a, 'A', 0, 0, false, values, nullptr);
    return values;
}

void tridiag_lowest(const std::vector<double>& diag, const std::vector<double>& offdiag, int k,
                    std::vector<double>& values, Eigen::MatrixXd& vectors) {
    const int n = static_cast<int>(diag.size());
    if (static_cast<int>(offdiag.size()) != n - 1)
        throw Error("numeric", "tridiag_lowest: off-diagonal length must be n-1");
    k = std::min(k, n);
    std::vector<double> d = diag, e = offdiag;
    e.resize(std::max(1, n)); // lapack wants n-1 valid entries, give it slack
    values.assign(n, 0.0);
    Eigen::MatrixXd z(n, k);
    std::vector<int> isuppz(2 * std::max(1, k));
    int m = 0;
    const int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, k, 0.0, &m,
                       values.data(), z.data(), n, isuppz.data());
    if (info != 0)
        throw Error("numeric", "dstevr failed with info " + std::to_string(info));
    values.resize(m);
    vectors = z.leftCols(m);
}

void gauss_hermite(int npoints, std::vector<double>& nodes, std::vector<double>& weights) {
    // Jacobi matrix of the Hermite recurrence: zero diagonal,
    // off-diagonal sqrt(k/2); eigenvalues are the nodes and the weights are
    // sqrt(pi) times the squared first components of the eigenvectors.
    std::vector<double> d(npoints, 0.0), e(npoints - 1);
    for (int k = 1; k < npoints; ++k) e[k - 1] = std::sqrt(0.5 * k);
    std::vector<double> vals;
    Eigen::MatrixXd vecs;
    tridiag_lowest(d, e, npoints, vals, vecs);
    nodes = vals;
    weights.resize(npoints);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int i = 0; i < npoints; ++i) weights[i] = sqrt_pi * vecs(0, i) * vecs(0, i);
}

double simpson(const std::vector<double>& f, double h) {
    const std::size_t m = f.size();
    if (m < 3)
        throw Error("numeric", "simpson needs at least 3 samples");
    // Simpson weights over the largest odd prefix, pairs summed symmetrically.
    std::size_t nodd = (m % 2 == 1) ? m : m - 1;
    std::vector<double> w(m, 0.0);
    w[0] = w[nodd - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < nodd; ++i) w[i] = (i % 2 == 1) ? 4.0 : 2.0;
    for (std::size_t i = 0; i < m; ++i) w[i] *= h / 3.0;
    if (nodd != m) {
        w[m - 2] += 0.5 * h;
        w[m - 1] += 0.5 * h;
    }
    double acc = 0.0;
    std::size_t lo = 0, hi = m - 1;
    while (lo < hi) {
        acc += (w[lo] * f[lo] + w[hi] * f[hi]);
        ++lo;
        --hi;
    }
    if (lo == hi) acc += w[lo] * f[lo];
    return acc;
}

std::pair<double, double> inverse_power_extrapolate(const std::vector<double>& x,
                                                    const std::vector<double>& y, double power) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("numeric", "extrapolation needs >= 2 samples");
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd m(n, 2);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        m(i, 0) = 1.0;
        m(i, 1) = std::pow(x[i], -power);
        b(i) = y[i];
    }
    Eigen::Vector2d c = (m.transpose() * m).ldlt().solve(m.transpose() * b);
    return {c(0), c(1)};
}

PowerLawFit fit_power_law_with_correction(const std::vector<double>& g,
                                          const std::vector<double>& y) {
    if (g.size() != y.size() || g.size() < 3)
        throw Error("numeric", "power-law fit needs >= 3 samples");
    for (double v : y)
        if (!(v > 0.0)) throw Error("numeric", "power-law fit needs positive samples");

    const int n = static_cast<int>(g.size());
    PowerLawFit best;
    double best_sse = -1.0;
    for (double alpha = -1.8; alpha <= -0.2 + 1e-12; alpha += 5e-4) {
        Eigen::MatrixXd m(n, 2);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            // rows scaled by 1/y: relative least squares
            m(i, 0) = std::pow(g[i], alpha) / y[i];
            m(i, 1) = std::pow(g[i], alpha - 1.0) / y[i];
            b(i) = 1.0;
        }
        Eigen::Vector2d c = (m.transpose() * m).ldlt().solve(m.transpose() * b);
        double sse = 0.0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const double model = c(0) * std::pow(g[i], alpha) + c(1) * std::pow(g[i], alpha - 1.0);
            if (!(model > 0.0)) {
                ok = false;
                break;
            }
            const double r = (model - y[i]) / y[i];
            sse += r * r;
        }
        if (!ok) continue;
        if (best_sse < 0.0 || sse < best_sse) {
            best_sse = sse;
            best = {alpha, c(0), c(1), std::sqrt(sse / n)};
        }
    }
    if (best_sse < 0.0)
        throw Error("numeric", "power-law fit failed to find a positive model");
    return best;
}

double loglog_slope(const std::vector<double>& g, const std::vector<double>& y) {
    if (g.size() != y.size() || g.size() < 2)
        throw Error("numeric", "log-log slope needs >= 2 samples");
    const int n = static_cast<int>(g.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(g[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int n = std::min(hw, 8);
    if (const char* env = std::getenv("SPECTRA1D_THREADS")) {
        const int req = std::atoi(env);
        if (req >= 1) n = std::min(req, hw);
    }
    return std::max(1, n);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    const int workers = std::min<std::int64_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::int64_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

} // namespace spectra1d
