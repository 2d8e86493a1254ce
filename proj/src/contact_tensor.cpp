#include "spectra1d/contact_tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>

#include "spectra1d/errors.hpp"
#include "spectra1d/numeric.hpp"

namespace spectra1d {

namespace {

constexpr double kGridQuadTol = 1e-8;

// Gauss-Hermite rules are reused heavily while building tensors.
const std::pair<std::vector<double>, std::vector<double>>& gh_rule(int npoints) {
    static std::mutex mu;
    static std::unordered_map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(npoints);
    if (it == cache.end()) {
        std::vector<double> x, w;
        gauss_hermite(npoints, x, w);
        it = cache.emplace(npoints, std::make_pair(std::move(x), std::move(w))).first;
    }
    return it->second;
}

double harmonic_element(int a, int b, int c, int d) {
    // ∫ φa φb φc φd dx = (1/√2) Σ w_i  ĥa ĥb ĥc ĥd (t_i/√2)  with GH nodes t_i:
    // the product of four scaled orbitals carries exp(-2x²) = exp(-t²), which
    // is the GH weight, and what remains is a polynomial of degree 4·max(idx),
    // integrated exactly by 2·nmax + 8 points.
    const int nmax = std::max({a, b, c, d}) + 1;
    const auto& [t, w] = gh_rule(2 * nmax + 8);
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto h = harmonic_orbitals_scaled(nmax, t[i] / std::sqrt(2.0));
        acc += w[i] * h[a] * h[b] * h[c] * h[d];
    }
    return acc / std::sqrt(2.0);
}

double well_element(int a, int b, int c, int d) {
    // 4 ∫_0^1 sin(pπx) sin(qπx) sin(rπx) sin(sπx) dx in closed form; only the
    // Kronecker selections p±q±r±s = 0 survive.
    const int p = a + 1, q = b + 1, r = c + 1, s = d + 1;
    auto I = [](int m, int n) {
        return 0.5 * ((m + n == 0 ? 1.0 : 0.0) + (m - n == 0 ? 1.0 : 0.0));
    };
    return I(p - q, r - s) - I(p - q, r + s) - I(p + q, r - s) + I(p + q, r + s);
}

double grid_element(const OneBodyBasis& basis, int a, int b, int c, int d) {
    const auto& orb = basis.grid_orbitals();
    const int m = static_cast<int>(orb.rows());
    const double h = basis.trap().grid_spacing();
    std::vector<double> f(m);
    for (int i = 0; i < m; ++i) f[i] = orb(i, a) * orb(i, b) * orb(i, c) * orb(i, d);
    const double fine = simpson(f, h);
    // Richardson estimate against the stride-2 subsample.
    std::vector<double> coarse;
    coarse.reserve(m / 2 + 1);
    for (int i = 0; i < m; i += 2) coarse.push_back(f[i]);
    const double est = std::abs(fine - simpson(coarse, 2.0 * h)) / 15.0;
    if (est > kGridQuadTol)
        throw Error("contact_tensor",
                    "quadrature error estimate " + std::to_string(est) +
                        " above 1e-8; refine the trap grid (double M) or lower the cutoff");
    return fine;
}

} // namespace

TwoBodyTensor::TwoBodyTensor(std::uint64_t basis_hash, int cutoff,
                             std::unordered_map<std::uint32_t, double> values,
                             double quadrature_error)
    : basis_hash_(basis_hash), cutoff_(cutoff), quadrature_error_(quadrature_error),
      values_(std::move(values)) {}

std::uint32_t TwoBodyTensor::canonical_key(int a, int b, int c, int d) {
    std::array<int, 4> q{a, b, c, d};
    std::sort(q.begin(), q.end());
    return static_cast<std::uint32_t>(q[0]) | (static_cast<std::uint32_t>(q[1]) << 8) |
           (static_cast<std::uint32_t>(q[2]) << 16) | (static_cast<std::uint32_t>(q[3]) << 24);
}

double TwoBodyTensor::get(int a, int b, int c, int d) const {
    const auto it = values_.find(canonical_key(a, b, c, d));
    if (it == values_.end())
        throw Error("contact_tensor", "tensor lookup outside the stored cutoff");
    return it->second;
}

double two_body_element(const OneBodyBasis& basis, int a, int b, int c, int d) {
    for (int idx : {a, b, c, d})
        if (idx < 0 || idx >= basis.size())
            throw Error("contact_tensor", "orbital index outside the basis");
    switch (basis.trap().kind) {
        case TrapKind::harmonic: return harmonic_element(a, b, c, d);
        case TrapKind::infinite_well: return well_element(a, b, c, d);
        case TrapKind::grid: return grid_element(basis, a, b, c, d);
    }
    return 0.0;
}

TwoBodyTensor build_tensor(const OneBodyBasis& basis, int cutoff, double pair_energy_cap) {
    if (cutoff < 1 || cutoff > basis.size())
        throw Error("contact_tensor", "tensor cutoff must lie in 1..basis size");

    // Canonical quadruples a<=b<=c<=d.  When a pair-energy cap is given only
    // quadruples that can occur as <pair|V|pair> with both pair energies under
    // the cap are stored; the split (a,d)(b,c) minimizes the larger pair sum,
    // so it decides admissibility.
    std::vector<std::array<int, 4>> quads;
    for (int a = 0; a < cutoff; ++a)
        for (int b = a; b < cutoff; ++b)
            for (int c = b; c < cutoff; ++c) {
                if (basis.energy(b) + basis.energy(c) > pair_energy_cap) break;
                for (int d = c; d < cutoff; ++d) {
                    if (basis.energy(a) + basis.energy(d) > pair_energy_cap) break;
                    quads.push_back({a, b, c, d});
                }
            }

    std::vector<double> vals(quads.size());
    std::string failure;
    std::mutex fail_mu;

    if (basis.trap().kind == TrapKind::harmonic) {
        // One shared rule, exact for every stored entry.
        const int npts = 2 * cutoff + 8;
        const auto& [t, w] = gh_rule(npts);
        Eigen::MatrixXd table(cutoff, npts);
        for (int i = 0; i < npts; ++i) {
            const auto h = harmonic_orbitals_scaled(cutoff, t[i] / std::sqrt(2.0));
            for (int n = 0; n < cutoff; ++n) table(n, i) = h[n];
        }
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        parallel_for(static_cast<std::int64_t>(quads.size()), [&](std::int64_t i) {
            const auto& q = quads[i];
            double acc = 0.0;
            for (int j = 0; j < npts; ++j)
                acc += w[j] * table(q[0], j) * table(q[1], j) * table(q[2], j) * table(q[3], j);
            vals[i] = acc * inv_sqrt2;
        });
    } else {
        parallel_for(static_cast<std::int64_t>(quads.size()), [&](std::int64_t i) {
            const auto& q = quads[i];
            try {
                vals[i] = two_body_element(basis, q[0], q[1], q[2], q[3]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (failure.empty()) failure = e.what();
            }
        });
    }
    if (!failure.empty()) throw Error("contact_tensor", failure);

    std::unordered_map<std::uint32_t, double> values;
    values.reserve(quads.size());
    for (std::size_t i = 0; i < quads.size(); ++i)
        values.emplace(
            TwoBodyTensor::canonical_key(quads[i][0], quads[i][1], quads[i][2], quads[i][3]),
            vals[i]);

    const double err = basis.trap().kind == TrapKind::grid ? kGridQuadTol : 1e-14;
    return TwoBodyTensor(basis.hash(), cutoff, std::move(values), err);
}

SymmetryReport check_state_permutation_symmetry(const OneBodyBasis& basis, int trials,
                                                std::uint64_t seed, int max_index) {
    if (max_index < 0) max_index = basis.size();
    max_index = std::min(max_index, basis.size());
    if (max_index < 1)
        throw Error("contact_tensor", "empty basis");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, max_index - 1);

    SymmetryReport report{trials, max_index, 0.0};
    std::array<int, 4> q{};
    for (int t = 0; t < trials; ++t) {
        for (auto& x : q) x = pick(rng);
        std::array<int, 4> p = q;
        std::sort(p.begin(), p.end());
        double lo = 0.0, hi = 0.0;
        bool first = true;
        do {
            const double v = two_body_element(basis, p[0], p[1], p[2], p[3]);
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
        report.max_deviation = std::max(report.max_deviation, (hi - lo) / scale);
    }
    return report;
}

} // namespace spectra1d
