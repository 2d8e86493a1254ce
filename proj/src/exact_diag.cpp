#include "spectra1d/exact_diag.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spectra1d/errors.hpp"
#include "spectra1d/isotypic.hpp"
#include "spectra1d/numeric.hpp"

namespace spectra1d {

namespace {

constexpr int kDimensionCap = 5000;

void enumerate_tuples(const OneBodyBasis& basis, int n, double e_cut, double energy_so_far,
                      std::vector<int>& acc, std::vector<ProductState>& out) {
    if (static_cast<int>(acc.size()) == n) {
        out.push_back(ProductState{acc});
        return;
    }
    const int remaining = n - static_cast<int>(acc.size()) - 1;
    for (int orb = 0; orb < basis.size(); ++orb) {
        const double e = energy_so_far + basis.energy(orb);
        if (e + remaining * basis.energy(0) > e_cut + 1e-9) break;
        acc.push_back(orb);
        enumerate_tuples(basis, n, e_cut, e, acc, out);
        acc.pop_back();
    }
}

double state_energy(const OneBodyBasis& basis, const ProductState& s) {
    double e = 0.0;
    for (int o : s.orbitals) e += basis.energy(o);
    return e;
}

// <u| sum_{i<j} V_ij |v>, zero unless the states differ in at most two slots.
double interaction_element(const ProductState& u, const ProductState& v,
                           const TwoBodyTensor& tensor) {
    const int n = static_cast<int>(u.orbitals.size());
    int diff[2], ndiff = 0;
    for (int i = 0; i < n; ++i) {
        if (u.orbitals[i] != v.orbitals[i]) {
            if (ndiff == 2) return 0.0;
            diff[ndiff++] = i;
        }
    }
    if (ndiff == 2) {
        const int i = diff[0], j = diff[1];
        return tensor.get(u.orbitals[i], u.orbitals[j], v.orbitals[i], v.orbitals[j]);
    }
    if (ndiff == 1) {
        const int i = diff[0];
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                acc += tensor.get(u.orbitals[i], u.orbitals[j], v.orbitals[i], v.orbitals[j]);
        return acc;
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            acc += tensor.get(u.orbitals[i], u.orbitals[j], u.orbitals[i], u.orbitals[j]);
    return acc;
}

} // namespace

ManyBodyMatrix build_hamiltonian(const OneBodyBasis& basis, const TwoBodyTensor& tensor,
                                 int n_particles, double g, double e_cut) {
    if (n_particles < 2 || n_particles > 4)
        throw Error("exact_diag", "brute-force module handles N = 2..4");

    // Coverage: the largest reachable orbital must fit inside the tensor.
    int top_orbital = -1;
    for (int orb = 0; orb < basis.size(); ++orb)
        if ((n_particles - 1) * basis.energy(0) + basis.energy(orb) <= e_cut + 1e-9)
            top_orbital = orb;
    if (top_orbital < 0)
        throw Error("exact_diag", "energy cutoff excludes every state");
    if (top_orbital >= tensor.cutoff())
        throw Error("exact_diag", "truncation coverage: cutoff needs orbital " +
                                      std::to_string(top_orbital) + " but the tensor stops at " +
                                      std::to_string(tensor.cutoff() - 1));

    ManyBodyMatrix mb;
    mb.n_particles = n_particles;
    mb.g = g;
    mb.e_cut = e_cut;
    mb.trap_symmetric = basis.trap().symmetric();
    if (basis.parity()) {
        mb.orbital_parity = std::vector<int>(basis.parity()->begin(),
                                             basis.parity()->begin() + top_orbital + 1);
    }

    std::vector<int> acc;
    enumerate_tuples(basis, n_particles, e_cut, 0.0, acc, mb.basis_states);
    const int dim = mb.dimension();
    if (dim == 0)
        throw Error("exact_diag", "energy cutoff excludes every state");
    if (dim > kDimensionCap)
        throw Error("exact_diag", "basis dimension " + std::to_string(dim) +
                                      " exceeds the dense-solver cap " +
                                      std::to_string(kDimensionCap));

    mb.h.resize(dim, dim);
    parallel_for(dim, [&](std::int64_t a) {
        const auto& u = mb.basis_states[a];
        mb.h(a, a) = state_energy(basis, u) + g * interaction_element(u, u, tensor);
        for (int b = static_cast<int>(a) + 1; b < dim; ++b) {
            const double v = g * interaction_element(u, mb.basis_states[b], tensor);
            mb.h(a, b) = v;
        }
    });
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) mb.h(b, a) = mb.h(a, b);

    mb.basis_hash = basis.hash() * 131 + static_cast<std::uint64_t>(dim);
    return mb;
}

std::vector<double> sector_spectrum(const ManyBodyMatrix& mb, const YoungDiagram& lambda, int k) {
    if (lambda.size() != mb.n_particles)
        throw Error("exact_diag", "diagram size must equal the particle number");

    const int dim = mb.dimension();
    std::map<ProductState, int> index;
    for (int i = 0; i < dim; ++i) index[mb.basis_states[i]] = i;

    PermutationAction action;
    action.degree = mb.n_particles;
    action.dimension = dim;
    for (int kk = 0; kk + 1 < mb.n_particles; ++kk) {
        std::vector<int> map(dim);
        for (int i = 0; i < dim; ++i) {
            ProductState t = mb.basis_states[i];
            std::swap(t.orbitals[kk], t.orbitals[kk + 1]);
            map[i] = index.at(t);
        }
        action.generator_maps.push_back(std::move(map));
    }

    const auto decomp = project_isotypic(action);
    const auto* comp = decomp.find(lambda);
    if (!comp) return {};

    Eigen::MatrixXd reduced = comp->seed_basis.transpose() * mb.h * comp->seed_basis;
    reduced = 0.5 * (reduced + reduced.transpose().eval());
    const auto seed_vals = sym_eigenvalues(reduced);

    std::vector<double> vals;
    vals.reserve(seed_vals.size() * comp->irrep_dim);
    for (double v : seed_vals)
        for (int copy = 0; copy < comp->irrep_dim; ++copy) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    if (static_cast<int>(vals.size()) > k) vals.resize(k);
    return vals;
}

ConvergenceReport convergence_probe(const OneBodyBasis& basis, const TwoBodyTensor& tensor,
                                    int n_particles, double g,
                                    const std::vector<double>& e_cut_schedule, int k,
                                    double tolerance) {
    if (e_cut_schedule.size() < 3)
        throw Error("exact_diag", "convergence probe needs an ascending schedule of >= 3 cutoffs");
    for (std::size_t i = 1; i < e_cut_schedule.size(); ++i)
        if (!(e_cut_schedule[i] > e_cut_schedule[i - 1]))
            throw Error("exact_diag", "cutoff schedule must ascend");

    ConvergenceReport report;
    report.e_cuts = e_cut_schedule;
    report.tolerance = tolerance;
    for (double ec : e_cut_schedule) {
        const auto mb = build_hamiltonian(basis, tensor, n_particles, g, ec);
        report.eigenvalues.push_back(sym_lowest_eigenvalues(mb.h, k));
    }
    const std::size_t nk = report.eigenvalues.front().size();
    report.drifts.assign(nk, 0.0);
    for (std::size_t j = 1; j < report.eigenvalues.size(); ++j)
        for (std::size_t i = 0; i < nk && i < report.eigenvalues[j].size(); ++i)
            report.drifts[i] = std::max(
                report.drifts[i], std::abs(report.eigenvalues[j][i] - report.eigenvalues[j - 1][i]));
    for (std::size_t i = 0; i < nk; ++i)
        if (report.drifts[i] > tolerance) report.flagged.push_back(static_cast<int>(i));
    return report;
}

} // namespace spectra1d
