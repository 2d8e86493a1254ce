#include "spectra1d/unitary_limit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "spectra1d/contact_tensor.hpp"
#include "spectra1d/errors.hpp"
#include "spectra1d/exact_diag.hpp"
#include "spectra1d/isotypic.hpp"
#include "spectra1d/numeric.hpp"

namespace spectra1d {

namespace {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void enumerate_subsets(const OneBodyBasis& basis, int n, double e_cut, int start,
                       double energy_so_far, std::vector<int>& acc,
                       std::vector<UnitaryLevel>& out) {
    if (static_cast<int>(acc.size()) == n) {
        out.push_back(UnitaryLevel{acc, energy_so_far, factorial(n)});
        return;
    }
    for (int orb = start; orb < basis.size(); ++orb) {
        const double e = energy_so_far + basis.energy(orb);
        if (e > e_cut + 1e-9) break;
        acc.push_back(orb);
        enumerate_subsets(basis, n, e_cut, orb + 1, e, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<UnitaryLevel> unitary_spectrum(const OneBodyBasis& basis, int n_particles,
                                           double e_cut) {
    if (n_particles < 1 || n_particles > kMaxDegree)
        throw Error("unitary_limit",
                    "particle number out of range 1.." + std::to_string(kMaxDegree));
    if (basis.size() < n_particles)
        throw Error("unitary_limit", "basis smaller than the particle number");
    double coverage = basis.energy(basis.size() - 1);
    for (int i = 0; i + 1 < n_particles; ++i) coverage += basis.energy(i);
    if (e_cut > coverage + 1e-9)
        throw Error("unitary_limit", "energy cutoff " + std::to_string(e_cut) +
                                         " exceeds basis coverage " + std::to_string(coverage) +
                                         "; extend the one-body basis");

    std::vector<UnitaryLevel> levels;
    std::vector<int> acc;
    enumerate_subsets(basis, n_particles, e_cut, 0, 0.0, acc, levels);
    std::stable_sort(levels.begin(), levels.end(),
                     [](const UnitaryLevel& a, const UnitaryLevel& b) {
                         if (a.energy != b.energy) return a.energy < b.energy;
                         return a.orbitals < b.orbitals;
                     });
    return levels;
}

Permutation particle_action(const Permutation& p, const Permutation& sector) {
    return sector.compose(p.inverse());
}

Permutation ordering_action(const Permutation& o, const Permutation& sector) {
    return o.compose(sector);
}

SectorGraph::SectorGraph(int n_particles, std::vector<double> tunneling)
    : n_(n_particles), tunneling_(std::move(tunneling)) {
    if (n_ < 2 || n_ > kMaxDegree)
        throw Error("unitary_limit", "sector graph needs 2 <= N <= " + std::to_string(kMaxDegree));
    if (static_cast<int>(tunneling_.size()) != n_ - 1)
        throw Error("unitary_limit", "need N-1 tunneling parameters");
    for (double t : tunneling_)
        if (!(t >= 0.0)) throw Error("unitary_limit", "tunneling parameters must be >= 0");

    nodes_ = all_permutations(n_);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < nodes_.size(); ++i) index[nodes_[i].images()] = static_cast<int>(i);

    matchings_.resize(n_ - 1);
    for (int k = 1; k <= n_ - 1; ++k) {
        auto& match = matchings_[k - 1];
        match.resize(nodes_.size());
        const auto sk = Permutation::adjacent_transposition(n_, k);
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            match[i] = index.at(nodes_[i].compose(sk).images());
    }
}

bool SectorGraph::palindromic(double tol) const {
    for (int k = 0; k < n_ - 1; ++k) {
        const double a = tunneling_[k], b = tunneling_[n_ - 2 - k];
        if (std::abs(a - b) > tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) return false;
    }
    return true;
}

Eigen::MatrixXd SectorGraph::effective_hamiltonian() const {
    const int dim = static_cast<int>(nodes_.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < n_ - 1; ++k)
        for (int i = 0; i < dim; ++i) h(i, matchings_[k][i]) -= tunneling_[k];
    return h;
}

NearUnitaryReport near_unitary_splitting(const SectorGraph& graph, bool trap_symmetric) {
    const int n = graph.particles();
    if (n > 6)
        throw Error("unitary_limit",
                    "near-unitary splitting runs the averaging projector; N is capped at 6");
    if (trap_symmetric && !graph.palindromic())
        throw Error("unitary_limit",
                    "trap flagged symmetric but the tunneling sequence is not palindromic");

    const auto& nodes = graph.nodes();
    const int dim = static_cast<int>(nodes.size());
    const Eigen::MatrixXd heff = graph.effective_hamiltonian();

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim; ++i) index[nodes[i].images()] = i;

    // Ordering permutations act by left multiplication.  The decomposition of
    // that action depends on N only, so it is cached across calls.
    static std::mutex cache_mu;
    static std::map<int, IsotypicDecomposition> cache;
    const IsotypicDecomposition* decomp_ptr = nullptr;
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(n);
        if (it == cache.end()) {
            PermutationAction action;
            action.degree = n;
            action.dimension = dim;
            for (int k = 1; k <= n - 1; ++k) {
                const auto sk = Permutation::adjacent_transposition(n, k);
                std::vector<int> map(dim);
                for (int i = 0; i < dim; ++i) map[i] = index.at(sk.compose(nodes[i]).images());
                action.generator_maps.push_back(std::move(map));
            }
            it = cache.emplace(n, project_isotypic(action)).first;
        }
        decomp_ptr = &it->second;
    }
    const auto& decomp = *decomp_ptr;

    // Order reversal s -> s∘w0 maps edge class k to N-k; it commutes with
    // H_eff exactly when t is palindromic.
    std::vector<int> reversal(dim);
    if (trap_symmetric) {
        for (int i = 0; i < dim; ++i) {
            auto im = nodes[i].images();
            std::reverse(im.begin(), im.end());
            reversal[i] = index.at(im);
        }
    }

    NearUnitaryReport report;
    report.n_particles = n;
    report.tunneling = graph.tunneling();
    report.trap_symmetric = trap_symmetric;

    int max_block = 0;
    for (const auto& comp : decomp.components) {
        Eigen::MatrixXd reduced = comp.seed_basis.transpose() * heff * comp.seed_basis;
        reduced = 0.5 * (reduced + reduced.transpose().eval());
        if (!trap_symmetric) {
            NearUnitaryBlock block;
            block.lambda = comp.lambda;
            block.size = comp.multiplicity;
            block.eigenvalues = sym_eigenvalues(reduced);
            max_block = std::max(max_block, block.size);
            report.blocks.push_back(std::move(block));
            continue;
        }
        // Reversal restricted to the seed space: symmetric involution.
        Eigen::MatrixXd rs(dim, comp.multiplicity);
        for (int c = 0; c < comp.multiplicity; ++c)
            for (int i = 0; i < dim; ++i) rs(reversal[i], c) = comp.seed_basis(i, c);
        Eigen::MatrixXd rm = comp.seed_basis.transpose() * rs;
        rm = 0.5 * (rm + rm.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rm);
        for (int c = 0; c < comp.multiplicity; ++c)
            if (std::abs(std::abs(es.eigenvalues()(c)) - 1.0) > 1e-8)
                throw Error("unitary_limit", "order-reversal involution has a non-unimodular "
                                             "eigenvalue; tunneling inconsistent with symmetry");
        for (int parity : {-1, +1}) {
            std::vector<int> cols;
            for (int c = 0; c < comp.multiplicity; ++c)
                if ((es.eigenvalues()(c) < 0) == (parity < 0)) cols.push_back(c);
            if (cols.empty()) continue;
            Eigen::MatrixXd sub(comp.multiplicity, static_cast<int>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) sub.col(c) = es.eigenvectors().col(cols[c]);
            Eigen::MatrixXd wsub = sub.transpose() * reduced * sub;
            wsub = 0.5 * (wsub + wsub.transpose().eval());

            NearUnitaryBlock block;
            block.lambda = comp.lambda;
            block.reversal_parity = parity;
            block.size = static_cast<int>(cols.size());
            block.eigenvalues = sym_eigenvalues(wsub);
            max_block = std::max(max_block, block.size);
            report.blocks.push_back(std::move(block));
        }
    }
    report.solvable = max_block <= 4;
    if (trap_symmetric && n <= 5 && !report.solvable) {
        report.discrepancy = true;
        report.discrepancy_note =
            "symmetric-trap N=" + std::to_string(n) + " produced a block larger than 4, "
            "contradicting the asserted algebraic solvability";
    }
    return report;
}

std::int64_t degeneracy_count(int n_particles, int J, Statistics stat) {
    std::int64_t total = 0;
    for (const auto& line : degeneracy_breakdown(n_particles, J, stat))
        total += line.tableaux * line.spin;
    return total;
}

std::vector<DegeneracyLine> degeneracy_breakdown(int n_particles, int J, Statistics stat) {
    if (n_particles < 1 || n_particles > kMaxDegree)
        throw Error("unitary_limit",
                    "particle number out of range 1.." + std::to_string(kMaxDegree));
    if (J < 1)
        throw Error("unitary_limit", "component count J must be >= 1");
    std::vector<DegeneracyLine> lines;
    for (const auto& lambda : partitions_of(n_particles)) {
        DegeneracyLine line;
        line.lambda = lambda;
        line.tableaux = standard_tableaux_count(lambda);
        line.spin = spin_multiplicity(lambda, stat, J);
        lines.push_back(std::move(line));
    }
    return lines;
}

std::vector<UnitaryStatisticsLine> assemble_unitary_statistics(const NearUnitaryReport& report,
                                                               Statistics stat, int J) {
    if (J < 1)
        throw Error("unitary_limit", "component count J must be >= 1");
    std::vector<UnitaryStatisticsLine> lines;
    for (const auto& block : report.blocks) {
        const std::int64_t mult = spin_multiplicity(block.lambda, stat, J);
        if (mult == 0) continue;
        for (double ev : block.eigenvalues)
            lines.push_back(UnitaryStatisticsLine{ev, block.lambda, mult});
    }
    std::sort(lines.begin(), lines.end(), [](const UnitaryStatisticsLine& x,
                                             const UnitaryStatisticsLine& y) {
        return x.shift < y.shift;
    });
    return lines;
}

namespace {

std::vector<double> default_fit_schedule(const OneBodyBasis& basis, int n) {
    const double pi2 = M_PI * M_PI / 2.0;
    switch (basis.trap().kind) {
        case TrapKind::harmonic:
            return n == 2 ? std::vector<double>{21.0, 41.0, 81.0}
                          : std::vector<double>{13.5, 19.5, 25.5};
        case TrapKind::infinite_well:
            return n == 2 ? std::vector<double>{200.0 * pi2, 800.0 * pi2, 3200.0 * pi2}
                          : std::vector<double>{60.0 * pi2, 120.0 * pi2, 240.0 * pi2};
        case TrapKind::grid:
            throw Error("unitary_limit",
                        "grid traps need an explicit e_cut schedule for the tunneling fit");
    }
    return {};
}

} // namespace

TunnelingFit tunneling_from_fit(const OneBodyBasis& basis, int n_particles,
                                const std::vector<double>& g_values,
                                const TunnelingFitOptions& opts) {
    if (n_particles < 2 || n_particles > 3)
        throw Error("unitary_limit", "the fit runs the brute-force oracle; N is capped at 3");
    if (!basis.trap().symmetric())
        throw Error("unitary_limit",
                    "tunneling fit assumes a symmetric trap (single tunneling parameter)");
    if (g_values.size() < 2)
        throw Error("unitary_limit", "cannot fit from a single coupling; provide g >= 10 samples "
                                     "at several couplings");
    if (g_values.size() < 3)
        throw Error("unitary_limit", "the corrected power fit needs at least 3 couplings");
    for (std::size_t i = 0; i < g_values.size(); ++i) {
        if (g_values[i] < 10.0)
            throw Error("unitary_limit", "couplings must satisfy g >= 10 (near-unitary regime)");
        if (i > 0 && g_values[i] <= g_values[i - 1])
            throw Error("unitary_limit", "couplings must ascend (descending 1/g)");
    }

    auto schedule = opts.e_cut_schedule.empty() ? default_fit_schedule(basis, n_particles)
                                                : opts.e_cut_schedule;
    if (schedule.size() < 2)
        throw Error("unitary_limit", "the cutoff schedule needs >= 2 entries");
    std::sort(schedule.begin(), schedule.end());

    // Fermionized top of the lowest multiplet: exact in any truncated basis.
    double e_top = 0.0;
    for (int i = 0; i < n_particles; ++i) e_top += basis.energy(i);

    // Per cutoff: project H0 and H(g=1) onto the totally symmetric seed space
    // once, then sweep g on the small reduced pair.
    std::vector<std::vector<double>> ground(schedule.size(),
                                            std::vector<double>(g_values.size(), 0.0));
    for (std::size_t ci = 0; ci < schedule.size(); ++ci) {
        const double e_cut = schedule[ci];
        int top_orbital = 0;
        for (int orb = 0; orb < basis.size(); ++orb)
            if ((n_particles - 1) * basis.energy(0) + basis.energy(orb) <= e_cut + 1e-9)
                top_orbital = orb;
        const double pair_cap = e_cut - (n_particles - 2) * basis.energy(0);
        const auto tensor = build_tensor(basis, top_orbital + 1, pair_cap);
        const auto mb = build_hamiltonian(basis, tensor, n_particles, 1.0, e_cut);

        std::map<ProductState, int> index;
        for (int i = 0; i < mb.dimension(); ++i) index[mb.basis_states[i]] = i;
        PermutationAction action;
        action.degree = n_particles;
        action.dimension = mb.dimension();
        for (int k = 0; k + 1 < n_particles; ++k) {
            std::vector<int> map(mb.dimension());
            for (int i = 0; i < mb.dimension(); ++i) {
                ProductState t = mb.basis_states[i];
                std::swap(t.orbitals[k], t.orbitals[k + 1]);
                map[i] = index.at(t);
            }
            action.generator_maps.push_back(std::move(map));
        }
        const auto decomp = project_isotypic(action);
        const auto* sym = decomp.find(YoungDiagram(std::vector<int>{n_particles}));
        if (!sym)
            throw Error("unitary_limit", "symmetric sector vanished; cutoff too small");

        Eigen::VectorXd diag(mb.dimension());
        for (int i = 0; i < mb.dimension(); ++i) {
            double e = 0.0;
            for (int o : mb.basis_states[i].orbitals) e += basis.energy(o);
            diag(i) = e;
        }
        const Eigen::MatrixXd h1m = sym->seed_basis.transpose() * mb.h * sym->seed_basis;
        const Eigen::MatrixXd d0m =
            sym->seed_basis.transpose() * diag.asDiagonal() * sym->seed_basis;
        for (std::size_t gi = 0; gi < g_values.size(); ++gi) {
            const double g = g_values[gi];
            Eigen::MatrixXd hm = (1.0 - g) * d0m + g * h1m;
            hm = 0.5 * (hm + hm.transpose().eval());
            ground[ci][gi] = sym_lowest_eigenvalues(hm, 1).front();
        }
    }

    TunnelingFit fit;
    fit.g_values = g_values;
    fit.e_cut_schedule = schedule;
    for (std::size_t gi = 0; gi < g_values.size(); ++gi) {
        std::vector<double> es(schedule.size());
        for (std::size_t ci = 0; ci < schedule.size(); ++ci) es[ci] = ground[ci][gi];
        const auto [einf, slope] = inverse_power_extrapolate(schedule, es, 0.5);
        (void)slope;
        fit.splittings.push_back(e_top - einf);
    }

    for (std::size_t gi = 0; gi < fit.splittings.size(); ++gi) {
        if (!(fit.splittings[gi] > 0.0))
            throw Error("unitary_limit", "non-positive extrapolated splitting; enlarge the "
                                         "cutoff schedule or increase g");
        if (gi > 0 && !(fit.splittings[gi] < fit.splittings[gi - 1]))
            throw Error("unitary_limit",
                        "splittings are not monotone in g; enlarge g or the cutoff schedule");
    }

    // Pinned model: spread = c/g + d/g².
    {
        const int m = static_cast<int>(g_values.size());
        Eigen::MatrixXd a(m, 2);
        Eigen::VectorXd b(m);
        for (int i = 0; i < m; ++i) {
            const double x = 1.0 / g_values[i];
            a(i, 0) = x;
            a(i, 1) = x * x;
            b(i) = fit.splittings[i];
        }
        Eigen::Vector2d c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
        fit.coefficient = c(0);
        fit.curvature = c(1);
    }

    const auto power = fit_power_law_with_correction(g_values, fit.splittings);
    fit.exponent = power.exponent;
    fit.exponent_residual = power.rel_rms;

    // Spread of -sum t A_k with palindromic t: 2 t (N-1).
    for (double s : fit.splittings) fit.t_estimates.push_back(s / (2.0 * (n_particles - 1)));
    return fit;
}

} // namespace spectra1d
