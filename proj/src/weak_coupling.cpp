#include "spectra1d/weak_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spectra1d/errors.hpp"
#include "spectra1d/numeric.hpp"

namespace spectra1d {

namespace {

constexpr double kEnergyGroupTol = 1e-9;

void enumerate_multisets(const OneBodyBasis& basis, int n, double e_cut, int start,
                         double energy_so_far, std::vector<int>& acc,
                         std::vector<std::pair<double, std::vector<int>>>& out) {
    if (static_cast<int>(acc.size()) == n) {
        out.emplace_back(energy_so_far, acc);
        return;
    }
    for (int orb = start; orb < basis.size(); ++orb) {
        const double e = energy_so_far + basis.energy(orb);
        if (e > e_cut + kEnergyGroupTol) break; // energies ascend
        acc.push_back(orb);
        enumerate_multisets(basis, n, e_cut, orb, e, acc, out);
        acc.pop_back();
    }
}

std::vector<ProductState> arrangements(const std::vector<int>& multiset) {
    std::vector<ProductState> states;
    auto perm = multiset; // sorted
    do {
        states.push_back(ProductState{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return states;
}

// <u| sum_{i<j} V_ij |v> per unit g; zero unless u and v agree outside at
// most two slots.
double pair_interaction_element(const ProductState& u, const ProductState& v,
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

SplittingReport analyze(const std::vector<const DegenerateLevel*>& levels,
                        const TwoBodyTensor& tensor, bool generic) {
    std::vector<ProductState> states;
    for (const auto* lv : levels)
        states.insert(states.end(), lv->states.begin(), lv->states.end());
    const int dim = static_cast<int>(states.size());
    const int n = static_cast<int>(states.front().orbitals.size());

    Eigen::MatrixXd w(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            const double v = pair_interaction_element(states[a], states[b], tensor);
            w(a, b) = v;
            w(b, a) = v;
        }

    SplittingReport report;
    report.level_energy = levels.front()->energy;
    report.multiset = levels.front()->multiset;
    for (std::size_t i = 1; i < levels.size(); ++i)
        report.merged_multisets.push_back(levels[i]->multiset);
    report.state_count = dim;
    report.generic = generic;
    report.w_trace = w.trace();

    // Adjacent-transposition action on the state list: s_k swaps slots k,k+1.
    std::map<ProductState, int> index;
    for (int i = 0; i < dim; ++i) index[states[i]] = i;
    PermutationAction action;
    action.degree = n;
    action.dimension = dim;
    for (int k = 0; k + 1 < n; ++k) {
        std::vector<int> map(dim);
        for (int i = 0; i < dim; ++i) {
            ProductState t = states[i];
            std::swap(t.orbitals[k], t.orbitals[k + 1]);
            map[i] = index.at(t);
        }
        action.generator_maps.push_back(std::move(map));
    }

    const auto decomp = project_isotypic(action);
    int max_block = 0;
    for (const auto& comp : decomp.components) {
        SplittingBlock block;
        block.lambda = comp.lambda;
        block.size = comp.multiplicity;
        block.reduced = comp.seed_basis.transpose() * w * comp.seed_basis;
        block.reduced = 0.5 * (block.reduced + block.reduced.transpose().eval());
        block.eigenvalues = sym_eigenvalues(block.reduced);
        max_block = std::max(max_block, block.size);
        for (double ev : block.eigenvalues)
            report.first_order_energies.push_back(LabeledShift{ev, comp.lambda});
        report.blocks.push_back(std::move(block));
    }
    report.solvable = max_block <= 4;
    std::sort(report.first_order_energies.begin(), report.first_order_energies.end(),
              [](const LabeledShift& x, const LabeledShift& y) { return x.shift < y.shift; });
    return report;
}

} // namespace

std::vector<DegenerateLevel> enumerate_levels(const OneBodyBasis& basis, int n_particles,
                                              double e_cut) {
    if (n_particles < 1 || n_particles > kMaxDegree)
        throw Error("weak_coupling",
                    "particle number out of range 1.." + std::to_string(kMaxDegree));
    // Completeness: any multiset using an orbital beyond the basis costs at
    // least (N-1)·eps_0 + eps_max, so the cutoff must stay below that.
    const double coverage =
        (n_particles - 1) * basis.energy(0) + basis.energy(basis.size() - 1);
    if (e_cut > coverage + kEnergyGroupTol)
        throw Error("weak_coupling", "energy cutoff " + std::to_string(e_cut) +
                                         " exceeds basis coverage " + std::to_string(coverage) +
                                         "; extend the one-body basis");

    std::vector<std::pair<double, std::vector<int>>> multisets;
    std::vector<int> acc;
    enumerate_multisets(basis, n_particles, e_cut, 0, 0.0, acc, multisets);
    std::sort(multisets.begin(), multisets.end());

    std::vector<DegenerateLevel> levels;
    levels.reserve(multisets.size());
    for (auto& [energy, multiset] : multisets) {
        DegenerateLevel lv;
        lv.energy = energy;
        lv.multiset = multiset;
        lv.states = arrangements(multiset);
        levels.push_back(std::move(lv));
    }
    // Cross-flag accidental partners (distinct multisets, same energy).
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1;
             j < levels.size() && levels[j].energy - levels[i].energy <= kEnergyGroupTol; ++j) {
            levels[i].accidental_partners.push_back(levels[j].multiset);
            levels[j].accidental_partners.push_back(levels[i].multiset);
        }
    }
    return levels;
}

SplittingReport first_order_splitting(const DegenerateLevel& level, const TwoBodyTensor& tensor) {
    if (!level.generic())
        throw Error("weak_coupling",
                    "level at energy " + std::to_string(level.energy) +
                        " has accidental partners; merge them explicitly with "
                        "first_order_splitting_merged");
    return analyze({&level}, tensor, true);
}

SplittingReport first_order_splitting_merged(const std::vector<DegenerateLevel>& levels,
                                             const TwoBodyTensor& tensor) {
    if (levels.empty())
        throw Error("weak_coupling", "nothing to merge");
    for (const auto& lv : levels)
        if (std::abs(lv.energy - levels.front().energy) > kEnergyGroupTol)
            throw Error("weak_coupling", "merged levels must share one energy");
    std::vector<const DegenerateLevel*> ptrs;
    for (const auto& lv : levels) ptrs.push_back(&lv);
    return analyze(ptrs, tensor, levels.size() == 1);
}

std::vector<PhysicalLine> assemble_statistics(const SplittingReport& report, Statistics stat,
                                              int J) {
    if (J < 1)
        throw Error("weak_coupling", "component count J must be >= 1");
    std::vector<PhysicalLine> lines;
    for (const auto& block : report.blocks) {
        const std::int64_t mult = spin_multiplicity(block.lambda, stat, J);
        if (mult == 0) continue;
        for (double ev : block.eigenvalues)
            lines.push_back(PhysicalLine{ev, block.lambda, mult});
    }
    std::sort(lines.begin(), lines.end(),
              [](const PhysicalLine& x, const PhysicalLine& y) { return x.shift < y.shift; });
    return lines;
}

} // namespace spectra1d
