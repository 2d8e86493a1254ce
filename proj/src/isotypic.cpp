#include "spectra1d/isotypic.hpp"

#include <algorithm>
#include <cmath>

#include "spectra1d/errors.hpp"
#include "spectra1d/irreps.hpp"

namespace spectra1d {

namespace {

constexpr double kOrthoTol = 1e-10;

std::vector<int> compose_maps(const std::vector<int>& f, const std::vector<int>& g) {
    // (f∘g)(i) = f(g(i))
    std::vector<int> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
    return out;
}

void check_permutation_relations(const PermutationAction& a) {
    const int n = a.degree;
    const int d = a.dimension;
    std::vector<int> id(d);
    for (int i = 0; i < d; ++i) id[i] = i;

    for (int k = 0; k < n - 1; ++k) {
        const auto& m = a.generator_maps[k];
        if (static_cast<int>(m.size()) != d)
            throw Error("group_theory", "generator map size mismatch");
        std::vector<char> seen(d, 0);
        for (int v : m) {
            if (v < 0 || v >= d || seen[v])
                throw Error("group_theory", "generator s_" + std::to_string(k + 1) +
                                                " is not a permutation of the basis");
            seen[v] = 1;
        }
        if (compose_maps(m, m) != id)
            throw Error("group_theory",
                        "relation s_" + std::to_string(k + 1) + "^2 = id violated");
    }
    for (int k = 0; k + 1 < n - 1; ++k) {
        const auto& s1 = a.generator_maps[k];
        const auto& s2 = a.generator_maps[k + 1];
        if (compose_maps(s1, compose_maps(s2, s1)) != compose_maps(s2, compose_maps(s1, s2)))
            throw Error("group_theory", "braid relation s_" + std::to_string(k + 1) + " s_" +
                                            std::to_string(k + 2) + " s_" + std::to_string(k + 1) +
                                            " violated");
    }
    for (int k = 0; k < n - 1; ++k)
        for (int j = k + 2; j < n - 1; ++j) {
            const auto& sk = a.generator_maps[k];
            const auto& sj = a.generator_maps[j];
            if (compose_maps(sk, sj) != compose_maps(sj, sk))
                throw Error("group_theory", "commutation s_" + std::to_string(k + 1) + " s_" +
                                                std::to_string(j + 1) + " violated");
        }
}

std::vector<std::vector<int>> find_orbits(const PermutationAction& a) {
    const int d = a.dimension;
    std::vector<int> owner(d, -1);
    std::vector<std::vector<int>> orbits;
    for (int start = 0; start < d; ++start) {
        if (owner[start] >= 0) continue;
        std::vector<int> orbit{start};
        owner[start] = static_cast<int>(orbits.size());
        for (std::size_t q = 0; q < orbit.size(); ++q) {
            for (const auto& m : a.generator_maps) {
                const int to = m[orbit[q]];
                if (owner[to] < 0) {
                    owner[to] = owner[start];
                    orbit.push_back(to);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

void fix_column_signs(Eigen::MatrixXd& m) {
    for (int c = 0; c < m.cols(); ++c) {
        int imax = 0;
        for (int r = 1; r < m.rows(); ++r)
            if (std::abs(m(r, c)) > std::abs(m(imax, c))) imax = r;
        if (m(imax, c) < 0) m.col(c) = -m.col(c);
    }
}

void check_orthonormal(const Eigen::MatrixXd& b, const char* what) {
    if (b.cols() == 0) return;
    const Eigen::MatrixXd gram = b.transpose() * b;
    const double dev =
        (gram - Eigen::MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
    if (dev > kOrthoTol)
        throw Error("group_theory", std::string(what) + " basis lost orthonormality (deviation " +
                                        std::to_string(dev) + ")");
}

// Averaged projector/transfer accumulation on one orbit for one irrep.
// Walks S_N once in plain-changes order; each step is a single adjacent
// transposition, so the group element's irrep matrix and its action map are
// both updated incrementally.
struct OrbitAverages {
    Eigen::MatrixXd e11;                  // |O|×|O|
    std::vector<Eigen::MatrixXd> trans;   // e_{i1}, i = 1..d-1, when requested
};

OrbitAverages average_orbit(const std::vector<std::vector<int>>& local_maps, int orbit_size,
                            int degree, const IrrepMatrixSet& irrep, bool want_transfers) {
    const int d = irrep.dimension;
    OrbitAverages acc;
    acc.e11 = Eigen::MatrixXd::Zero(orbit_size, orbit_size);
    if (want_transfers)
        acc.trans.assign(d - 1, Eigen::MatrixXd::Zero(orbit_size, orbit_size));

    std::vector<int> sigma(orbit_size);
    for (int i = 0; i < orbit_size; ++i) sigma[i] = i;
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(d, d);

    PlainChanges walk(degree);
    std::int64_t count = 0;
    while (true) {
        ++count;
        const double c00 = gamma(0, 0);
        for (int i = 0; i < orbit_size; ++i) acc.e11(sigma[i], i) += c00;
        if (want_transfers)
            for (int r = 1; r < d; ++r) {
                const double cr0 = gamma(r, 0);
                for (int i = 0; i < orbit_size; ++i) acc.trans[r - 1](sigma[i], i) += cr0;
            }
        const int k = walk.next();
        if (k == 0) break;
        gamma = gamma * irrep.generator_matrices[k - 1];
        sigma = compose_maps(sigma, local_maps[k - 1]);
    }
    const double scale = static_cast<double>(d) / static_cast<double>(count);
    acc.e11 *= scale;
    for (auto& t : acc.trans) t *= scale;
    return acc;
}

} // namespace

const IsotypicComponent* IsotypicDecomposition::find(const YoungDiagram& lambda) const {
    for (const auto& c : components)
        if (c.lambda == lambda) return &c;
    return nullptr;
}

std::int64_t IsotypicDecomposition::multiplicity_of(const YoungDiagram& lambda) const {
    const auto* c = find(lambda);
    return c ? c->multiplicity : 0;
}

IsotypicDecomposition project_isotypic(const PermutationAction& action,
                                       const ProjectOptions& opts) {
    const int n = action.degree;
    const int dim = action.dimension;
    if (n < 1 || n > kMaxDegree)
        throw Error("group_theory", "project_isotypic: degree out of range");
    if (dim < 1)
        throw Error("group_theory", "project_isotypic: empty space");
    if (static_cast<int>(action.generator_maps.size()) != n - 1)
        throw Error("group_theory", "project_isotypic: expected N-1 generator maps");

    IsotypicDecomposition out;
    out.dimension = dim;

    if (n == 1) {
        IsotypicComponent c{YoungDiagram({1}), dim, 1, Eigen::MatrixXd::Identity(dim, dim), {}};
        if (opts.want_full_basis) c.full_basis = c.seed_basis;
        out.components.push_back(std::move(c));
        return out;
    }

    check_permutation_relations(action);
    const auto orbits = find_orbits(action);

    const auto lambdas = partitions_of(n);
    std::vector<IrrepMatrixSet> irreps;
    irreps.reserve(lambdas.size());
    for (const auto& l : lambdas) irreps.push_back(irrep_matrices(l));

    std::vector<std::vector<Eigen::VectorXd>> seeds(lambdas.size());
    std::vector<std::vector<Eigen::VectorXd>> fulls(lambdas.size());

    for (const auto& orbit : orbits) {
        const int osz = static_cast<int>(orbit.size());
        std::vector<int> local_of(dim, -1);
        for (int i = 0; i < osz; ++i) local_of[orbit[i]] = i;
        std::vector<std::vector<int>> local_maps(n - 1, std::vector<int>(osz));
        for (int k = 0; k < n - 1; ++k)
            for (int i = 0; i < osz; ++i)
                local_maps[k][i] = local_of[action.generator_maps[k][orbit[i]]];

        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            const int d = irreps[li].dimension;
            auto avg = average_orbit(local_maps, osz, n, irreps[li], opts.want_full_basis);
            Eigen::MatrixXd proj = 0.5 * (avg.e11 + avg.e11.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
            for (int c = 0; c < osz; ++c) {
                if (es.eigenvalues()(c) < 0.5) continue;
                Eigen::VectorXd local = es.eigenvectors().col(c);
                int imax = 0;
                for (int i = 1; i < osz; ++i)
                    if (std::abs(local(i)) > std::abs(local(imax))) imax = i;
                if (local(imax) < 0) local = -local;
                Eigen::VectorXd global = Eigen::VectorXd::Zero(dim);
                for (int i = 0; i < osz; ++i) global(orbit[i]) = local(i);
                seeds[li].push_back(global);
                if (opts.want_full_basis) {
                    fulls[li].push_back(global);
                    for (int r = 1; r < d; ++r) {
                        Eigen::VectorXd tl = avg.trans[r - 1] * local;
                        Eigen::VectorXd tg = Eigen::VectorXd::Zero(dim);
                        for (int i = 0; i < osz; ++i) tg(orbit[i]) = tl(i);
                        fulls[li].push_back(tg);
                    }
                }
            }
        }
    }

    std::int64_t total = 0;
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const int m = static_cast<int>(seeds[li].size());
        if (m == 0) continue;
        const int d = irreps[li].dimension;
        IsotypicComponent comp{lambdas[li], m, d, Eigen::MatrixXd(dim, m), {}};
        for (int c = 0; c < m; ++c) comp.seed_basis.col(c) = seeds[li][c];
        check_orthonormal(comp.seed_basis, "seed");
        if (opts.want_full_basis) {
            comp.full_basis.resize(dim, m * d);
            for (int c = 0; c < m * d; ++c) comp.full_basis.col(c) = fulls[li][c];
            check_orthonormal(comp.full_basis, "isotypic");
        }
        total += static_cast<std::int64_t>(m) * d;
        out.components.push_back(std::move(comp));
    }
    if (total != dim)
        throw Error("group_theory", "isotypic multiplicities do not sum to the space dimension (" +
                                        std::to_string(total) + " vs " + std::to_string(dim) + ")");
    return out;
}

namespace {

std::optional<PermutationAction> as_permutation_action(const MatrixAction& action) {
    PermutationAction p;
    p.degree = action.degree;
    p.dimension = static_cast<int>(action.generators.empty() ? 0 : action.generators[0].rows());
    for (const auto& g : action.generators) {
        std::vector<int> map(g.rows(), -1);
        for (int col = 0; col < g.cols(); ++col) {
            int hit = -1;
            for (int row = 0; row < g.rows(); ++row) {
                const double v = g(row, col);
                if (std::abs(v - 1.0) < 1e-12) {
                    if (hit >= 0) return std::nullopt;
                    hit = row;
                } else if (std::abs(v) > 1e-12) {
                    return std::nullopt;
                }
            }
            if (hit < 0) return std::nullopt;
            map[col] = hit;
        }
        p.generator_maps.push_back(std::move(map));
    }
    return p;
}

void check_matrix_relations(const MatrixAction& a, double tol) {
    const int n = a.degree;
    const auto D = a.generators.empty() ? 0 : a.generators[0].rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(D, D);
    auto residual = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
        return (x - y).cwiseAbs().maxCoeff();
    };
    for (int k = 0; k < n - 1; ++k) {
        const auto& g = a.generators[k];
        if (g.rows() != D || g.cols() != D)
            throw Error("group_theory", "generator matrices must share one square size");
        double r = residual(g.transpose() * g, id);
        if (r > tol)
            throw Error("group_theory", "generator s_" + std::to_string(k + 1) +
                                            " is not orthogonal (residual " + std::to_string(r) + ")");
        r = residual(g * g, id);
        if (r > tol)
            throw Error("group_theory", "relation s_" + std::to_string(k + 1) +
                                            "^2 = id violated (residual " + std::to_string(r) + ")");
    }
    for (int k = 0; k + 1 < n - 1; ++k) {
        const auto& s1 = a.generators[k];
        const auto& s2 = a.generators[k + 1];
        const double r = residual(s1 * s2 * s1, s2 * s1 * s2);
        if (r > tol)
            throw Error("group_theory", "braid relation s_" + std::to_string(k + 1) + " s_" +
                                            std::to_string(k + 2) + " s_" + std::to_string(k + 1) +
                                            " violated (residual " + std::to_string(r) + ")");
    }
    for (int k = 0; k < n - 1; ++k)
        for (int j = k + 2; j < n - 1; ++j) {
            const double r = residual(a.generators[k] * a.generators[j],
                                      a.generators[j] * a.generators[k]);
            if (r > tol)
                throw Error("group_theory", "commutation s_" + std::to_string(k + 1) + " s_" +
                                                std::to_string(j + 1) + " violated (residual " +
                                                std::to_string(r) + ")");
        }
}

} // namespace

IsotypicDecomposition project_isotypic(const MatrixAction& action, const ProjectOptions& opts) {
    const int n = action.degree;
    if (n < 1 || n > kMaxDegree)
        throw Error("group_theory", "project_isotypic: degree out of range");
    if (n == 1)
        throw Error("group_theory", "project_isotypic: degree-1 matrix action needs no generators; "
                                    "use the permutation form with an explicit dimension");
    if (static_cast<int>(action.generators.size()) != n - 1)
        throw Error("group_theory", "project_isotypic: expected N-1 generator matrices");

    check_matrix_relations(action, opts.relation_tol);
    if (auto perm = as_permutation_action(action))
        return project_isotypic(*perm, opts);

    const int dim = static_cast<int>(action.generators[0].rows());
    const auto lambdas = partitions_of(n);

    IsotypicDecomposition out;
    out.dimension = dim;
    std::int64_t total = 0;
    for (const auto& lambda : lambdas) {
        const auto irrep = irrep_matrices(lambda);
        const int d = irrep.dimension;

        Eigen::MatrixXd e11 = Eigen::MatrixXd::Zero(dim, dim);
        std::vector<Eigen::MatrixXd> trans;
        if (opts.want_full_basis)
            trans.assign(d - 1, Eigen::MatrixXd::Zero(dim, dim));

        Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(d, d);
        PlainChanges walk(n);
        std::int64_t count = 0;
        while (true) {
            ++count;
            e11 += gamma(0, 0) * u;
            if (opts.want_full_basis)
                for (int r = 1; r < d; ++r) trans[r - 1] += gamma(r, 0) * u;
            const int k = walk.next();
            if (k == 0) break;
            gamma = gamma * irrep.generator_matrices[k - 1];
            u = u * action.generators[k - 1];
        }
        const double scale = static_cast<double>(d) / static_cast<double>(count);
        e11 *= scale;
        for (auto& t : trans) t *= scale;

        Eigen::MatrixXd proj = 0.5 * (e11 + e11.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
        std::vector<int> keep;
        for (int c = 0; c < dim; ++c)
            if (es.eigenvalues()(c) > 0.5) keep.push_back(c);
        const int m = static_cast<int>(keep.size());
        if (m == 0) continue;

        IsotypicComponent comp{lambda, m, d, Eigen::MatrixXd(dim, m), {}};
        for (int c = 0; c < m; ++c) comp.seed_basis.col(c) = es.eigenvectors().col(keep[c]);
        fix_column_signs(comp.seed_basis);
        check_orthonormal(comp.seed_basis, "seed");
        if (opts.want_full_basis) {
            comp.full_basis.resize(dim, m * d);
            for (int c = 0; c < m; ++c) {
                comp.full_basis.col(c * d) = comp.seed_basis.col(c);
                for (int r = 1; r < d; ++r)
                    comp.full_basis.col(c * d + r) = trans[r - 1] * comp.seed_basis.col(c);
            }
            check_orthonormal(comp.full_basis, "isotypic");
        }
        total += static_cast<std::int64_t>(m) * d;
        out.components.push_back(std::move(comp));
    }
    if (total != dim)
        throw Error("group_theory", "isotypic multiplicities do not sum to the space dimension (" +
                                        std::to_string(total) + " vs " + std::to_string(dim) + ")");
    return out;
}

} // namespace spectra1d
