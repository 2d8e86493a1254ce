#include "spectra1d/irreps.hpp"

#include <cmath>
#include <map>

#include "spectra1d/errors.hpp"

namespace spectra1d {

Eigen::MatrixXd IrrepMatrixSet::matrix(const Permutation& p) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dimension, dimension);
    if (p.degree() != diagram.size())
        throw Error("group_theory", "irrep matrix: permutation degree mismatch");
    // p = s_{k_m} ∘ ... ∘ s_{k_1}  =>  Γ(p) = M_{k_m} · ... · M_{k_1}
    const auto ks = p.adjacent_factorization();
    for (auto it = ks.rbegin(); it != ks.rend(); ++it)
        m = generator_matrices[*it - 1] * m;
    return m;
}

IrrepMatrixSet irrep_matrices(const YoungDiagram& diagram) {
    const int n = diagram.size();
    if (n < 2)
        throw Error("group_theory", "irrep_matrices requires |diagram| >= 2");

    auto tableaux = standard_tableaux_row_sequences(diagram);
    const int dim = static_cast<int>(tableaux.size());

    std::map<std::vector<int>, int> index;
    for (int t = 0; t < dim; ++t) index[tableaux[t]] = t;

    std::vector<std::vector<int>> contents(dim);
    for (int t = 0; t < dim; ++t) contents[t] = tableau_contents(tableaux[t]);

    IrrepMatrixSet set{diagram, dim, {}, tableaux};
    set.generator_matrices.reserve(n - 1);
    for (int k = 1; k <= n - 1; ++k) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
        for (int t = 0; t < dim; ++t) {
            const auto& seq = tableaux[t];
            const int rk = seq[k - 1], rk1 = seq[k];
            if (rk == rk1) {
                m(t, t) = 1.0; // same row, axial distance +1
                continue;
            }
            const int axial = contents[t][k] - contents[t][k - 1];
            if (axial == -1) {
                m(t, t) = -1.0; // same column
                continue;
            }
            const double rho = 1.0 / axial;
            auto swapped = seq;
            std::swap(swapped[k - 1], swapped[k]);
            const int u = index.at(swapped);
            m(t, t) = rho;
            if (u > t) {
                const double off = std::sqrt(1.0 - rho * rho);
                m(t, u) = off;
                m(u, t) = off;
            }
        }
        set.generator_matrices.push_back(std::move(m));
    }
    return set;
}

std::vector<std::vector<int>> jucys_murphy_spectrum(const YoungDiagram& diagram) {
    const int n = diagram.size();
    if (n == 1) return {{0}};

    const auto set = irrep_matrices(diagram);
    const int dim = set.dimension;

    std::vector<std::vector<int>> spectrum(dim, std::vector<int>(n, 0));
    for (int k = 2; k <= n; ++k) {
        Eigen::MatrixXd xk = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 1; i < k; ++i)
            xk += set.matrix(Permutation::transposition(n, i, k));
        for (int t = 0; t < dim; ++t) {
            for (int u = 0; u < dim; ++u) {
                if (u != t && std::abs(xk(t, u)) > 1e-10)
                    throw Error("group_theory", "Jucys-Murphy element X_" + std::to_string(k) +
                                                    " is not diagonal in the GT basis");
            }
            const double v = xk(t, t);
            const int iv = static_cast<int>(std::llround(v));
            if (std::abs(v - iv) > 1e-10)
                throw Error("group_theory", "Jucys-Murphy eigenvalue is not an integer");
            spectrum[t][k - 1] = iv;
        }
    }

    // Cross-check against the cell contents along the chain.
    for (int t = 0; t < dim; ++t) {
        const auto expect = tableau_contents(set.tableaux[t]);
        if (spectrum[t] != expect)
            throw Error("group_theory", "Jucys-Murphy spectrum disagrees with tableau contents");
    }
    return spectrum;
}

} // namespace spectra1d
