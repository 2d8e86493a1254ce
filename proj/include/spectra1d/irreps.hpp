#pragma once

#include <Eigen/Dense>

#include "spectra1d/permutation.hpp"
#include "spectra1d/young.hpp"

namespace spectra1d {

// Orthogonal irreducible representation of S_N in Young's orthogonal
// (Gelfand-Tsetlin) form.  Basis vectors are the standard tableaux of the
// diagram in the order fixed by standard_tableaux_row_sequences.
struct IrrepMatrixSet {
    YoungDiagram diagram;
    int dimension;
    // generator_matrices[k-1] represents s_k = (k, k+1), k = 1..N-1.
    std::vector<Eigen::MatrixXd> generator_matrices;
    std::vector<std::vector<int>> tableaux;

    // Image of an arbitrary permutation, multiplied out of the generators.
    Eigen::MatrixXd matrix(const Permutation& p) const;
    double character(const Permutation& p) const { return matrix(p).trace(); }
};

// Requires |diagram| >= 2 (S_1 has no generators).
IrrepMatrixSet irrep_matrices(const YoungDiagram& diagram);

// Eigenvalue vectors of the Jucys-Murphy chain X_k = sum_{i<k} (i k),
// k = 1..N, one per Gelfand-Tsetlin basis vector.  Computed from the
// generator matrices, checked against tableau contents.
std::vector<std::vector<int>> jucys_murphy_spectrum(const YoungDiagram& diagram);

} // namespace spectra1d
