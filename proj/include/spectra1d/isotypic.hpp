#pragma once

#include <Eigen/Dense>
#include <optional>

#include "spectra1d/permutation.hpp"
#include "spectra1d/young.hpp"

namespace spectra1d {

// Action of S_N on a D-dimensional space given by the images of the adjacent
// transpositions s_k = (k, k+1).  The permutation form (each generator
// permutes basis vectors) is the fast path used by every module here; the
// matrix form accepts any orthogonal representation at dense-algebra cost.
struct PermutationAction {
    int degree = 0;     // N
    int dimension = 0;  // D
    std::vector<std::vector<int>> generator_maps; // N-1 maps, generator_maps[k][i] = s_{k+1} · i
};

struct MatrixAction {
    int degree = 0;
    std::vector<Eigen::MatrixXd> generators; // N-1 dense D×D orthogonal matrices
};

struct IsotypicComponent {
    YoungDiagram lambda;
    int multiplicity = 0;
    int irrep_dim = 0;
    // D×multiplicity, orthonormal.  Spans the first-GT-row subspace of the
    // component; any operator commuting with the action maps it to itself and
    // its restriction there is the component's reduced block.
    Eigen::MatrixXd seed_basis;
    // D×(multiplicity·irrep_dim), orthonormal, spanning the whole isotypic
    // component; column c*irrep_dim + i carries seed c transferred to GT row i.
    // Filled only when requested.
    Eigen::MatrixXd full_basis;
};

struct IsotypicDecomposition {
    int dimension = 0;
    std::vector<IsotypicComponent> components; // multiplicity > 0 only, partition order

    const IsotypicComponent* find(const YoungDiagram& lambda) const;
    std::int64_t multiplicity_of(const YoungDiagram& lambda) const;
};

struct ProjectOptions {
    bool want_full_basis = false;
    double relation_tol = 1e-8;
};

// Symmetry-adapted decomposition by matrix-element averaging over all N!
// group elements.  Permutation actions are split into orbits first, so the
// averaging runs on blocks of size at most N!.
IsotypicDecomposition project_isotypic(const PermutationAction& action,
                                       const ProjectOptions& opts = {});
IsotypicDecomposition project_isotypic(const MatrixAction& action,
                                       const ProjectOptions& opts = {});

} // namespace spectra1d
