#pragma once

#include <utility>

#include "xlmap/dictionary.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

enum class MapKind { orthogonal, reweighted };

// Linear maps applied as x * w; apply them to row-normalized inputs.
struct MappingPair {
  Matrix w_s;
  Matrix w_t;
  MapKind kind = MapKind::orthogonal;
};

// Orthogonal Procrustes over the dictionary pairs: with C = Zs^T Zt and
// C = U S V^T, the optimal maps are w_s = U, w_t = V.
MappingPair orthogonal_map(const Matrix& xs, const Matrix& xt,
                           const Dictionary& d);

// orthogonal_map plus the objective value it attains. At the Procrustes
// optimum the mean mapped dot product equals sum(S) / |pairs|, so the value
// comes straight from the SVD with no second pass over the data.
struct ProcrustesSolution {
  MappingPair map;
  double objective = 0;
};

ProcrustesSolution solve_procrustes(const Matrix& xs, const Matrix& xt,
                                    const Dictionary& d);

// Mean dot product of mapped dictionary pairs; for orthogonal_map's output
// this equals sum(S) / |pairs|.
double objective(const Matrix& xs_mapped, const Matrix& xt_mapped,
                 const Dictionary& d);

// Final once-off refinement: whiten each side using the dictionary rows,
// rotate via the SVD of the whitened cross-covariance, re-weight by sqrt(S),
// and de-whiten with the other side's transform. Returns the fully mapped
// (src, trg) matrices.
std::pair<Matrix, Matrix> symmetric_reweight(const Matrix& xs,
                                             const Matrix& xt,
                                             const Dictionary& d);

}  // namespace xlmap
