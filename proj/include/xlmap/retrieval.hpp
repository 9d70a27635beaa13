#pragma once

#include <cstdint>
#include <vector>

#include "xlmap/parallel.hpp"
#include "xlmap/rng.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

// All retrieval runs blockwise: rows of the query matrix are processed in
// ExecPolicy::block_rows chunks, each block doing one GEMM against the full
// candidate matrix. Ties resolve to the lowest candidate index.

// result[i] = argmax_j a_i . b_j
std::vector<Index> nn_retrieve(const Matrix& a, const Matrix& b,
                               const ExecPolicy& exec = {});

// penalty[j] = mean of the k largest dot products of b_j against rows of
// `other`. k is clamped to other.rows(); k < 1 throws.
Vector csls_penalty(const Matrix& b, const Matrix& other, Index k,
                    const ExecPolicy& exec = {});

// result[i] = argmax_j 2 * a_i . b_j - penalty_b[j], with penalty_b computed
// against the queries themselves. The query-side penalty term is constant per
// row and cannot change the argmax, so it is dropped.
std::vector<Index> csls_retrieve(const Matrix& a, const Matrix& b, Index k,
                                 const ExecPolicy& exec = {});

// csls_retrieve with a caller-supplied candidate penalty (used when the
// penalty reference set differs from the query set).
std::vector<Index> penalized_retrieve(const Matrix& a, const Matrix& b,
                                      const Vector& penalty_b,
                                      const ExecPolicy& exec = {});

// Drops each entry independently with probability 1-keep_prob (sets it to
// -inf). A row losing all entries gets its original argmax entry restored.
// Draws one uniform per entry in row-major order; keep_prob == 1 draws
// nothing and returns the input unchanged.
Matrix stochastic_mask(Matrix sim, double keep_prob, Rng& rng);

// Argmax of a masked score row, same keep/drop semantics as stochastic_mask
// (one uniform per entry, ascending j; falls back to the unmasked argmax when
// everything is dropped). Exposed for the shared masking logic tests.
Index masked_argmax_row(const double* row, Index n, double keep_prob, Rng& rng);

// The blocked pass all retrieval ops share: for each row of a, compute its
// dots against every row of b, then per row optionally (a) record the top-k
// mean of the raw dots and (b) select the argmax of 2*dot - penalty_b (raw
// dot when penalty_b is null), masked at keep_prob. Mask streams are derived
// per block from (mask_seed, dir_salt, block index), so results do not depend
// on the worker count.
struct SweepSpec {
  const Vector* penalty_b = nullptr;
  Index topk = 0;                        // > 0 enables penalty_out
  Vector* penalty_out = nullptr;         // size a.rows()
  std::vector<Index>* argmax_out = nullptr;  // size a.rows()
  double keep_prob = 1.0;
  std::uint64_t mask_seed = 0;
  std::uint64_t dir_salt = 0;
};

void similarity_sweep(const Matrix& a, const Matrix& b, const SweepSpec& spec,
                      const ExecPolicy& exec = {});

}  // namespace xlmap
