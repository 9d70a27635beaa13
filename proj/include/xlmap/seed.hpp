#pragma once

#include <cstdint>

#include "xlmap/dictionary.hpp"
#include "xlmap/parallel.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

// U S U^T from the thin SVD of x: the square root of the similarity matrix
// x x^T without ever forming it.
Matrix similarity_sqrt(const Matrix& x);

// Language-agnostic signature of each word: its row in similarity_sqrt,
// sorted ascending, then run through normalize_pipeline.
Matrix similarity_signature(const Matrix& x);

// Initial dictionary from monolingual similarity distributions: build the
// signatures of the first n_init rows of each side, then CSLS-match them in
// both directions and concatenate forward and backward pairs.
Dictionary unsupervised_seed(const Matrix& xs, const Matrix& xt, Index n_init,
                             Index csls_k, const ExecPolicy& exec = {});

// Baseline init: pair every word of the smaller vocabulary with a uniformly
// random word of the larger one.
Dictionary random_seed_complete(Index vs_size, Index vt_size,
                                std::uint64_t seed);

// random_seed_complete restricted to the first n words of each side.
Dictionary random_seed_cutoff(Index vs_size, Index vt_size, Index n,
                              std::uint64_t seed);

}  // namespace xlmap
