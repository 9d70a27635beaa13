#include "xlmap/seed.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "xlmap/normalize.hpp"
#include "xlmap/retrieval.hpp"
#include "xlmap/rng.hpp"

namespace xlmap {

Matrix similarity_sqrt(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument("similarity_sqrt: empty matrix");
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU();
  return (u * svd.singularValues().asDiagonal()) * u.transpose();
}

Matrix similarity_signature(const Matrix& x) {
  Matrix sig = similarity_sqrt(x);
  const Index n = sig.cols();
  for (Index i = 0; i < sig.rows(); ++i) {
    double* row = sig.data() + i * n;
    std::sort(row, row + n);
  }
  return normalize_pipeline(std::move(sig));
}

Dictionary unsupervised_seed(const Matrix& xs, const Matrix& xt, Index n_init,
                             Index csls_k, const ExecPolicy& exec) {
  if (n_init < 1)
    throw std::invalid_argument("unsupervised_seed: n_init must be positive");
  if (xs.rows() == 0 || xt.rows() == 0)
    throw std::invalid_argument("unsupervised_seed: empty input");
  const Index n = std::min({n_init, xs.rows(), xt.rows()});
  const Matrix sig_s = similarity_signature(xs.topRows(n));
  const Matrix sig_t = similarity_signature(xt.topRows(n));
  const std::vector<Index> fwd = csls_retrieve(sig_s, sig_t, csls_k, exec);
  const std::vector<Index> bwd = csls_retrieve(sig_t, sig_s, csls_k, exec);
  Dictionary d;
  d.src_size = xs.rows();
  d.trg_size = xt.rows();
  d.pairs.reserve(2 * static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) d.pairs.emplace_back(i, fwd[i]);
  for (Index j = 0; j < n; ++j) d.pairs.emplace_back(bwd[j], j);
  return d;
}

Dictionary random_seed_complete(Index vs_size, Index vt_size,
                                std::uint64_t seed) {
  if (vs_size < 1 || vt_size < 1)
    throw std::invalid_argument("random_seed_complete: sizes must be positive");
  Rng rng = make_rng(seed, 0xD1C7);
  Dictionary d;
  d.src_size = vs_size;
  d.trg_size = vt_size;
  if (vs_size <= vt_size) {
    d.pairs.reserve(vs_size);
    for (Index i = 0; i < vs_size; ++i)
      d.pairs.emplace_back(i, uniform_index(rng, vt_size));
  } else {
    d.pairs.reserve(vt_size);
    for (Index j = 0; j < vt_size; ++j)
      d.pairs.emplace_back(uniform_index(rng, vs_size), j);
  }
  return d;
}

Dictionary random_seed_cutoff(Index vs_size, Index vt_size, Index n,
                              std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("random_seed_cutoff: n must be positive");
  return random_seed_complete(std::min(vs_size, n), std::min(vt_size, n), seed);
}

}  // namespace xlmap
