#include "xlmap/mapping.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace xlmap {

namespace {

std::pair<Matrix, Matrix> gather_pairs(const Matrix& xs, const Matrix& xt,
                                       const Dictionary& d) {
  Matrix zs(d.size(), xs.cols());
  Matrix zt(d.size(), xt.cols());
  for (Index n = 0; n < d.size(); ++n) {
    zs.row(n) = xs.row(d.pairs[n].first);
    zt.row(n) = xt.row(d.pairs[n].second);
  }
  return {std::move(zs), std::move(zt)};
}

void check_inputs(const Matrix& xs, const Matrix& xt, const Dictionary& d,
                  const char* who) {
  if (d.empty())
    throw std::invalid_argument(std::string(who) + ": empty dictionary");
  if (xs.cols() != xt.cols())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  d.validate_against(xs.rows(), xt.rows());
}

// G^(-1/2) and G^(1/2) for G = z^T z, from one symmetric eigendecomposition.
// Eigenvalues are floored at 1e-12 so the pair stays mutually inverse even on
// rank-deficient dictionaries.
struct GramRoots {
  Matrix inv_sqrt;
  Matrix sqrt;
};

GramRoots gram_roots(const Matrix& z) {
  const Matrix gram = z.transpose() * z;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("symmetric_reweight: eigendecomposition failed");
  const Vector root = eig.eigenvalues().cwiseMax(1e-12).cwiseSqrt();
  const Matrix v = eig.eigenvectors();
  GramRoots out;
  out.inv_sqrt = v * root.cwiseInverse().asDiagonal() * v.transpose();
  out.sqrt = v * root.asDiagonal() * v.transpose();
  return out;
}

}  // namespace

ProcrustesSolution solve_procrustes(const Matrix& xs, const Matrix& xt,
                                    const Dictionary& d) {
  check_inputs(xs, xt, d, "orthogonal_map");
  const auto [zs, zt] = gather_pairs(xs, xt, d);
  const Matrix c = zs.transpose() * zt;
  Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesSolution sol;
  sol.map = {svd.matrixU(), svd.matrixV(), MapKind::orthogonal};
  sol.objective = svd.singularValues().sum() / static_cast<double>(d.size());
  return sol;
}

MappingPair orthogonal_map(const Matrix& xs, const Matrix& xt,
                           const Dictionary& d) {
  return solve_procrustes(xs, xt, d).map;
}

double objective(const Matrix& xs_mapped, const Matrix& xt_mapped,
                 const Dictionary& d) {
  check_inputs(xs_mapped, xt_mapped, d, "objective");
  double sum = 0;
  for (const auto& [i, j] : d.pairs)
    sum += xs_mapped.row(i).dot(xt_mapped.row(j));
  return sum / static_cast<double>(d.size());
}

std::pair<Matrix, Matrix> symmetric_reweight(const Matrix& xs,
                                             const Matrix& xt,
                                             const Dictionary& d) {
  check_inputs(xs, xt, d, "symmetric_reweight");
  const auto [zs, zt] = gather_pairs(xs, xt, d);
  const GramRoots s = gram_roots(zs);
  const GramRoots t = gram_roots(zt);

  const Matrix cw = s.inv_sqrt * (zs.transpose() * zt) * t.inv_sqrt;
  Eigen::BDCSVD<Matrix> svd(cw, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Vector sq = svd.singularValues().cwiseMax(0.0).cwiseSqrt();

  // Whiten, rotate, re-weight by sqrt(S), then de-whiten each side with the
  // opposite side's whitening inverse expressed in its own rotated basis.
  const Matrix w_src =
      s.inv_sqrt * u * sq.asDiagonal() * v.transpose() * t.sqrt * v;
  const Matrix w_trg =
      t.inv_sqrt * v * sq.asDiagonal() * u.transpose() * s.sqrt * u;
  return {xs * w_src, xt * w_trg};
}

}  // namespace xlmap
