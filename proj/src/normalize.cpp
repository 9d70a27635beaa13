#include "xlmap/normalize.hpp"

#include <stdexcept>
#include <utility>

namespace xlmap {

Matrix unit_normalize(Matrix m) {
  for (Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n > 0) m.row(i) /= n;
  }
  return m;
}

Matrix mean_center(Matrix m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("mean_center: empty matrix");
  m.rowwise() -= m.colwise().mean();
  return m;
}

Matrix normalize_pipeline(Matrix m) {
  return unit_normalize(mean_center(unit_normalize(std::move(m))));
}

}  // namespace xlmap
