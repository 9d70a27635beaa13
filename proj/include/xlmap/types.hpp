#pragma once

#include <Eigen/Dense>

namespace xlmap {

// Row-major so a vocabulary row is contiguous in memory.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace xlmap
