#pragma once

#include "xlmap/types.hpp"

namespace xlmap {

// Scales every row to unit L2 norm; zero rows are left untouched.
Matrix unit_normalize(Matrix m);

// Subtracts the column mean from every column. Throws on an empty matrix.
Matrix mean_center(Matrix m);

// unit_normalize, mean_center, unit_normalize — in that order.
Matrix normalize_pipeline(Matrix m);

}  // namespace xlmap
