#include <doctest.h>

#include "helpers.hpp"
#include "xlmap/normalize.hpp"
#include "xlmap/rng.hpp"

using namespace xlmap;
using testutil::max_diff;

TEST_SUITE("normalize") {

TEST_CASE("unit_normalize scales rows to unit length") {
  const Matrix m{{3.0, 4.0}};
  const Matrix expected{{0.6, 0.8}};
  CHECK(max_diff(unit_normalize(m), expected) < 1e-15);
}

TEST_CASE("unit_normalize leaves zero rows untouched") {
  const Matrix m{{0.0, 0.0}, {1.0, 1.0}};
  const Matrix out = unit_normalize(m);
  CHECK(out.row(0).norm() == 0.0);
  CHECK(out.row(1).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit_normalize row norms are 1 on random input") {
  Rng rng = make_rng(11);
  const Matrix out = unit_normalize(random_gaussian(5, 3, rng));
  for (Index i = 0; i < out.rows(); ++i)
    CHECK(std::abs(out.row(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("mean_center hand instance") {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
  const Matrix expected{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK(max_diff(mean_center(m), expected) < 1e-15);
}

TEST_CASE("mean_center single row becomes zero") {
  const Matrix m{{2.5, -1.0, 7.0}};
  CHECK(mean_center(m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mean_center column means vanish on random input") {
  Rng rng = make_rng(12);
  const Matrix out = mean_center(random_gaussian(7, 4, rng));
  for (Index j = 0; j < out.cols(); ++j)
    CHECK(std::abs(out.col(j).mean()) < 1e-12);
}

TEST_CASE("mean_center rejects empty input") {
  CHECK_THROWS_AS(mean_center(Matrix(0, 3)), std::invalid_argument);
}

TEST_CASE("pipeline hand instance") {
  const Matrix m{{1.0, 0.0}, {0.0, 1.0}};
  const double h = std::sqrt(2.0) / 2.0;
  const Matrix expected{{h, -h}, {-h, h}};
  CHECK(max_diff(normalize_pipeline(m), expected) < 1e-12);
}

TEST_CASE("pipeline output rows have unit norm") {
  Rng rng = make_rng(13);
  const Matrix out = normalize_pipeline(random_gaussian(9, 5, rng));
  for (Index i = 0; i < out.rows(); ++i)
    CHECK(std::abs(out.row(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("pipeline order matters") {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
  const Matrix reordered = mean_center(unit_normalize(unit_normalize(m)));
  CHECK(max_diff(normalize_pipeline(m), reordered) > 1e-6);
}

}  // TEST_SUITE
