#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "xlmap/embeddings.hpp"
#include "xlmap/normalize.hpp"
#include "xlmap/seed.hpp"

using namespace xlmap;
using namespace testutil;

TEST_SUITE("seed") {

TEST_CASE("similarity_sqrt on matrices with known square roots") {
  CHECK(max_diff(similarity_sqrt(Matrix::Identity(3, 3)),
                 Matrix::Identity(3, 3)) < 1e-12);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 3.0;
  CHECK(max_diff(similarity_sqrt(diag), diag) < 1e-12);
}

TEST_CASE("similarity_sqrt squares back to the gram matrix") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Matrix x = unit_random(4, 3, seed);
    const Matrix root = similarity_sqrt(x);
    CHECK(max_diff(root * root, x * x.transpose()) < 1e-8);
    CHECK(max_diff(root, root.transpose()) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(root);
    CHECK(eig.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("similarity_sqrt of a wide matrix is square") {
  const Matrix x = unit_random(3, 5, 4);
  const Matrix root = similarity_sqrt(x);
  CHECK(root.rows() == 3);
  CHECK(root.cols() == 3);
  CHECK(max_diff(root * root, x * x.transpose()) < 1e-8);
}

TEST_CASE("similarity_sqrt rejects empty input") {
  CHECK_THROWS_AS(similarity_sqrt(Matrix(0, 3)), std::invalid_argument);
}

TEST_CASE("similarity_signature composes sqrt, row sort, and normalization") {
  const Matrix x = unit_random(6, 4, 11);
  Matrix manual = similarity_sqrt(x);
  for (Index i = 0; i < manual.rows(); ++i) {
    double* row = manual.data() + i * manual.cols();
    std::sort(row, row + manual.cols());
  }
  manual = normalize_pipeline(manual);
  CHECK(max_diff(similarity_signature(x), manual) == 0.0);
}

TEST_CASE("similarity_signature is equivariant under row permutation") {
  const Matrix x = unit_random(7, 4, 12);
  const std::vector<Index> perm{3, 0, 6, 1, 5, 2, 4};
  Matrix px(7, 4);
  for (Index i = 0; i < 7; ++i) px.row(perm[i]) = x.row(i);
  const Matrix sig = similarity_signature(x);
  const Matrix psig = similarity_signature(px);
  for (Index i = 0; i < 7; ++i)
    CHECK((sig.row(i) - psig.row(perm[i])).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("signatures line up across an isometric pair") {
  const SyntheticPair pair = generate_isometric_pair(12, 5, 7, 0.0);
  const Matrix sig_s = similarity_signature(pair.source.matrix);
  const Matrix sig_t = similarity_signature(pair.target.matrix);
  for (const auto& [i, j] : pair.gold.pairs)
    CHECK((sig_s.row(i) - sig_t.row(j)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("unsupervised_seed maps a vocabulary onto itself identically") {
  const Matrix x = normalized_random(10, 8, 13);
  const Dictionary d = unsupervised_seed(x, x, 10, 3);
  REQUIRE(d.size() == 20);
  CHECK(d.src_size == 10);
  CHECK(d.trg_size == 10);
  for (const auto& [i, j] : d.pairs) CHECK(i == j);
}

TEST_CASE("unsupervised_seed recovers a noiseless isometry") {
  const SyntheticPair pair = generate_isometric_pair(16, 5, 8, 0.0);
  const Matrix xs = normalize_pipeline(pair.source.matrix);
  const Matrix xt = normalize_pipeline(pair.target.matrix);
  const Dictionary d = unsupervised_seed(xs, xt, 16, 3);
  std::set<std::pair<Index, Index>> gold(pair.gold.pairs.begin(),
                                         pair.gold.pairs.end());
  REQUIRE(d.size() == 32);
  for (const auto& p : d.pairs) CHECK(gold.count(p) == 1);
}

TEST_CASE("unsupervised_seed is invariant under target rotation") {
  const Matrix xs = normalized_random(9, 6, 14);
  const Matrix xt = normalized_random(9, 6, 15);
  Rng rng = make_rng(16);
  const Matrix q = random_orthogonal(6, rng);
  const Dictionary base = unsupervised_seed(xs, xt, 9, 2);
  const Dictionary rotated = unsupervised_seed(xs, xt * q, 9, 2);
  CHECK(base.pairs == rotated.pairs);
}

TEST_CASE("unsupervised_seed clamps n_init and validates arguments") {
  const Matrix x = normalized_random(5, 4, 17);
  const Dictionary d = unsupervised_seed(x, x, 50, 2);
  CHECK(d.size() == 10);
  CHECK(d.src_size == 5);
  CHECK_THROWS_AS(unsupervised_seed(x, x, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(unsupervised_seed(Matrix(0, 4), x, 5, 2),
                  std::invalid_argument);
}

TEST_CASE("random_seed_complete enumerates the smaller side") {
  const Dictionary small_src = random_seed_complete(3, 5, 1);
  REQUIRE(small_src.size() == 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(small_src.pairs[i].first == i);
    CHECK(small_src.pairs[i].second >= 0);
    CHECK(small_src.pairs[i].second < 5);
  }
  const Dictionary small_trg = random_seed_complete(5, 3, 1);
  REQUIRE(small_trg.size() == 3);
  for (Index j = 0; j < 3; ++j) {
    CHECK(small_trg.pairs[j].second == j);
    CHECK(small_trg.pairs[j].first < 5);
  }
  const Dictionary square = random_seed_complete(4, 4, 1);
  REQUIRE(square.size() == 4);
  for (Index i = 0; i < 4; ++i) CHECK(square.pairs[i].first == i);
  square.validate();
}

TEST_CASE("random_seed_complete is seed-deterministic") {
  const Dictionary a = random_seed_complete(10, 20, 42);
  const Dictionary b = random_seed_complete(10, 20, 42);
  const Dictionary c = random_seed_complete(10, 20, 43);
  CHECK(a.pairs == b.pairs);
  CHECK(a.pairs != c.pairs);
}

TEST_CASE("random_seed_complete targets are roughly uniform") {
  std::vector<int> counts(4, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed)
    ++counts[random_seed_complete(1, 4, seed).pairs[0].second];
  for (int c : counts) {
    CHECK(c > 400);
    CHECK(c < 600);
  }
}

TEST_CASE("random_seed_cutoff restricts both sides") {
  const Dictionary d = random_seed_cutoff(100, 100, 10, 5);
  REQUIRE(d.size() == 10);
  CHECK(d.src_size == 10);
  CHECK(d.trg_size == 10);
  for (const auto& [i, j] : d.pairs) {
    CHECK(i < 10);
    CHECK(j < 10);
  }
  CHECK(random_seed_cutoff(6, 9, 50, 7).pairs ==
        random_seed_complete(6, 9, 7).pairs);
  CHECK_THROWS_AS(random_seed_cutoff(5, 5, 0, 1), std::invalid_argument);
}

}  // TEST_SUITE
