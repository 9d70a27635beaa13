#include "xlmap/retrieval.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace xlmap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double topk_mean(const double* row, Index n, Index k,
                 std::vector<double>& scratch) {
  scratch.assign(row, row + n);
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end(),
                   std::greater<double>());
  double sum = 0;
  for (Index i = 0; i < k; ++i) sum += scratch[i];
  return sum / static_cast<double>(k);
}

Index argmax_row(const double* row, Index n) {
  Index best = 0;
  for (Index j = 1; j < n; ++j)
    if (row[j] > row[best]) best = j;
  return best;
}

void check_cols(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("retrieval: column counts differ");
}

}  // namespace

Index masked_argmax_row(const double* row, Index n, double keep_prob,
                        Rng& rng) {
  Index best_all = 0;
  Index best_kept = -1;
  for (Index j = 0; j < n; ++j) {
    if (row[j] > row[best_all]) best_all = j;
    if (uniform_unit(rng) < keep_prob &&
        (best_kept < 0 || row[j] > row[best_kept]))
      best_kept = j;
  }
  return best_kept >= 0 ? best_kept : best_all;
}

void similarity_sweep(const Matrix& a, const Matrix& b, const SweepSpec& spec,
                      const ExecPolicy& exec) {
  check_cols(a, b);
  const Index m = b.rows();
  if (spec.argmax_out && m == 0)
    throw std::invalid_argument("similarity_sweep: empty candidate matrix");
  if (spec.penalty_out && (spec.topk < 1 || spec.topk > m))
    throw std::invalid_argument("similarity_sweep: topk out of range");
  if (spec.penalty_b && spec.penalty_b->size() != m)
    throw std::invalid_argument("similarity_sweep: penalty size mismatch");

  for_each_block(a.rows(), exec, [&](Index block, Index begin, Index end) {
    const Matrix sim = a.middleRows(begin, end - begin) * b.transpose();
    std::vector<double> scratch;
    std::vector<double> scores;
    Rng rng = make_rng(spec.mask_seed,
                       (spec.dir_salt << 32) | static_cast<std::uint64_t>(block));
    for (Index r = 0; r < sim.rows(); ++r) {
      const double* row = sim.data() + r * m;
      if (spec.penalty_out)
        (*spec.penalty_out)[begin + r] = topk_mean(row, m, spec.topk, scratch);
      if (!spec.argmax_out) continue;
      const double* score_row = row;
      if (spec.penalty_b) {
        scores.resize(m);
        const double* pen = spec.penalty_b->data();
        for (Index j = 0; j < m; ++j) scores[j] = 2.0 * row[j] - pen[j];
        score_row = scores.data();
      }
      (*spec.argmax_out)[begin + r] =
          spec.keep_prob < 1.0 ? masked_argmax_row(score_row, m, spec.keep_prob, rng)
                               : argmax_row(score_row, m);
    }
  });
}

std::vector<Index> nn_retrieve(const Matrix& a, const Matrix& b,
                               const ExecPolicy& exec) {
  std::vector<Index> out(a.rows());
  SweepSpec spec;
  spec.argmax_out = &out;
  similarity_sweep(a, b, spec, exec);
  return out;
}

Vector csls_penalty(const Matrix& b, const Matrix& other, Index k,
                    const ExecPolicy& exec) {
  if (k < 1) throw std::invalid_argument("csls_penalty: k must be positive");
  if (other.rows() == 0)
    throw std::invalid_argument("csls_penalty: empty reference matrix");
  Vector out(b.rows());
  SweepSpec spec;
  spec.topk = std::min(k, other.rows());
  spec.penalty_out = &out;
  similarity_sweep(b, other, spec, exec);
  return out;
}

std::vector<Index> penalized_retrieve(const Matrix& a, const Matrix& b,
                                      const Vector& penalty_b,
                                      const ExecPolicy& exec) {
  std::vector<Index> out(a.rows());
  SweepSpec spec;
  spec.penalty_b = &penalty_b;
  spec.argmax_out = &out;
  similarity_sweep(a, b, spec, exec);
  return out;
}

std::vector<Index> csls_retrieve(const Matrix& a, const Matrix& b, Index k,
                                 const ExecPolicy& exec) {
  const Vector penalty_b = csls_penalty(b, a, k, exec);
  return penalized_retrieve(a, b, penalty_b, exec);
}

Matrix stochastic_mask(Matrix sim, double keep_prob, Rng& rng) {
  if (!(keep_prob > 0.0) || keep_prob > 1.0)
    throw std::invalid_argument("stochastic_mask: keep probability outside (0, 1]");
  if (keep_prob == 1.0 || sim.cols() == 0) return sim;
  const Index n = sim.cols();
  for (Index i = 0; i < sim.rows(); ++i) {
    double* row = sim.data() + i * n;
    const Index best = argmax_row(row, n);
    const double best_val = row[best];
    bool any_kept = false;
    for (Index j = 0; j < n; ++j) {
      if (uniform_unit(rng) < keep_prob)
        any_kept = true;
      else
        row[j] = kNegInf;
    }
    if (!any_kept && n > 0) row[best] = best_val;
  }
  return sim;
}

}  // namespace xlmap
