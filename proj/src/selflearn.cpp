#include "xlmap/selflearn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "xlmap/retrieval.hpp"

namespace xlmap {

namespace {

void check_config(const SelfLearnConfig& cfg) {
  if (cfg.vocab_cutoff < 1)
    throw std::invalid_argument("self_learn: vocab_cutoff must be positive");
  if (cfg.csls_k < 1)
    throw std::invalid_argument("self_learn: csls_k must be positive");
  if (!(cfg.p0 > 0.0) || cfg.p0 > 1.0)
    throw std::invalid_argument("self_learn: p0 outside (0, 1]");
  if (!(cfg.p_factor > 1.0))
    throw std::invalid_argument("self_learn: p_factor must exceed 1");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("self_learn: epsilon must be positive");
  if (cfg.window < 1)
    throw std::invalid_argument("self_learn: window must be positive");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("self_learn: max_iterations must be positive");
}

}  // namespace

Dictionary induce_dictionary(const Matrix& xs_m, const Matrix& xt_m,
                             const SelfLearnConfig& cfg, double keep_prob,
                             Rng& rng, const ExecPolicy& exec) {
  if (xs_m.rows() == 0 || xt_m.rows() == 0)
    throw std::invalid_argument("induce_dictionary: empty input");
  if (!(keep_prob > 0.0) || keep_prob > 1.0)
    throw std::invalid_argument("induce_dictionary: keep probability outside (0, 1]");
  const std::uint64_t call_seed = rng();
  const double kp = (cfg.stochastic && keep_prob < 1.0) ? keep_prob : 1.0;
  const Index ns = xs_m.rows();
  const Index nt = xt_m.rows();

  Vector pen_t, pen_s;
  if (cfg.use_csls) pen_t = csls_penalty(xt_m, xs_m, cfg.csls_k, exec);

  // Forward retrieval; with bidirectional CSLS the same pass also collects
  // the source-side penalties the backward direction needs.
  std::vector<Index> fwd(ns);
  {
    SweepSpec spec;
    spec.penalty_b = cfg.use_csls ? &pen_t : nullptr;
    spec.argmax_out = &fwd;
    spec.keep_prob = kp;
    spec.mask_seed = call_seed;
    spec.dir_salt = 0;
    if (cfg.use_csls && cfg.bidirectional) {
      pen_s.resize(ns);
      spec.topk = std::min(cfg.csls_k, nt);
      spec.penalty_out = &pen_s;
    }
    similarity_sweep(xs_m, xt_m, spec, exec);
  }

  std::vector<Index> bwd;
  if (cfg.bidirectional) {
    bwd.resize(nt);
    SweepSpec spec;
    spec.penalty_b = cfg.use_csls ? &pen_s : nullptr;
    spec.argmax_out = &bwd;
    spec.keep_prob = kp;
    spec.mask_seed = call_seed;
    spec.dir_salt = 1;
    similarity_sweep(xt_m, xs_m, spec, exec);
  }

  Dictionary d;
  d.src_size = ns;
  d.trg_size = nt;
  d.pairs.reserve(static_cast<std::size_t>(ns) + bwd.size());
  for (Index i = 0; i < ns; ++i) d.pairs.emplace_back(i, fwd[i]);
  for (Index j = 0; j < static_cast<Index>(bwd.size()); ++j)
    d.pairs.emplace_back(bwd[j], j);
  return d;
}

SelfLearnResult self_learn(const Matrix& xs, const Matrix& xt,
                           const Dictionary& initial,
                           const SelfLearnConfig& cfg,
                           const ExecPolicy& exec) {
  check_config(cfg);
  if (initial.empty())
    throw std::invalid_argument("self_learn: empty initial dictionary");
  if (xs.cols() != xt.cols())
    throw std::invalid_argument("self_learn: dimension mismatch");
  // Initial pairs may address the full vocabularies (the first solve gathers
  // from the full matrices); everything induced afterwards lives within the
  // cutoff.
  initial.validate_against(xs.rows(), xt.rows());

  const Matrix xs_cut = xs.topRows(std::min(cfg.vocab_cutoff, xs.rows()));
  const Matrix xt_cut = xt.topRows(std::min(cfg.vocab_cutoff, xt.rows()));

  Rng rng = make_rng(cfg.rng_seed, 0x5E1F);
  double p = cfg.stochastic ? cfg.p0 : 1.0;
  double best = -std::numeric_limits<double>::infinity();
  Index last_improved = 0;
  Dictionary dict = initial;
  LearnTrace trace;
  bool converged = false;

  for (Index it = 1; it <= cfg.max_iterations; ++it) {
    if (it - last_improved > cfg.window) {
      if (p >= 1.0) {
        converged = true;
        break;
      }
      p = std::min(1.0, p * cfg.p_factor);
      last_improved = it;
    }

    const ProcrustesSolution sol = solve_procrustes(xs, xt, dict);
    if (!std::isfinite(sol.objective))
      throw std::runtime_error("self_learn: non-finite objective at iteration " +
                               std::to_string(it));
    trace.entries.push_back({it, sol.objective, p, dict.size()});
    if (sol.objective - best > cfg.epsilon) {
      best = sol.objective;
      last_improved = it;
    }

    const Matrix xs_m = xs_cut * sol.map.w_s;
    const Matrix xt_m = xt_cut * sol.map.w_t;
    dict = induce_dictionary(xs_m, xt_m, cfg, p, rng, exec);
  }

  trace.status = converged ? LearnStatus::converged : LearnStatus::max_iterations_hit;
  const ProcrustesSolution fin = solve_procrustes(xs, xt, dict);
  return {fin.map, std::move(dict), std::move(trace), fin.objective};
}

}  // namespace xlmap
