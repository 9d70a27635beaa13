#include "xlmap/pipeline.hpp"

#include <stdexcept>
#include <tuple>

#include "xlmap/normalize.hpp"
#include "xlmap/seed.hpp"

namespace xlmap {

std::string to_string(InitMode mode) {
  switch (mode) {
    case InitMode::unsupervised: return "unsupervised";
    case InitMode::random_complete: return "random_complete";
    case InitMode::random_cutoff: return "random_cutoff";
  }
  throw std::logic_error("to_string: bad InitMode");
}

InitMode init_mode_from_string(const std::string& name) {
  if (name == "unsupervised") return InitMode::unsupervised;
  if (name == "random_complete") return InitMode::random_complete;
  if (name == "random_cutoff") return InitMode::random_cutoff;
  throw std::invalid_argument("unknown init mode: " + name);
}

std::vector<std::string> config_diff(const PipelineConfig& a,
                                     const PipelineConfig& b) {
  std::vector<std::string> out;
  if (a.learn.vocab_cutoff != b.learn.vocab_cutoff) out.push_back("learn.vocab_cutoff");
  if (a.learn.csls_k != b.learn.csls_k) out.push_back("learn.csls_k");
  if (a.learn.use_csls != b.learn.use_csls) out.push_back("learn.use_csls");
  if (a.learn.bidirectional != b.learn.bidirectional) out.push_back("learn.bidirectional");
  if (a.learn.stochastic != b.learn.stochastic) out.push_back("learn.stochastic");
  if (a.learn.p0 != b.learn.p0) out.push_back("learn.p0");
  if (a.learn.p_factor != b.learn.p_factor) out.push_back("learn.p_factor");
  if (a.learn.epsilon != b.learn.epsilon) out.push_back("learn.epsilon");
  if (a.learn.window != b.learn.window) out.push_back("learn.window");
  if (a.learn.max_iterations != b.learn.max_iterations) out.push_back("learn.max_iterations");
  if (a.learn.rng_seed != b.learn.rng_seed) out.push_back("learn.rng_seed");
  if (a.init != b.init) out.push_back("init");
  if (a.reweight != b.reweight) out.push_back("reweight");
  if (a.seed_vocab != b.seed_vocab) out.push_back("seed_vocab");
  if (a.max_vocab != b.max_vocab) out.push_back("max_vocab");
  return out;
}

PipelineResult run_pipeline(const EmbeddingSet& src, const EmbeddingSet& trg,
                            const GoldDictionary& gold,
                            const PipelineConfig& cfg, std::uint64_t run_seed,
                            const ExecPolicy& exec) {
  if (src.size() == 0 || trg.size() == 0)
    throw std::invalid_argument("run_pipeline: empty embeddings");
  if (src.dim() != trg.dim())
    throw std::invalid_argument("run_pipeline: dimension mismatch");

  const Matrix xs = normalize_pipeline(src.matrix);
  const Matrix xt = normalize_pipeline(trg.matrix);

  SelfLearnConfig learn = cfg.learn;
  learn.rng_seed = run_seed;

  Dictionary d0;
  switch (cfg.init) {
    case InitMode::unsupervised:
      d0 = unsupervised_seed(xs, xt, cfg.seed_vocab, learn.csls_k, exec);
      break;
    case InitMode::random_complete:
      d0 = random_seed_complete(xs.rows(), xt.rows(), run_seed);
      break;
    case InitMode::random_cutoff:
      d0 = random_seed_cutoff(xs.rows(), xt.rows(), learn.vocab_cutoff,
                              run_seed);
      break;
  }

  const SelfLearnResult res = self_learn(xs, xt, d0, learn, exec);

  Matrix xs_final, xt_final;
  if (cfg.reweight) {
    std::tie(xs_final, xt_final) = symmetric_reweight(xs, xt, res.dictionary);
  } else {
    xs_final = xs * res.mapping.w_s;
    xt_final = xt * res.mapping.w_t;
  }

  const EvalResult ev = evaluate_p1(src, trg, xs_final, xt_final, gold,
                                    learn.csls_k, learn.use_csls, exec);

  PipelineResult out;
  out.accuracy = ev.accuracy;
  out.coverage = ev.coverage;
  out.iterations = res.trace.iterations();
  out.status = res.trace.status;
  out.final_objective = res.final_objective;
  out.dict_size = res.dictionary.size();
  return out;
}

}  // namespace xlmap
