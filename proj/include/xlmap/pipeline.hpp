#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xlmap/embeddings.hpp"
#include "xlmap/eval.hpp"
#include "xlmap/selflearn.hpp"

namespace xlmap {

enum class InitMode { unsupervised, random_complete, random_cutoff };

std::string to_string(InitMode mode);
InitMode init_mode_from_string(const std::string& name);

struct PipelineConfig {
  SelfLearnConfig learn;
  InitMode init = InitMode::unsupervised;
  bool reweight = true;    // apply symmetric_reweight after convergence
  Index seed_vocab = 4000; // words per side for the unsupervised seed
  Index max_vocab = 0;     // cap applied when loading embeddings; 0 = all

  bool operator==(const PipelineConfig&) const = default;
};

// Names of the fields where a and b differ (e.g. "learn.csls_k").
std::vector<std::string> config_diff(const PipelineConfig& a,
                                     const PipelineConfig& b);

struct PipelineResult {
  double accuracy = 0;
  double coverage = 0;
  Index iterations = 0;
  LearnStatus status = LearnStatus::converged;
  double final_objective = 0;
  Index dict_size = 0;
};

// End-to-end run: normalize, build the initial dictionary per cfg.init,
// self-learn, optionally re-weight, evaluate P@1 against gold. run_seed
// drives every random choice in the run.
PipelineResult run_pipeline(const EmbeddingSet& src, const EmbeddingSet& trg,
                            const GoldDictionary& gold,
                            const PipelineConfig& cfg, std::uint64_t run_seed,
                            const ExecPolicy& exec = {});

}  // namespace xlmap
