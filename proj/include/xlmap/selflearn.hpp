#pragma once

#include <cstdint>
#include <vector>

#include "xlmap/dictionary.hpp"
#include "xlmap/mapping.hpp"
#include "xlmap/parallel.hpp"
#include "xlmap/rng.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

struct SelfLearnConfig {
  Index vocab_cutoff = 20000;   // words per side used for induction
  Index csls_k = 10;
  bool use_csls = true;         // false = plain nearest neighbour
  bool bidirectional = true;
  bool stochastic = true;
  double p0 = 0.1;              // initial keep probability
  double p_factor = 2.0;        // keep-prob growth on stall
  double epsilon = 1e-6;        // minimum objective improvement
  Index window = 50;            // iterations without improvement = stall
  Index max_iterations = 10000;
  std::uint64_t rng_seed = 0;

  bool operator==(const SelfLearnConfig&) const = default;
};

enum class LearnStatus { converged, max_iterations_hit };

struct TraceEntry {
  Index iteration;
  double objective;
  double keep_prob;
  Index dict_size;
};

struct LearnTrace {
  std::vector<TraceEntry> entries;
  LearnStatus status = LearnStatus::converged;

  Index iterations() const { return static_cast<Index>(entries.size()); }
};

struct SelfLearnResult {
  MappingPair mapping;
  Dictionary dictionary;  // the dictionary the final mapping was solved on
  LearnTrace trace;
  double final_objective = 0;  // objective of the final solve
};

// One induction step over already-mapped matrices: forward (and with
// bidirectional, backward) retrieval with optional CSLS scoring and
// stochastic masking at the given keep probability. Draws exactly one value
// from rng per call to derive the per-block mask streams.
Dictionary induce_dictionary(const Matrix& xs_mapped, const Matrix& xt_mapped,
                             const SelfLearnConfig& cfg, double keep_prob,
                             Rng& rng, const ExecPolicy& exec = {});

// Alternates orthogonal_map and induce_dictionary from the initial dictionary
// until the objective stops improving at keep probability 1. xs and xt must
// already be normalized; initial pairs may address the full matrices, while
// induced dictionaries live within vocab_cutoff.
SelfLearnResult self_learn(const Matrix& xs, const Matrix& xt,
                           const Dictionary& initial,
                           const SelfLearnConfig& cfg,
                           const ExecPolicy& exec = {});

}  // namespace xlmap
