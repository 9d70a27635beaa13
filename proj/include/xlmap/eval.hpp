#pragma once

#include <map>
#include <set>
#include <string>

#include "xlmap/embeddings.hpp"
#include "xlmap/parallel.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

// Token-level test dictionary; a source word may have several translations.
struct GoldDictionary {
  std::map<std::string, std::set<std::string>> entries;

  bool empty() const { return entries.empty(); }
  Index size() const { return static_cast<Index>(entries.size()); }
};

// "src_word trg_word" per line (any whitespace); repeated source words
// accumulate translations. Throws on unreadable files or lines without
// exactly two tokens.
GoldDictionary load_gold(const std::string& path);

struct EvalResult {
  double accuracy = 0;  // correct / evaluated
  double coverage = 0;  // evaluated / gold entries
  Index evaluated = 0;
  Index correct = 0;
};

// Precision@1 over the gold entries whose source word is in src and at least
// one translation is in trg. Prediction = CSLS (or nearest-neighbour)
// retrieval over the full target vocabulary, with the CSLS penalty also
// computed against the full vocabularies. Inputs are re-normalized to unit
// rows, so mapped matrices of any scaling work. Throws if nothing is
// evaluable.
EvalResult evaluate_p1(const EmbeddingSet& src, const EmbeddingSet& trg,
                       const Matrix& src_mapped, const Matrix& trg_mapped,
                       const GoldDictionary& gold, Index csls_k = 10,
                       bool use_csls = true, const ExecPolicy& exec = {});

// The headline criterion for an unsupervised run: strictly above 5% P@1.
inline bool is_success(double accuracy) { return accuracy > 0.05; }

}  // namespace xlmap
