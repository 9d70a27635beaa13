#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlmap/dictionary.hpp"
#include "xlmap/types.hpp"

namespace xlmap {

struct EmbeddingSet {
  std::vector<std::string> words;
  Matrix matrix;                       // one row per word
  std::vector<std::string> warnings;   // non-fatal load diagnostics

  Index size() const { return static_cast<Index>(words.size()); }
  Index dim() const { return matrix.cols(); }
};

// Reads word2vec-style text: a "count dim" header line, then one word and
// `dim` floats per line. Duplicate words keep the first occurrence (with a
// warning); malformed lines or a dimension mismatch throw std::runtime_error.
// max_vocab caps the number of retained words.
EmbeddingSet load_embeddings(const std::string& path,
                             std::optional<Index> max_vocab = std::nullopt);

// Inverse of load_embeddings, full double precision.
void save_embeddings(const EmbeddingSet& emb, const std::string& path);

// First n words (or all of them if n exceeds the size). n < 1 throws.
EmbeddingSet cutoff(const EmbeddingSet& emb, Index n);

// Synthetic bilingual pair: the target space is a random rotation of the
// source space, rows shuffled, plus optional Gaussian noise. permutation[i]
// gives the target row of source row i.
struct SyntheticPair {
  EmbeddingSet source;
  EmbeddingSet target;
  std::vector<Index> permutation;
  Dictionary gold;
};

SyntheticPair generate_isometric_pair(Index vocab_size, Index dim,
                                      std::uint64_t seed, double noise_sigma);

// Writes the pair's gold dictionary as "src_word trg_word" lines.
void save_gold_file(const SyntheticPair& pair, const std::string& path);

}  // namespace xlmap
