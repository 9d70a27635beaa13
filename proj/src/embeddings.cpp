#include "xlmap/embeddings.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "xlmap/rng.hpp"

namespace xlmap {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

const char* skip_ws(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t')) ++p;
  return p;
}

[[noreturn]] void fail(const std::string& path, long long line_no,
                       const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

EmbeddingSet load_embeddings(const std::string& path,
                             std::optional<Index> max_vocab) {
  if (max_vocab && *max_vocab < 1)
    throw std::invalid_argument("load_embeddings: max_vocab must be positive");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_embeddings: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  strip_cr(line);

  long long count = 0, dim = 0;
  {
    const char* p = line.data();
    const char* end = p + line.size();
    p = skip_ws(p, end);
    auto r1 = std::from_chars(p, end, count);
    if (r1.ec != std::errc{}) fail(path, 1, "malformed header");
    p = skip_ws(r1.ptr, end);
    auto r2 = std::from_chars(p, end, dim);
    if (r2.ec != std::errc{} || skip_ws(r2.ptr, end) != end)
      fail(path, 1, "malformed header");
  }
  if (count < 1) fail(path, 1, "empty vocabulary");
  if (dim < 1) fail(path, 1, "dimension must be positive");

  const Index cap =
      max_vocab ? std::min<Index>(*max_vocab, count) : static_cast<Index>(count);
  EmbeddingSet emb;
  emb.words.reserve(cap);
  emb.matrix.resize(cap, dim);
  std::unordered_set<std::string> seen;
  seen.reserve(static_cast<std::size_t>(cap) * 2);

  std::vector<double> row(dim);
  Index kept = 0;
  long long line_no = 1, rows_read = 0;
  while (kept < cap && rows_read < count && std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    const char* p = line.data();
    const char* end = p + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;  // blank line
    ++rows_read;
    const char* tok_begin = p;
    while (p != end && *p != ' ' && *p != '\t') ++p;
    std::string token(tok_begin, p);
    Index got = 0;
    for (;;) {
      p = skip_ws(p, end);
      if (p == end) break;
      if (got == dim) fail(path, line_no, "expected " + std::to_string(dim) + " values, found more");
      auto [next, ec] = std::from_chars(p, end, row[got]);
      if (ec != std::errc{}) fail(path, line_no, "bad number");
      ++got;
      p = next;
    }
    if (got != dim)
      fail(path, line_no, "expected " + std::to_string(dim) + " values, found " + std::to_string(got));
    if (!seen.insert(token).second) {
      emb.warnings.push_back("duplicate token '" + token + "' at line " +
                             std::to_string(line_no) + " dropped");
      continue;
    }
    for (Index j = 0; j < dim; ++j) emb.matrix(kept, j) = row[j];
    emb.words.push_back(std::move(token));
    ++kept;
  }

  if (kept == 0) throw std::runtime_error(path + ": empty vocabulary");
  if (!max_vocab && rows_read < count)
    emb.warnings.push_back("header declared " + std::to_string(count) +
                           " rows, file contained " + std::to_string(rows_read));
  if (kept < cap) emb.matrix.conservativeResize(kept, dim);
  return emb;
}

void save_embeddings(const EmbeddingSet& emb, const std::string& path) {
  if (emb.size() == 0) throw std::invalid_argument("save_embeddings: empty set");
  if (emb.matrix.rows() != emb.size())
    throw std::invalid_argument("save_embeddings: words/matrix size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_embeddings: cannot open " + path);
  out << emb.size() << ' ' << emb.dim() << '\n';
  char buf[32];
  for (Index i = 0; i < emb.size(); ++i) {
    out << emb.words[i];
    for (Index j = 0; j < emb.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", emb.matrix(i, j));
      out << ' ' << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_embeddings: write failure on " + path);
}

EmbeddingSet cutoff(const EmbeddingSet& emb, Index n) {
  if (n < 1) throw std::invalid_argument("cutoff: n must be positive");
  const Index keep = std::min(n, emb.size());
  EmbeddingSet out;
  out.words.assign(emb.words.begin(), emb.words.begin() + keep);
  out.matrix = emb.matrix.topRows(keep);
  out.warnings = emb.warnings;
  return out;
}

SyntheticPair generate_isometric_pair(Index vocab_size, Index dim,
                                      std::uint64_t seed, double noise_sigma) {
  if (vocab_size < 2)
    throw std::invalid_argument("generate_isometric_pair: vocab_size must be >= 2");
  if (dim < 1) throw std::invalid_argument("generate_isometric_pair: dim must be >= 1");
  if (noise_sigma < 0)
    throw std::invalid_argument("generate_isometric_pair: negative noise_sigma");

  Rng rng = make_rng(seed, 0x15053);
  SyntheticPair pair;
  pair.source.matrix = random_gaussian(vocab_size, dim, rng);
  const Matrix q = random_orthogonal(dim, rng);

  // Fisher-Yates, pinned here rather than std::shuffle so the permutation is
  // identical on every platform.
  pair.permutation.resize(vocab_size);
  for (Index i = 0; i < vocab_size; ++i) pair.permutation[i] = i;
  for (Index i = vocab_size - 1; i > 0; --i)
    std::swap(pair.permutation[i], pair.permutation[uniform_index(rng, i + 1)]);

  pair.target.matrix.resize(vocab_size, dim);
  for (Index i = 0; i < vocab_size; ++i)
    pair.target.matrix.row(pair.permutation[i]) = pair.source.matrix.row(i) * q;
  if (noise_sigma > 0)
    pair.target.matrix += noise_sigma * random_gaussian(vocab_size, dim, rng);

  // Target row permutation[i] keeps source row i's number in its token name,
  // so gold pairs read s<i> -> t<i>.
  pair.source.words.resize(vocab_size);
  pair.target.words.resize(vocab_size);
  pair.gold.pairs.reserve(vocab_size);
  for (Index i = 0; i < vocab_size; ++i) {
    pair.source.words[i] = "s" + std::to_string(i);
    pair.target.words[pair.permutation[i]] = "t" + std::to_string(i);
    pair.gold.pairs.emplace_back(i, pair.permutation[i]);
  }
  pair.gold.src_size = vocab_size;
  pair.gold.trg_size = vocab_size;
  return pair;
}

void save_gold_file(const SyntheticPair& pair, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_gold_file: cannot open " + path);
  for (const auto& [i, j] : pair.gold.pairs)
    out << pair.source.words[i] << ' ' << pair.target.words[j] << '\n';
  if (!out) throw std::runtime_error("save_gold_file: write failure on " + path);
}

}  // namespace xlmap
