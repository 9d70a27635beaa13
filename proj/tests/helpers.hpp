#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "xlmap/embeddings.hpp"
#include "xlmap/eval.hpp"
#include "xlmap/normalize.hpp"
#include "xlmap/rng.hpp"
#include "xlmap/types.hpp"

namespace testutil {

inline double max_diff(const xlmap::Matrix& a, const xlmap::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline xlmap::Matrix normalized_random(xlmap::Index rows, xlmap::Index cols,
                                       std::uint64_t seed) {
  xlmap::Rng rng = xlmap::make_rng(seed);
  return xlmap::normalize_pipeline(xlmap::random_gaussian(rows, cols, rng));
}

// Unit-row random matrix without centering (rows stay generic directions).
inline xlmap::Matrix unit_random(xlmap::Index rows, xlmap::Index cols,
                                 std::uint64_t seed) {
  xlmap::Rng rng = xlmap::make_rng(seed);
  return xlmap::unit_normalize(xlmap::random_gaussian(rows, cols, rng));
}

inline std::string tmp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("xlmap_tests_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline std::string write_file(const std::string& name,
                              const std::string& content) {
  const std::string path = tmp_path(name);
  std::ofstream out(path);
  out << content;
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline xlmap::GoldDictionary gold_of(const xlmap::SyntheticPair& pair) {
  xlmap::GoldDictionary gold;
  for (const auto& [i, j] : pair.gold.pairs)
    gold.entries[pair.source.words[i]].insert(pair.target.words[j]);
  return gold;
}

}  // namespace testutil
