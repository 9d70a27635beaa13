#include "xlmap/eval.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "xlmap/normalize.hpp"
#include "xlmap/retrieval.hpp"

namespace xlmap {

GoldDictionary load_gold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_gold: cannot open " + path);
  GoldDictionary gold;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string src, trg, extra;
    if (!(ss >> src)) continue;
    if (!(ss >> trg) || (ss >> extra))
      throw std::runtime_error("load_gold: " + path + ":" +
                               std::to_string(line_no) +
                               ": expected two tokens");
    gold.entries[src].insert(trg);
  }
  if (gold.empty())
    throw std::runtime_error("load_gold: " + path + ": no entries");
  return gold;
}

EvalResult evaluate_p1(const EmbeddingSet& src, const EmbeddingSet& trg,
                       const Matrix& src_mapped, const Matrix& trg_mapped,
                       const GoldDictionary& gold, Index csls_k, bool use_csls,
                       const ExecPolicy& exec) {
  if (gold.empty())
    throw std::invalid_argument("evaluate_p1: empty gold dictionary");
  if (src.size() != src_mapped.rows() || trg.size() != trg_mapped.rows())
    throw std::invalid_argument("evaluate_p1: mapped matrix size mismatch");

  std::unordered_map<std::string, Index> src_rows, trg_rows;
  for (Index i = 0; i < src.size(); ++i) src_rows.emplace(src.words[i], i);
  for (Index i = 0; i < trg.size(); ++i) trg_rows.emplace(trg.words[i], i);

  std::vector<Index> query_rows;
  std::vector<const std::set<std::string>*> answers;
  for (const auto& [word, translations] : gold.entries) {
    const auto s = src_rows.find(word);
    if (s == src_rows.end()) continue;
    bool reachable = false;
    for (const auto& t : translations)
      if (trg_rows.count(t)) {
        reachable = true;
        break;
      }
    if (!reachable) continue;
    query_rows.push_back(s->second);
    answers.push_back(&translations);
  }
  if (query_rows.empty())
    throw std::runtime_error("evaluate_p1: no evaluable entries");

  const Matrix xs_n = unit_normalize(src_mapped);
  const Matrix xt_n = unit_normalize(trg_mapped);
  Matrix queries(static_cast<Index>(query_rows.size()), xs_n.cols());
  for (std::size_t q = 0; q < query_rows.size(); ++q)
    queries.row(static_cast<Index>(q)) = xs_n.row(query_rows[q]);

  std::vector<Index> pred;
  if (use_csls) {
    // Penalty reference is the full source vocabulary, not just the queries.
    const Vector pen = csls_penalty(xt_n, xs_n, csls_k, exec);
    pred = penalized_retrieve(queries, xt_n, pen, exec);
  } else {
    pred = nn_retrieve(queries, xt_n, exec);
  }

  EvalResult r;
  r.evaluated = static_cast<Index>(query_rows.size());
  for (std::size_t q = 0; q < query_rows.size(); ++q)
    if (answers[q]->count(trg.words[pred[q]])) ++r.correct;
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.evaluated);
  r.coverage = static_cast<double>(r.evaluated) / static_cast<double>(gold.size());
  return r;
}

}  // namespace xlmap
