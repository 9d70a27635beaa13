#pragma once

#include <utility>
#include <vector>

#include "xlmap/types.hpp"

namespace xlmap {

// Sparse translation dictionary as (source row, target row) pairs.
// Concatenating directions may repeat a pair; a repeat simply weights that
// pair twice in the mapping objective, so duplicates are kept.
struct Dictionary {
  std::vector<std::pair<Index, Index>> pairs;
  Index src_size = 0;  // vocabulary sizes the indices were created against
  Index trg_size = 0;

  bool empty() const { return pairs.empty(); }
  Index size() const { return static_cast<Index>(pairs.size()); }

  // Throws std::out_of_range if any pair falls outside [0, rows_s) x [0, rows_t).
  void validate_against(Index rows_s, Index rows_t) const;
  void validate() const { validate_against(src_size, trg_size); }
};

}  // namespace xlmap
