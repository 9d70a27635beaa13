#pragma once

#include <functional>

#include "xlmap/types.hpp"

namespace xlmap {

// Controls worker threads and row blocking for the similarity sweeps.
// Block boundaries depend only on block_rows, never on the thread count, so
// numeric results are identical for any number of workers.
struct ExecPolicy {
  int threads = 0;          // 0 = XLMAP_THREADS env var, else hardware count
  Index block_rows = 1024;  // rows of the query matrix per block

  int resolved_threads() const;
};

// XLMAP_THREADS if set and positive, otherwise std::thread::hardware_concurrency.
int default_thread_count();

// Calls fn(block_index, row_begin, row_end) for each block of [0, rows).
// Blocks are distributed over workers via an atomic cursor; fn must write only
// to rows it owns.
void for_each_block(Index rows, const ExecPolicy& exec,
                    const std::function<void(Index, Index, Index)>& fn);

}  // namespace xlmap
