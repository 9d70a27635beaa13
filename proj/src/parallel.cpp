#include "xlmap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace xlmap {

int default_thread_count() {
  if (const char* env = std::getenv("XLMAP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int ExecPolicy::resolved_threads() const {
  return threads > 0 ? threads : default_thread_count();
}

void for_each_block(Index rows, const ExecPolicy& exec,
                    const std::function<void(Index, Index, Index)>& fn) {
  if (rows <= 0) return;
  const Index block = exec.block_rows > 0 ? exec.block_rows : rows;
  const Index nblocks = (rows + block - 1) / block;
  const int workers =
      static_cast<int>(std::min<Index>(exec.resolved_threads(), nblocks));

  auto run_block = [&](Index b) {
    const Index begin = b * block;
    fn(b, begin, std::min(begin + block, rows));
  };

  if (workers <= 1) {
    for (Index b = 0; b < nblocks; ++b) run_block(b);
    return;
  }

  std::atomic<Index> cursor{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const Index b = cursor.fetch_add(1);
      if (b >= nblocks) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace xlmap
