#include <doctest.h>

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "xlmap/parallel.hpp"

using namespace xlmap;

TEST_SUITE("parallel") {

TEST_CASE("default_thread_count honours the environment variable") {
  setenv("XLMAP_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("XLMAP_THREADS", "not-a-number", 1);
  CHECK(default_thread_count() >= 1);
  unsetenv("XLMAP_THREADS");
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("for_each_block covers every row exactly once") {
  for (int threads : {1, 4}) {
    const ExecPolicy exec{threads, 3};
    std::vector<int> hits(10, 0);
    std::vector<Index> block_of(10, -1);
    for_each_block(10, exec, [&](Index block, Index begin, Index end) {
      for (Index r = begin; r < end; ++r) {
        ++hits[r];
        block_of[r] = block;
      }
    });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 10);
    for (int h : hits) CHECK(h == 1);
    // Block boundaries come from block_rows alone.
    const std::vector<Index> expected{0, 0, 0, 1, 1, 1, 2, 2, 2, 3};
    CHECK(block_of == expected);
  }
}

TEST_CASE("for_each_block with zero rows is a no-op") {
  bool called = false;
  for_each_block(0, {}, [&](Index, Index, Index) { called = true; });
  CHECK_FALSE(called);
}

TEST_CASE("worker exceptions propagate") {
  const ExecPolicy exec{4, 1};
  CHECK_THROWS_AS(for_each_block(8, exec,
                                 [&](Index block, Index, Index) {
                                   if (block == 5)
                                     throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
}

TEST_CASE("resolved_threads prefers the explicit setting") {
  setenv("XLMAP_THREADS", "7", 1);
  CHECK(ExecPolicy{2, 1024}.resolved_threads() == 2);
  CHECK(ExecPolicy{0, 1024}.resolved_threads() == 7);
  unsetenv("XLMAP_THREADS");
}

}  // TEST_SUITE
