#include <doctest.h>

#include <stdexcept>

#include "xlmap/dictionary.hpp"

using namespace xlmap;

TEST_SUITE("dictionary") {

TEST_CASE("validate accepts in-range pairs and duplicates") {
  Dictionary d;
  d.src_size = 3;
  d.trg_size = 2;
  d.pairs = {{0, 0}, {2, 1}, {0, 0}, {1, 1}};
  CHECK_NOTHROW(d.validate());
  CHECK(d.size() == 4);
  CHECK_FALSE(d.empty());
}

TEST_CASE("validate_against rejects out-of-range indices") {
  Dictionary d;
  d.pairs = {{0, 0}, {3, 1}};
  CHECK_THROWS_AS(d.validate_against(3, 2), std::out_of_range);
  d.pairs = {{0, 2}};
  CHECK_THROWS_AS(d.validate_against(3, 2), std::out_of_range);
  d.pairs = {{-1, 0}};
  CHECK_THROWS_AS(d.validate_against(3, 2), std::out_of_range);
  d.pairs = {{2, 1}};
  CHECK_NOTHROW(d.validate_against(3, 2));
}

}  // TEST_SUITE
