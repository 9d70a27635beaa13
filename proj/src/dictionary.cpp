#include "xlmap/dictionary.hpp"

#include <stdexcept>
#include <string>

namespace xlmap {

void Dictionary::validate_against(Index rows_s, Index rows_t) const {
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto [i, j] = pairs[n];
    if (i < 0 || i >= rows_s || j < 0 || j >= rows_t)
      throw std::out_of_range(
          "dictionary pair " + std::to_string(n) + " = (" + std::to_string(i) +
          ", " + std::to_string(j) + ") outside " + std::to_string(rows_s) +
          "x" + std::to_string(rows_t));
  }
}

}  // namespace xlmap
