#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcol {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad surface syntax; pos is a character offset into the input.
struct parse_error : error {
  parse_error(const std::string& what, std::size_t pos)
      : error(what + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
  std::size_t pos;
};

// Sequential composition whose arities do not meet, or an operation
// applied to a tangle of the wrong shape.
struct arity_error : error {
  using error::error;
};

// Malformed table, axiom failure, out-of-range element, or a
// non-involutory quandle where a kei is required.
struct quandle_error : error {
  using error::error;
};

// Search budget exhausted, width guard tripped, or a counter overflowed.
struct limit_error : error {
  using error::error;
};

}  // namespace qcol
