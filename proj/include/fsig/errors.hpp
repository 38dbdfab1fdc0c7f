#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsig {

// Raised when a requested computation exceeds a configured size budget
// (quotient basis too large, generator sets blowing up, fill explosion).
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an element that must lie in the maximal ideal (x_1, ..., x_n)
// has a nonzero constant term. Colon and quotient lengths are only defined
// for non-units.
class unit_element_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or lexical error in polynomial input. `position` is the byte offset
// into the input string at which the problem was detected.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " +
                           std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fsig
