#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hothand {

// Precondition violations on numeric inputs (grid bounds, scales, indices)
// are reported as std::domain_error; the types below cover input files and
// numerical failures that callers usually want to tell apart.

/// Malformed input record. `locator` is a 1-based line number or record id.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t locator)
      : std::runtime_error(what + " (line " + std::to_string(locator) + ")"),
        locator_(locator) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t locator() const noexcept { return locator_; }

 private:
  std::size_t locator_ = 0;
};

/// Records that parse individually but violate grouping rules, such as a
/// gap in throw_index within a leg.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hothand
