#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbmm {

// Raised when an internal invariant (charging uniqueness, degree guarantee,
// table completeness, ...) is observed to be broken at runtime.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The Four-Russians table for the requested parameters would exceed the
// configured entry budget. Callers should lower delta or the subset cap.
class table_budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An easy-part finder returned something outside its contract.
class finder_contract_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based; 0 means "end of input".
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cbmm
