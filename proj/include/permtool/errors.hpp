#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permtool {

// Caller broke a documented precondition (bad index, wrong component kind...).
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A plain value would occur more than `c` times while nulls are simulated.
class multiplicity_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Auxiliary-space scopes released twice or out of order.
class metering_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A walk along pi left the structure it was supposed to stay on
// (fell off a path, or never reached its target).
class traversal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class fit_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class generation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace permtool
