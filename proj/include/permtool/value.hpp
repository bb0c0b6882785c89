#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

#include "permtool/errors.hpp"

namespace permtool {

// An element of [n]. Elements are 1-based everywhere in the public API.
using element_t = std::uint32_t;

// Logical content of a permutation slot: either an element of [n] or a typed
// null. Type 0 is the untyped null used by views to hide an edge; it is never
// stored in a table.
class value {
 public:
  constexpr value() = default;

  static constexpr value of(element_t e) { return value(e, false); }
  static constexpr value null(std::uint32_t type = 0) { return value(type, true); }

  constexpr bool is_null() const { return null_; }
  constexpr bool is_element() const { return !null_; }

  constexpr element_t element() const {
    if (null_) throw contract_violation("value::element() on a null");
    return payload_;
  }
  constexpr std::uint32_t null_type() const {
    if (!null_) throw contract_violation("value::null_type() on an element");
    return payload_;
  }

  // Raw payload without the tag check; for hot loops that already branched.
  constexpr std::uint32_t payload() const { return payload_; }

  friend constexpr bool operator==(const value&, const value&) = default;

  friend std::ostream& operator<<(std::ostream& os, const value& v) {
    if (v.null_) return os << "null_" << v.payload_;
    return os << v.payload_;
  }

 private:
  constexpr value(std::uint32_t payload, bool null) : payload_(payload), null_(null) {}

  std::uint32_t payload_ = 0;
  bool null_ = true;
};

// Outcome of a step along pi that may run off the end of a path.
enum class step { ok, aborted };

}  // namespace permtool
