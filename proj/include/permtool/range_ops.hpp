#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "permtool/perm_table.hpp"

namespace permtool {

// Endpoint of a range a ... b. An empty endpoint stands for the path boundary.
using endpoint = std::optional<element_t>;

namespace detail {

template <permutation_oracle Table>
element_t min_range_walk(Table& t, element_t a, endpoint b) {
  element_t x = a;
  element_t lo = a;
  bool moved = false;
  for (;;) {
    if (b && x == *b && (moved || x != a)) return lo;
    if (moved && x == a) {
      throw traversal_error(b ? "min_range: " + std::to_string(*b) + " not reachable from " +
                                    std::to_string(a)
                              : std::string("min_range: open end requested on a cycle"));
    }
    const value v = t.read(x);
    if (v.is_null()) {
      if (!b) return lo;
      throw traversal_error("min_range: path ends before reaching " + std::to_string(*b));
    }
    x = v.payload();
    moved = true;
    lo = std::min(lo, x);
  }
}

}  // namespace detail

// min{a, pi(a), ..., b}. With a == b the whole cycle of a is scanned; an empty
// b scans to the end of the path. An empty a is only accepted as "start of the
// path" when the caller names that start explicitly via `path_start`.
template <permutation_oracle Table>
element_t min_range(Table& t, endpoint a, endpoint b, endpoint path_start = std::nullopt) {
  if (!a) {
    if (!path_start) throw contract_violation("min_range: open start needs the path's first element");
    a = path_start;
  }
  if (!b && !a) throw contract_violation("min_range: both endpoints open");
  auto scope = t.meter().scope(3);
  return detail::min_range_walk(t, *a, b);
}

template <permutation_oracle Table>
element_t min_range(Table& t, element_t a, element_t b) {
  auto scope = t.meter().scope(3);
  return detail::min_range_walk(t, a, endpoint(b));
}

// min(min_range(x, y), min_range(y, z)).
template <permutation_oracle Table>
element_t min_range3(Table& t, element_t x, element_t y, element_t z) {
  return std::min(min_range(t, x, y), min_range(t, y, z));
}

// len(i, i2) = min{k > 0 : pi^k(i) = i2}.
template <permutation_oracle Table>
std::size_t dist(Table& t, element_t i, element_t i2) {
  auto scope = t.meter().scope(2);
  element_t x = i;
  std::size_t k = 0;
  do {
    const value v = t.read(x);
    if (v.is_null()) throw traversal_error("dist: path ends before reaching target");
    x = v.payload();
    ++k;
    if (x == i2) return k;
  } while (x != i);
  throw traversal_error("dist: target not on the cycle");
}

}  // namespace permtool
