#pragma once

#include <span>
#include <utility>

#include "permtool/leaders.hpp"

namespace permtool {

// Shifts the values along the cycle of i forward: the old A[j] lands in A[pi(j)].
template <class T, permutation_oracle Table>
void rotate_cycle(std::span<T> a, Table& t, element_t i) {
  auto locals = t.meter().scope(2);
  T carry = std::move(a[i - 1]);
  element_t j = i;
  for (;;) {
    const value v = t.read(j);
    if (v.is_null()) throw traversal_error("rotate_cycle: element lies on a path");
    j = v.payload();
    std::swap(carry, a[j - 1]);
    if (j == i) return;
  }
}

// A[i] <- a_{pi^{-1}(i)}, one rotation per leader. The table is only read.
template <class T, permutation_oracle Table>
void permute(std::span<T> a, Table& t, const leader_algo& algo) {
  if (a.size() != t.size()) throw contract_violation("permute: array length differs from n");
  for_each_leader(t, algo, [&](element_t i) { rotate_cycle(a, t, i); });
}

}  // namespace permtool
