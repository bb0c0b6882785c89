#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "permtool/perm_table.hpp"
#include "permtool/range_ops.hpp"

namespace permtool {

// Left-to-right leader test of the textbook solution: i leads iff it is the
// minimum of its cycle.
template <permutation_oracle Table>
bool naive_process(Table& t, element_t i) {
  return i == min_range(t, i, i);
}

// Extended rank (t, h): best-staircase size t, and whether a half staircase of
// size t+1 could be completed. Ordered lexicographically with false < true.
struct extended_rank {
  unsigned size = 0;
  bool half = false;

  // Null-type encoding 2t + h + 1 (types start at 1).
  std::uint32_t encode() const { return 2 * size + (half ? 1u : 0u) + 1; }

  friend auto operator<=>(const extended_rank&, const extended_rank&) = default;
};

struct staircase_report {
  element_t middle = 0;
  element_t end = 0;
  unsigned size = 0;
  bool half = false;

  extended_rank rank() const { return {size, half}; }

  friend bool operator==(const staircase_report&, const staircase_report&) = default;
};

inline std::size_t ceil_log2(std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

inline std::size_t elbow_capacity(std::size_t n) { return ceil_log2(n) + 2; }

// The elbow array: the right part of the current staircase, elbow[k] = j_{k+1}.
// next(r) rearranges it so that elbow[r-1] = pi_r(elbow[r]).
template <permutation_oracle Table>
class elbow_table {
 public:
  // Observer invoked at every next(r) boundary with (table, r, after).
  using hook_type = std::function<void(const elbow_table&, unsigned, bool)>;

  explicit elbow_table(Table& t)
      : t_(t), entries_(elbow_capacity(t.size()), 0), words_(t.meter().scope(entries_.size())) {}

  element_t& operator[](std::size_t k) {
    if (k >= entries_.size()) throw contract_violation("elbow index past capacity");
    return entries_[k];
  }
  element_t operator[](std::size_t k) const { return entries_.at(k); }

  std::size_t capacity() const { return entries_.size(); }
  Table& table() { return t_; }

  void set_hook(hook_type h) { hook_ = std::move(h); }

  // Precondition: elbow[r] = elbow[r-1] in E_r and elbow[k-1] = pi_k(elbow[k])
  // for k < r. Aborts when the walk would pass the end of a path.
  [[nodiscard]] step next(unsigned r) {
    if (r == 0 || r >= entries_.size()) throw contract_violation("next: level out of range");
    return next_impl(r);
  }

 private:
  step next_impl(unsigned r) {
    auto frame = t_.meter().scope(1);
    if (hook_) hook_(*this, r, false);
    if (r == 1) {
      const value v = t_.read(entries_[1]);
      if (v.is_null()) return step::aborted;
      entries_[0] = v.payload();
    } else {
      while (entries_[r - 1] < entries_[r - 2]) {
        entries_[r - 1] = entries_[r - 2];
        if (next_impl(r - 1) == step::aborted) return step::aborted;
      }
      while (entries_[r - 1] > entries_[r - 2]) {
        entries_[r - 1] = entries_[r - 2];
        if (next_impl(r - 1) == step::aborted) return step::aborted;
      }
    }
    if (hook_) hook_(*this, r, true);
    return step::ok;
  }

  Table& t_;
  std::vector<element_t> entries_;
  space_meter::scope_token words_;
  hook_type hook_;
};

// Builds the best staircase from i, reporting (middle, end, size, half) or
// nothing when the first proper almost staircase that is not a staircase shows
// up. Works on cycles and on paths (a null ends the walk).
template <permutation_oracle Table>
std::optional<staircase_report> best_staircase_ext(elbow_table<Table>& elbow, element_t i) {
  auto locals = elbow.table().meter().scope(5);
  elbow[0] = elbow[1] = i;
  for (unsigned r = 1;; ++r) {
    const element_t end = elbow[0];
    const element_t m = elbow[r];
    if (elbow.next(r) == step::aborted) return staircase_report{m, end, r - 1, false};
    const element_t m1 = elbow[r] = elbow[r - 1];
    if (elbow.next(r) == step::aborted) return staircase_report{m, end, r - 1, true};
    const element_t m2 = elbow[r - 1];
    if (m1 == m) return staircase_report{m, end, r - 1, true};
    if (m1 < m && m1 < m2) {
      elbow[r + 1] = elbow[r];
    } else {
      return std::nullopt;
    }
  }
}

template <permutation_oracle Table>
std::optional<staircase_report> best_staircase_ext(Table& t, element_t i) {
  elbow_table<Table> elbow(t);
  return best_staircase_ext(elbow, i);
}

// Middle of the best staircase from i, if any.
template <permutation_oracle Table>
std::optional<element_t> best_staircase(elbow_table<Table>& elbow, element_t i) {
  auto rep = best_staircase_ext(elbow, i);
  if (!rep) return std::nullopt;
  return rep->middle;
}

template <permutation_oracle Table>
std::optional<element_t> best_staircase(Table& t, element_t i) {
  elbow_table<Table> elbow(t);
  return best_staircase(elbow, i);
}

// On a permutation exactly one element per cycle has a best staircase.
template <permutation_oracle Table>
bool logspace_process(elbow_table<Table>& elbow, element_t i) {
  return best_staircase(elbow, i).has_value();
}

template <permutation_oracle Table, class Report>
void for_each_leader_naive(Table& t, Report&& report) {
  auto loop = t.meter().scope(1);
  const auto n = static_cast<element_t>(t.size());
  for (element_t i = 1; i <= n; ++i) {
    if (naive_process(t, i)) report(i);
  }
}

template <permutation_oracle Table, class Report>
void for_each_leader_logspace(Table& t, Report&& report) {
  auto loop = t.meter().scope(1);
  elbow_table<Table> elbow(t);
  const auto n = static_cast<element_t>(t.size());
  for (element_t i = 1; i <= n; ++i) {
    if (logspace_process(elbow, i)) report(i);
  }
}

}  // namespace permtool
