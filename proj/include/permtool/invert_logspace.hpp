#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "permtool/leaders_blocal.hpp"
#include "permtool/leaders_logspace.hpp"

namespace permtool {

struct invert_stats {
  std::uint64_t cycles_inverted = 0;
  std::uint64_t cuts = 0;
  std::uint64_t fixes = 0;
  std::uint32_t null_types = 0;
};

// Reverses the cycle through i. If a null turns up, the edges already reversed
// are restored before the traversal_error leaves.
template <mutable_permutation Table>
void invert_cycle(Table& t, element_t i) {
  auto locals = t.meter().scope(3);
  element_t prev = i;
  value v = t.read(i);
  if (v.is_null()) throw traversal_error("invert_cycle: element lies on a path");
  element_t x = v.payload();
  while (x != i) {
    const value nx = t.read(x);
    if (nx.is_null()) {
      element_t cur = prev;
      element_t next = x;
      while (cur != i) {
        const element_t back = t.read(cur).payload();
        t.write(cur, value::of(next));
        next = cur;
        cur = back;
      }
      throw traversal_error("invert_cycle: element lies on a path");
    }
    t.write(x, value::of(prev));
    prev = x;
    x = nx.payload();
  }
  t.write(i, value::of(prev));
}

// Last element before the null when i lies on a path; nothing on a cycle.
template <permutation_oracle Table>
std::optional<element_t> path_end(Table& t, element_t i) {
  auto locals = t.meter().scope(1);
  element_t x = i;
  for (;;) {
    const value v = t.read(x);
    if (v.is_null()) return x;
    x = v.payload();
    if (x == i) return std::nullopt;
  }
}

// Null types for the extended-rank encoding 2t+h+1, t <= R.
inline std::uint32_t logspace_null_types(std::size_t n) {
  const auto r = max_proper_level(n, 1);
  return static_cast<std::uint32_t>(std::min<std::size_t>(n, 2 * std::size_t{r} + 2));
}

template <mutable_permutation Table>
class logspace_inverter {
 public:
  logspace_inverter(Table& t, std::uint32_t null_types)
      : t_(t), k_(null_types), elbow_(t) {}

  const invert_stats& stats() const { return stats_; }
  elbow_table<Table>& elbow() { return elbow_; }

  void process(element_t i) {
    auto locals = t_.meter().scope(4);
    const auto rep = best_staircase_ext(elbow_, i);
    if (!rep) return;
    const auto a = path_end(t_, i);
    if (!a && min_range(t_, i, i) == rep->middle) {
      const element_t ip = rep->end;
      const element_t pred = t_.read(ip).payload();
      invert_cycle(t_, i);
      ++stats_.cycles_inverted;
      if (ip > i) {
        // Any type will do while the staircase runs: it only sees an abort.
        t_.write(pred, value::null(1));
        const auto path_rep = best_staircase_ext(elbow_, ip);
        if (!path_rep) throw contract_violation("cut before the new leader left it without a rank");
        t_.write(pred, value::null(encode(path_rep->rank())));
        ++stats_.cuts;
      }
    }
    if (a && t_.read(*a) == value::null(rep->rank().encode())) {
      t_.write(*a, value::of(i));
      ++stats_.fixes;
    }
  }

 private:
  std::uint32_t encode(const extended_rank& r) const {
    const auto x = r.encode();
    if (x > k_) throw contract_violation("extended rank does not fit the null types");
    return x;
  }

  Table& t_;
  std::uint32_t k_;
  elbow_table<Table> elbow_;
  invert_stats stats_;
};

struct no_observer {
  void operator()(element_t) const {}
};

// Inverts t in place. `after_process(i)` runs after every Process(i).
template <class Observer = no_observer>
invert_stats run_invert_logspace(perm_table& t, Observer&& after_process = {}) {
  const auto k = logspace_null_types(t.size());
  // Each write of invert_cycle leaves one value with two preimages until the
  // next write, so multiplicity 1 is not enough even here.
  t.enable_nulls(k, 2);
  invert_stats stats;
  {
    auto registry_words = t.meter().scope(t.registry().words());
    auto loop = t.meter().scope(1);
    logspace_inverter<perm_table> inv(t, k);
    const auto n = static_cast<element_t>(t.size());
    for (element_t i = 1; i <= n; ++i) {
      inv.process(i);
      after_process(i);
    }
    stats = inv.stats();
  }
  stats.null_types = k;
  t.disable_nulls();
  return stats;
}

}  // namespace permtool
