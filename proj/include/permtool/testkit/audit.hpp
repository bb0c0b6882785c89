#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "permtool/perm_table.hpp"
#include "permtool/testkit/oracles.hpp"

namespace permtool::testkit {

class audit_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// One cycle of the input with everything the audits need to know up front.
struct cycle_plan {
  std::vector<element_t> elems;
  element_t leader = 0;    // leader of the original cycle
  element_t new_start = 0; // end of its best staircase = leader of the inverted cycle
  element_t cut_end = 0;   // predecessor of new_start in the inverted cycle
  bool hard = false;
  std::vector<element_t> path_order;  // inverted cycle cut before new_start
};

inline std::vector<cycle_plan> plan_cycles(const std::vector<element_t>& perm, std::size_t b) {
  const auto inv = ref_inverse(perm);
  std::vector<cycle_plan> out;
  for (const auto& c : cycles_of(perm)) {
    cycle_plan p;
    p.elems = c.order;
    const auto L = ref_levels(c, b);
    p.leader = ref_leader(L);
    const auto best = ref_best_staircase(L, p.leader);
    if (!best) throw audit_failure("audit: leader without best staircase");
    p.new_start = best->end();
    p.hard = p.new_start > p.leader;
    element_t x = p.new_start;
    do {
      p.path_order.push_back(x);
      x = inv[x - 1];
    } while (x != p.new_start);
    p.cut_end = p.path_order.back();
    out.push_back(std::move(p));
  }
  return out;
}

inline std::string show(element_t i, const std::string& what) {
  std::ostringstream os;
  os << "after process(" << i << "): " << what;
  return os.str();
}

}  // namespace detail

// Three-state lifecycle of the O(n log n) inverter: a cycle is untouched until
// its leader is processed, then inverted; a hard cycle stays cut before its new
// leader, with the extended rank of that leader in the null, until the new
// leader is processed.
class logspace_audit {
 public:
  explicit logspace_audit(const std::vector<element_t>& perm)
      : perm_(perm), inv_(ref_inverse(perm)), plans_(detail::plan_cycles(perm, 1)) {
    for (auto& p : plans_) {
      if (!p.hard) continue;
      const level_sets path(p.path_order, false, 1);
      const auto r = ref_extended_rank(path, p.new_start);
      if (!r) throw audit_failure("audit: new leader has no rank on the cut path");
      encodings_.push_back(r->encode());
    }
  }

  void check(const perm_table& t, element_t i) {
    ++checks_;
    std::size_t hard_idx = 0;
    for (const auto& p : plans_) {
      std::optional<std::uint32_t> enc;
      if (p.hard) enc = encodings_[hard_idx++];
      int state = 1;
      if (i >= p.leader) state = (p.hard && i < p.new_start) ? 2 : 3;
      for (auto x : p.elems) {
        value want = value::of(state == 1 ? perm_[x - 1] : inv_[x - 1]);
        if (state == 2 && x == p.cut_end) want = value::null(*enc);
        const value got = t.peek(x);
        if (got != want) {
          std::ostringstream os;
          os << "cycle led by " << p.leader << " in state " << state << ": pi(" << x << ") is " << got
             << ", expected " << want;
          throw audit_failure(detail::show(i, os.str()));
        }
      }
    }
  }

  std::size_t checks() const { return checks_; }

 private:
  std::vector<element_t> perm_;
  std::vector<element_t> inv_;
  std::vector<detail::cycle_plan> plans_;
  std::vector<std::uint32_t> encodings_;
  std::size_t checks_ = 0;
};

// Invariants of the b-local inverter. For a hard cycle between the processing
// of its leader and of the new leader i', every edge equals the inverse except
// the one leaving the end (the predecessor of i'), which holds either the rank
// null of a path or the intersection of a sigma. Then:
//  - the start i' is the leader of the fixed component and is outstanding,
//  - a path's null carries rank(i') + 1,
//  - a sigma's intersection is processed and is the only loop element with a
//    best staircase,
//  - the number of outstanding elements drops whenever a new sigma appears.
class blocal_audit {
 public:
  blocal_audit(const std::vector<element_t>& perm, std::size_t b)
      : perm_(perm), inv_(ref_inverse(perm)), b_(b), plans_(detail::plan_cycles(perm, b)) {
    for (const auto& p : plans_) {
      const level_sets path(p.path_order, false, b_);
      const auto r = ref_rank(path, p.new_start);
      path_rank_.push_back(r ? static_cast<long>(*r) : -1);
      cycle_state s;
      s.outstanding = count_outstanding(path);
      state_.push_back(s);
    }
  }

  void check(const perm_table& t, element_t i) {
    ++checks_;
    for (std::size_t ci = 0; ci < plans_.size(); ++ci) check_cycle(t, i, ci);
  }

  std::size_t checks() const { return checks_; }
  std::size_t sigmas_seen() const { return sigmas_; }
  std::size_t paths_seen() const { return paths_; }
  // Loop elements other than the intersection that have a best staircase but
  // do not lead the loop. Only possible for b > 1.
  std::size_t extra_loop_staircases() const { return extra_staircases_; }

 private:
  struct cycle_state {
    std::optional<value> last_end_value;
    std::size_t outstanding = 0;
  };

  [[noreturn]] void fail(element_t i, const detail::cycle_plan& p, const std::string& what) const {
    std::ostringstream os;
    os << "cycle led by " << p.leader << " (new leader " << p.new_start << "): " << what;
    throw audit_failure(detail::show(i, os.str()));
  }

  void check_cycle(const perm_table& t, element_t i, std::size_t ci) {
    const auto& p = plans_[ci];
    if (i < p.leader || !p.hard || i >= p.new_start) {
      const bool original = i < p.leader;
      for (auto x : p.elems) {
        const value want = value::of(original ? perm_[x - 1] : inv_[x - 1]);
        if (t.peek(x) != want) {
          fail(i, p, std::string(original ? "should be untouched" : "should be fully inverted") +
                         " but pi(" + std::to_string(x) + ") differs");
        }
      }
      return;
    }
    for (auto x : p.elems) {
      if (x == p.cut_end) continue;
      if (t.peek(x) != value::of(inv_[x - 1])) {
        fail(i, p, "edge from " + std::to_string(x) + " is not the inverse edge");
      }
    }
    if (path_rank_[ci] < 0) fail(i, p, "new leader has no rank on the cut path");
    const value end_value = t.peek(p.cut_end);
    auto& st = state_[ci];
    const bool changed = !st.last_end_value || *st.last_end_value != end_value;
    st.last_end_value = end_value;
    if (!changed) return;

    if (end_value.is_null()) {
      ++paths_;
      if (end_value.null_type() != static_cast<std::uint32_t>(path_rank_[ci] + 1)) {
        fail(i, p, "path null has type " + std::to_string(end_value.null_type()) + ", rank of start is " +
                       std::to_string(path_rank_[ci]));
      }
      const level_sets path(p.path_order, false, b_);
      check_start_outstanding(i, p, path, path.level(1).size());
      return;
    }

    ++sigmas_;
    const element_t c = end_value.payload();
    if (c == p.new_start) fail(i, p, "component is a cycle before its start was processed");
    if (c > i) fail(i, p, "sigma intersection " + std::to_string(c) + " not processed yet");
    partial_fn f(perm_.size());
    for (auto x : p.elems) f[x - 1] = x == p.cut_end ? c : inv_[x - 1];
    const auto comps = decompose_restricted(f, p.elems);
    if (comps.kind != component_kind::sigma || comps.start() != p.new_start || comps.order[comps.tail] != c) {
      fail(i, p, "end does not close a sigma at " + std::to_string(c));
    }
    const auto loop = loop_levels(comps, b_);
    // With b > 1 the top level of the loop may hold several middles, so other
    // loop elements can have best staircases; only c may lead the loop.
    const element_t loop_min = *std::min_element(loop.level(1).begin(), loop.level(1).end());
    for (auto x : loop.level(1)) {
      const auto s = ref_best_staircase(loop, x);
      const bool leads = s && s->middle() == loop_min;
      if (leads != (x == c)) {
        fail(i, p, "loop element " + std::to_string(x) +
                       (leads ? " leads the loop besides the intersection" : " (intersection) does not lead the loop"));
      }
      if (s && x != c) {
        if (b_ == 1) fail(i, p, "loop element " + std::to_string(x) + " has a best staircase with b=1");
        ++extra_staircases_;
      }
    }
    const auto tail_view = sigma_as_path(comps, b_);
    check_start_outstanding(i, p, tail_view, comps.tail);
    std::size_t count = 0;
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < comps.tail; ++k) {
      const auto r = ref_rank(tail_view, comps.order[k]);
      if (!r) continue;
      if (!best || *r > *best) {
        best = r;
        count = 1;
      } else if (*r == *best) {
        ++count;
      }
    }
    if (count >= st.outstanding) {
      fail(i, p, "outstanding count did not drop (" + std::to_string(st.outstanding) + " -> " +
                     std::to_string(count) + ")");
    }
    st.outstanding = count;
  }

  // Start must have the largest rank among the first `limit` elements of `view`.
  void check_start_outstanding(element_t i, const detail::cycle_plan& p, const level_sets& view,
                               std::size_t limit) const {
    const auto& order = view.level(1);
    const auto start_rank = ref_rank(view, p.new_start);
    if (!start_rank) fail(i, p, "start has no rank");
    for (std::size_t k = 0; k < limit; ++k) {
      const auto r = ref_rank(view, order[k]);
      if (r && *r > *start_rank) fail(i, p, "start is not outstanding");
    }
  }

  static component decompose_restricted(const partial_fn& f, const std::vector<element_t>& elems) {
    partial_fn g(f.size());
    // Elements outside the cycle become fixed points so decompose() accepts g.
    for (std::size_t x = 1; x <= f.size(); ++x) g[x - 1] = static_cast<element_t>(x);
    for (auto x : elems) g[x - 1] = f[x - 1];
    for (auto& comp : decompose(g)) {
      if (std::find(elems.begin(), elems.end(), comp.order[0]) != elems.end()) return comp;
    }
    throw audit_failure("audit: component not found");
  }

  std::vector<element_t> perm_;
  std::vector<element_t> inv_;
  std::size_t b_;
  std::vector<detail::cycle_plan> plans_;
  std::vector<long> path_rank_;
  std::vector<cycle_state> state_;
  std::size_t checks_ = 0;
  std::size_t sigmas_ = 0;
  std::size_t paths_ = 0;
  std::size_t extra_staircases_ = 0;
};

}  // namespace permtool::testkit
