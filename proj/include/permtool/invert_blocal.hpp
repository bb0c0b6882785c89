#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "permtool/invert_logspace.hpp"
#include "permtool/leaders_blocal.hpp"

namespace permtool {

// Outcome of the tortoise-and-hare scan from i.
enum class scan_result {
  running,
  on_loop,       // i lies on a cycle or on the loop of a sigma
  intersection,  // i lies on the tail of a sigma
  aborted,       // i lies on a path
};

// Resumable tortoise-and-hare search. One step() is one iteration of a loop of
// the textbook procedure (a hare iteration reads twice). Besides the classic
// answer it keeps the element the caller needs next:
//  - on_loop: the predecessor of i (one more lap from i),
//  - intersection: the end of the sigma, i.e. the loop predecessor of the
//    intersection, taken from the last step of the offset walk,
//  - aborted: the element whose value is null.
template <permutation_oracle Table>
class intersection_scan {
 public:
  intersection_scan(Table& t, element_t i)
      : t_(t), i_(i), tort_(i), hare_(i), words_(t.meter().scope(8)) {}

  bool done() const { return phase_ == phase::done; }
  scan_result result() const { return result_; }
  // Valid once done().
  element_t boundary() const { return boundary_; }
  element_t intersection() const { return tort_; }
  std::size_t loop_length() const { return loop_; }
  std::size_t tail_length() const { return tail_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t reads() const { return reads_; }

  void step() {
    if (done()) return;
    ++steps_;
    switch (phase_) {
      case phase::meet: {
        const value h1 = read(hare_);
        if (h1.is_null()) return finish(scan_result::aborted, hare_);
        const value h2 = read(h1.payload());
        if (h2.is_null()) return finish(scan_result::aborted, h1.payload());
        tort_ = read(tort_).payload();
        hare_ = h2.payload();
        if (tort_ == hare_) {
          phase_ = phase::measure;
          walker_ = tort_;
          loop_ = 0;
        }
        return;
      }
      case phase::measure: {
        if (walker_ == i_) {
          phase_ = phase::predecessor;
          walker_ = i_;
          return;
        }
        walker_ = read(walker_).payload();
        ++loop_;
        if (walker_ == tort_) {
          phase_ = phase::lead;
          walker_ = i_;
          lead_ = 0;
        }
        return;
      }
      case phase::lead: {
        walker_ = read(walker_).payload();
        if (++lead_ == loop_) {
          phase_ = phase::align;
          hare_ = i_;
          tail_ = 0;
        }
        return;
      }
      case phase::align: {
        if (walker_ == hare_) {
          tort_ = walker_;
          return finish(scan_result::intersection, last_);
        }
        last_ = walker_;
        walker_ = read(walker_).payload();
        hare_ = read(hare_).payload();
        ++tail_;
        if (walker_ == hare_) {
          tort_ = walker_;
          return finish(scan_result::intersection, last_);
        }
        return;
      }
      case phase::predecessor: {
        const element_t nx = read(walker_).payload();
        if (nx == i_) {
          tort_ = i_;
          return finish(scan_result::on_loop, walker_);
        }
        walker_ = nx;
        return;
      }
      case phase::done:
        return;
    }
  }

  void run() {
    while (!done()) step();
  }

 private:
  enum class phase { meet, measure, lead, align, predecessor, done };

  value read(element_t x) {
    ++reads_;
    return t_.read(x);
  }

  void finish(scan_result r, element_t boundary) {
    result_ = r;
    boundary_ = boundary;
    phase_ = phase::done;
  }

  Table& t_;
  element_t i_;
  element_t tort_;
  element_t hare_;
  element_t walker_ = 0;
  element_t last_ = 0;
  element_t boundary_ = 0;
  std::size_t loop_ = 0;
  std::size_t lead_ = 0;
  std::size_t tail_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t reads_ = 0;
  phase phase_ = phase::meet;
  scan_result result_ = scan_result::running;
  space_meter::scope_token words_;
};

struct find_intersection_result {
  scan_result kind = scan_result::running;
  // Intersection for sigma tails, predecessor of i on loops, null-holder on paths.
  element_t element = 0;
  element_t boundary = 0;
  std::size_t loop_length = 0;
  std::size_t tail_length = 0;
  std::uint64_t steps = 0;
};

template <permutation_oracle Table>
find_intersection_result find_intersection(Table& t, element_t i) {
  intersection_scan<Table> s(t, i);
  s.run();
  find_intersection_result r;
  r.kind = s.result();
  r.boundary = s.boundary();
  r.element = s.result() == scan_result::intersection ? s.intersection() : s.boundary();
  r.loop_length = s.loop_length();
  r.tail_length = s.tail_length();
  r.steps = s.steps();
  return r;
}

// Read-only view of a table that runs the intersection scan alongside, `ratio`
// scan steps ahead of each staircase read. Once the scan has found a sigma's
// end, the view reports the end's value as an untyped null, so the staircase
// sees the tail and loop as a path.
template <permutation_oracle Table>
class interleaved_view {
 public:
  interleaved_view(Table& t, element_t i, unsigned ratio) : t_(t), scan_(t, i), ratio_(ratio) {
    if (ratio_ == 0) throw contract_violation("interleave ratio must be positive");
  }

  std::size_t size() const { return t_.size(); }
  space_meter& meter() { return t_.meter(); }

  value read(element_t x) {
    ++staircase_reads_;
    for (unsigned k = 0; k < ratio_ && !scan_.done(); ++k) {
      scan_.step();
      if (scan_.done()) check_in_time();
    }
    const value v = t_.read(x);
    if (scan_.done() && scan_.result() == scan_result::intersection && x == scan_.boundary()) {
      return value::null(0);
    }
    return v;
  }

  void finish_scan() { scan_.run(); }

  const intersection_scan<Table>& scan() const { return scan_; }
  std::uint64_t staircase_reads() const { return staircase_reads_; }
  std::uint64_t steps_while_interleaved() const { return interleaved_steps_; }

 private:
  // The staircase must not have been able to read the end's value yet: that
  // takes tail + loop reads, the current one included.
  void check_in_time() {
    interleaved_steps_ = scan_.steps();
    if (scan_.result() == scan_result::intersection &&
        staircase_reads_ > scan_.tail_length() + scan_.loop_length()) {
      throw contract_violation("intersection scan finished after the staircase could pass the end");
    }
  }

  Table& t_;
  intersection_scan<Table> scan_;
  unsigned ratio_;
  std::uint64_t staircase_reads_ = 0;
  std::uint64_t interleaved_steps_ = 0;
};

struct aug_result {
  std::optional<ptr_node> ptr;
  // Predecessor of i on a cycle/loop, end of the path or sigma otherwise.
  element_t a = 0;
  scan_result kind = scan_result::running;
  std::uint64_t staircase_reads = 0;
  std::uint64_t scan_steps = 0;
  std::uint64_t scan_reads = 0;
};

template <permutation_oracle Table>
aug_result best_b_staircase_aug(Table& t, std::size_t b, element_t i, unsigned ratio = 4) {
  interleaved_view<Table> view(t, i, ratio);
  blocal_walker<interleaved_view<Table>> walker(view, b);
  aug_result out;
  auto p = walker.best_staircase(i);
  if (p) {
    view.finish_scan();
    out.a = view.scan().boundary();
    out.kind = view.scan().result();
    out.ptr.emplace(std::move(*p));
  }
  out.staircase_reads = view.staircase_reads();
  out.scan_steps = view.scan().steps();
  out.scan_reads = view.scan().reads();
  return out;
}

// pi(x) <- null_type for the predecessor x of y on its cycle. Returns x.
template <mutable_permutation Table>
element_t cut_before(Table& t, element_t y, std::uint32_t null_type) {
  auto locals = t.meter().scope(1);
  element_t x = y;
  for (;;) {
    const value v = t.read(x);
    if (v.is_null()) throw contract_violation("cut_before: element is not on a cycle");
    if (v.payload() == y) break;
    x = v.payload();
  }
  t.write(x, value::null(null_type));
  return x;
}

// Rank-typed nulls: ranks 0..R map to types 1..R+1.
inline std::uint32_t blocal_null_types(std::size_t n, std::size_t b) {
  const auto r = max_proper_level(n, b);
  return static_cast<std::uint32_t>(std::min<std::size_t>(n, std::size_t{r} + 1));
}

struct blocal_invert_stats : invert_stats {
  std::uint64_t aug_calls = 0;
  std::uint64_t staircase_reads = 0;
  std::uint64_t scan_reads = 0;
  std::uint64_t scan_steps = 0;
  // Largest scan_steps / staircase_reads over one call.
  double max_step_ratio = 0.0;
};

template <mutable_permutation Table>
class blocal_inverter {
 public:
  blocal_inverter(Table& t, std::size_t b, std::uint32_t null_types, unsigned ratio = 4)
      : t_(t), b_(b), k_(null_types), ratio_(ratio) {}

  const blocal_invert_stats& stats() const { return stats_; }

  void process(element_t i) {
    auto locals = t_.meter().scope(5);
    auto aug = run_aug(i);
    if (!aug.ptr) return;
    const ptr_node& p = *aug.ptr;
    const element_t a = aug.a;
    const value va = t_.read(a);
    if (va == value::of(i) && min_range3(t_, i, p.e, a) == p.e) {
      const element_t ip = get_end(p);
      const element_t ap = t_.read(ip).payload();
      invert_cycle(t_, i);
      ++stats_.cycles_inverted;
      if (ip > i) {
        t_.write(ap, value::null(1));
        auto path = run_aug(ip);
        if (!path.ptr) throw contract_violation("cut before the new leader left it without a rank");
        t_.write(ap, value::null(rank_type(path.ptr->r)));
        ++stats_.cuts;
      }
      return;
    }
    value w = va;
    if (va.is_element()) {
      auto at_c = run_aug(va.payload());
      if (!at_c.ptr) throw contract_violation("sigma intersection has no best staircase");
      w = value::null(at_c.ptr->r);
    }
    if (w == value::null(p.r)) {
      t_.write(a, value::of(i));
      auto trial = run_aug(i);
      if (!trial.ptr || min_range(t_, i, i) != trial.ptr->e) {
        t_.write(a, va);
      } else {
        ++stats_.fixes;
      }
    }
  }

 private:
  aug_result run_aug(element_t i) {
    auto r = best_b_staircase_aug(t_, b_, i, ratio_);
    ++stats_.aug_calls;
    stats_.staircase_reads += r.staircase_reads;
    stats_.scan_reads += r.scan_reads;
    stats_.scan_steps += r.scan_steps;
    if (r.staircase_reads > 0) {
      stats_.max_step_ratio =
          std::max(stats_.max_step_ratio,
                   static_cast<double>(r.scan_steps) / static_cast<double>(r.staircase_reads));
    }
    return r;
  }

  std::uint32_t rank_type(unsigned level) const {
    if (level > k_) throw contract_violation("rank does not fit the null types");
    return level;
  }

  Table& t_;
  std::size_t b_;
  std::uint32_t k_;
  unsigned ratio_;
  blocal_invert_stats stats_;
};

template <class Observer = no_observer>
blocal_invert_stats run_invert_blocal(perm_table& t, const bparams& bp, Observer&& after_process = {},
                                      unsigned ratio = 4) {
  const auto k = blocal_null_types(t.size(), bp.b);
  t.enable_nulls(k, 2);
  blocal_invert_stats stats;
  {
    auto registry_words = t.meter().scope(t.registry().words());
    auto loop = t.meter().scope(1);
    blocal_inverter<perm_table> inv(t, bp.b, k, ratio);
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
