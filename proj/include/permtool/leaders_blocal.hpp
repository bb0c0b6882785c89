#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "permtool/perm_table.hpp"
#include "permtool/range_ops.hpp"

namespace permtool {

// Neighbourhood size b and the level bound t_max = ceil(1/eps).
struct bparams {
  double epsilon = 0.5;
  std::size_t b = 1;
  unsigned t_max = 2;

  // b = ceil(n^eps), unless `b_override` is non-zero.
  static bparams derive(std::size_t n, double epsilon, std::size_t b_override = 0) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw contract_violation("epsilon must lie in (0, 1]");
    bparams p;
    p.epsilon = epsilon;
    p.t_max = static_cast<unsigned>(std::ceil(1.0 / epsilon - 1e-12));
    if (b_override != 0) {
      p.b = b_override;
    } else {
      const double raw = std::pow(static_cast<double>(n), epsilon);
      const double near = std::round(raw);
      p.b = static_cast<std::size_t>(std::abs(raw - near) < 1e-9 ? near : std::ceil(raw));
      p.b = std::max<std::size_t>(p.b, 1);
    }
    return p;
  }

  // Fixed b, epsilon left at its default; used by tests and the b = 1 reduction.
  static bparams fixed(std::size_t b) {
    if (b == 0) throw contract_violation("b must be positive");
    bparams p;
    p.b = b;
    return p;
  }
};

// Largest level R such that a level-R set may still exceed b elements, using
// |E_1| <= n and |E_{r+1}| <= ceil(|E_r| / (b+1)). Ranks never exceed R.
inline unsigned max_proper_level(std::size_t n, std::size_t b) {
  unsigned r = 0;
  std::size_t s = n;
  while (s > b) {
    ++r;
    s = (s + b) / (b + 1);
  }
  return r;
}

// Recursive pointer of level r at element e of E_r. For r >= 2, x sits at e and
// z at pi_{r-1}^b(e); both are level r-1 pointers. The y pointer is not stored
// here: one scratch per level lives in the walker.
struct ptr_node {
  unsigned r = 1;
  element_t e = 0;
  std::unique_ptr<ptr_node> x;
  std::unique_ptr<ptr_node> z;
  space_meter::charge words;

  static constexpr std::size_t words_per_node = 2;

  ptr_node(space_meter* m, element_t elem) : e(elem), words(m, words_per_node) {}
  ptr_node(space_meter* m, unsigned level, element_t elem, std::unique_ptr<ptr_node> px,
           std::unique_ptr<ptr_node> pz)
      : r(level), e(elem), x(std::move(px)), z(std::move(pz)), words(m, words_per_node) {}

  ptr_node(const ptr_node& o)
      : r(o.r),
        e(o.e),
        x(o.x ? std::make_unique<ptr_node>(*o.x) : nullptr),
        z(o.z ? std::make_unique<ptr_node>(*o.z) : nullptr),
        words(o.words) {}
  ptr_node& operator=(const ptr_node& o) {
    if (this != &o) assign(o);
    return *this;
  }
  ptr_node(ptr_node&&) noexcept = default;
  ptr_node& operator=(ptr_node&&) noexcept = default;

  // Copies o into this structure, reusing existing children where possible.
  void assign(const ptr_node& o) {
    r = o.r;
    e = o.e;
    copy_child(x, o.x);
    copy_child(z, o.z);
  }

  // Number of nodes in this structure.
  std::size_t node_count() const {
    return 1 + (x ? x->node_count() : 0) + (z ? z->node_count() : 0);
  }

 private:
  static void copy_child(std::unique_ptr<ptr_node>& dst, const std::unique_ptr<ptr_node>& src) {
    if (!src) {
      dst.reset();
    } else if (dst) {
      dst->assign(*src);
    } else {
      dst = std::make_unique<ptr_node>(*src);
    }
  }
};

// p.GetEnd(): follow z down to level 1.
inline element_t get_end(const ptr_node& p) {
  const ptr_node* q = &p;
  while (q->z) q = q->z.get();
  return q->e;
}

// Owns the per-level scratch pointers and runs Advance / BestbStaircase over any
// table-like oracle.
template <permutation_oracle Table>
class blocal_walker {
 public:
  blocal_walker(Table& t, std::size_t b) : t_(t), b_(b) {
    if (b_ == 0) throw contract_violation("b must be positive");
  }

  Table& table() { return t_; }
  std::size_t b() const { return b_; }
  space_meter* meter() { return &t_.meter(); }

  // Moves p from e to pi_r(e). Aborts when a level-1 step meets a null.
  [[nodiscard]] step advance(ptr_node& p) {
    if (p.r == 1) {
      const value v = t_.read(p.e);
      if (v.is_null()) return step::aborted;
      p.e = v.payload();
      return step::ok;
    }
    auto frame = t_.meter().scope(2);
    std::unique_ptr<ptr_node>& y = scratch(p.r - 1);
    if (y) {
      y->assign(*p.z);
    } else {
      y = std::make_unique<ptr_node>(*p.z);
    }
    for (std::size_t j = 0; j < b_; ++j) {
      if (advance(*p.z) == step::aborted) return step::aborted;
    }
    while (y->e != min_range3(t_, p.x->e, y->e, p.z->e)) {
      if (advance(*p.x) == step::aborted) return step::aborted;
      if (advance(*y) == step::aborted) return step::aborted;
      if (advance(*p.z) == step::aborted) return step::aborted;
    }
    std::swap(p.x, y);
    p.e = p.x->e;
    return step::ok;
  }

  // Right part of the best b-staircase from i (middle at .e), or nothing.
  std::optional<ptr_node> best_staircase(element_t i) {
    auto locals = t_.meter().scope(4);
    ptr_node p(meter(), i);
    element_t x = i;
    for (std::size_t j = 0; j < b_; ++j) {
      const value v = t_.read(x);
      if (v.is_null() || v.payload() == i) return p;
      x = v.payload();
    }
    for (;;) {
      ptr_node g(p);
      std::optional<ptr_node> mp;
      element_t me = p.e;
      for (std::size_t j = 1; j <= 2 * b_; ++j) {
        if (advance(p) == step::aborted) return g;
        if (j <= b_ && p.e == g.e) return g;
        if (j == b_) mp.emplace(p);
        me = std::min(me, p.e);
      }
      if (mp->e != me) return std::nullopt;
      const element_t e = mp->e;
      const unsigned r = p.r + 1;
      auto px = std::make_unique<ptr_node>(std::move(*mp));
      auto pz = std::make_unique<ptr_node>(std::move(p));
      p = ptr_node(meter(), r, e, std::move(px), std::move(pz));
    }
  }

  // Scratch pointers currently held (one per level at most).
  std::size_t scratch_levels() const {
    return static_cast<std::size_t>(
        std::count_if(scratch_.begin(), scratch_.end(), [](const auto& s) { return s != nullptr; }));
  }

 private:
  std::unique_ptr<ptr_node>& scratch(unsigned level) {
    if (scratch_.size() < level) scratch_.resize(level);
    return scratch_[level - 1];
  }

  Table& t_;
  std::size_t b_;
  std::vector<std::unique_ptr<ptr_node>> scratch_;
};

template <permutation_oracle Table>
std::optional<ptr_node> best_b_staircase(Table& t, std::size_t b, element_t i) {
  blocal_walker<Table> w(t, b);
  return w.best_staircase(i);
}

// i leads iff its best b-staircase exists and ends its climb at the cycle minimum.
template <permutation_oracle Table>
bool blocal_process(blocal_walker<Table>& w, element_t i) {
  auto p = w.best_staircase(i);
  return p && min_range(w.table(), i, i) == p->e;
}

template <permutation_oracle Table, class Report>
void for_each_leader_blocal(Table& t, const bparams& bp, Report&& report) {
  auto loop = t.meter().scope(1);
  blocal_walker<Table> w(t, bp.b);
  const auto n = static_cast<element_t>(t.size());
  for (element_t i = 1; i <= n; ++i) {
    if (blocal_process(w, i)) report(i);
  }
}

}  // namespace permtool
