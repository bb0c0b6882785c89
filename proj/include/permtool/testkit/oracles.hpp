#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permtool/errors.hpp"
#include "permtool/leaders_logspace.hpp"
#include "permtool/testkit/generators.hpp"

// Reference implementations that trade space for obviousness. Everything here
// works on explicit lists and may use O(n) words or more.
namespace permtool::testkit {

// ---------------------------------------------------------------------------
// components

enum class component_kind { cycle, path, sigma };

struct component {
  component_kind kind = component_kind::cycle;
  // cycle: starts at its minimum; path: start .. end; sigma: start .. end, with
  // order[tail] the intersection.
  std::vector<element_t> order;
  std::size_t tail = 0;

  element_t start() const { return order.front(); }
  element_t end() const { return order.back(); }
  std::vector<element_t> loop() const {
    return {order.begin() + static_cast<std::ptrdiff_t>(tail), order.end()};
  }
};

// Splits a partial function made of cycles, paths and sigmas (each with a single
// element of in-degree zero). Anything else is a contract violation.
inline std::vector<component> decompose(const partial_fn& f) {
  const std::size_t n = f.size();
  std::vector<int> indeg(n + 1, 0);
  for (const auto& v : f) {
    if (v) ++indeg[*v];
  }
  std::vector<int> seen(n + 1, -1);
  std::vector<component> out;
  for (element_t s = 1; s <= n; ++s) {
    if (indeg[s] != 0) continue;
    component c;
    const int id = static_cast<int>(out.size());
    element_t x = s;
    for (;;) {
      if (seen[x] == id) {
        c.kind = component_kind::sigma;
        c.tail = static_cast<std::size_t>(std::find(c.order.begin(), c.order.end(), x) - c.order.begin());
        break;
      }
      if (seen[x] != -1) throw contract_violation("decompose: two tails share a component");
      seen[x] = id;
      c.order.push_back(x);
      if (!f[x - 1]) {
        c.kind = component_kind::path;
        break;
      }
      x = *f[x - 1];
    }
    out.push_back(std::move(c));
  }
  for (element_t s = 1; s <= n; ++s) {
    if (seen[s] != -1) continue;
    component c;
    const int id = static_cast<int>(out.size());
    element_t x = s;
    do {
      if (seen[x] != -1 || !f[x - 1]) throw contract_violation("decompose: malformed cycle");
      seen[x] = id;
      c.order.push_back(x);
      x = *f[x - 1];
    } while (x != s);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<component> cycles_of(const std::vector<element_t>& perm) {
  return decompose(to_partial(perm));
}

// Current content of a table, nulls as undefined values.
inline partial_fn contents(const perm_table& t) {
  partial_fn f(t.size());
  for (std::size_t i = 1; i <= t.size(); ++i) {
    const value v = t.peek(static_cast<element_t>(i));
    if (v.is_element()) f[i - 1] = v.payload();
  }
  return f;
}

// ---------------------------------------------------------------------------
// levels

// E_1 ⊇ E_2 ⊇ ... for one cycle or path, listed in walk order, with pi_r as
// "next in the list" (wrapping on cycles, undefined past the end of a path).
class level_sets {
 public:
  level_sets(std::vector<element_t> order, bool cyclic, std::size_t b) : cyclic_(cyclic), b_(b) {
    if (b == 0) throw contract_violation("level_sets: b must be positive");
    element_t top = 0;
    for (auto x : order) top = std::max(top, x);
    top_ = top;
    push(std::move(order));
    for (;;) {
      const auto& cur = levels_.back();
      if (cur.empty()) break;
      if (!cyclic_ && cur.size() == 1) break;
      std::vector<element_t> next;
      const auto m = static_cast<long>(cur.size());
      for (long idx = 0; idx < m; ++idx) {
        bool keep = true;
        for (long k = 1; k <= static_cast<long>(b_) && keep; ++k) {
          for (long dir : {-1L, 1L}) {
            long j = idx + dir * k;
            if (cyclic_) {
              j = ((j % m) + m) % m;
            } else if (j < 0 || j >= m) {
              continue;
            }
            if (!(cur[idx] < cur[j])) keep = false;
          }
        }
        if (keep) next.push_back(cur[idx]);
      }
      if (cyclic_ && next.empty()) break;
      push(std::move(next));
    }
  }

  bool cyclic() const { return cyclic_; }
  std::size_t b() const { return b_; }
  // Number of materialised levels; later ones are empty (cycle) or repeat the
  // last singleton (path).
  std::size_t depth() const { return levels_.size(); }

  const std::vector<element_t>& level(std::size_t r) const {
    static const std::vector<element_t> empty;
    if (r == 0) throw contract_violation("level_sets: levels start at 1");
    if (r <= levels_.size()) return levels_[r - 1];
    return cyclic_ ? empty : levels_.back();
  }

  std::size_t size_at(std::size_t r) const { return level(r).size(); }

  bool contains(std::size_t r, element_t x) const { return index_of(r, x).has_value(); }

  // pi_r^k(x) for x in E_r; k may be negative.
  std::optional<element_t> step(std::size_t r, element_t x, long k) const {
    const auto idx = index_of(r, x);
    if (!idx) throw contract_violation("level_sets::step: element not on level " + std::to_string(r));
    const auto& lv = level(r);
    const auto m = static_cast<long>(lv.size());
    long j = static_cast<long>(*idx) + k;
    if (cyclic_) {
      j = ((j % m) + m) % m;
    } else if (j < 0 || j >= m) {
      return std::nullopt;
    }
    return lv[static_cast<std::size_t>(j)];
  }

  // Largest t with |E_t| > b (0 if none).
  std::size_t top_proper_level() const {
    std::size_t t = 0;
    for (std::size_t r = 1; r <= levels_.size(); ++r) {
      if (levels_[r - 1].size() > b_) t = r;
    }
    return t;
  }

  // Elements of the level-1 walk from a to c inclusive (a before c; on a cycle
  // the walk may wrap, a == c meaning just a).
  std::vector<element_t> walk(element_t a, element_t c) const {
    const auto& base = levels_.front();
    const auto m = base.size();
    std::size_t ia = *index_of(1, a);
    const std::size_t ic = *index_of(1, c);
    std::vector<element_t> out;
    for (;;) {
      out.push_back(base[ia]);
      if (ia == ic) break;
      ia = ia + 1;
      if (ia == m) {
        if (!cyclic_) throw contract_violation("level_sets::walk: ran off the path");
        ia = 0;
      }
    }
    return out;
  }

 private:
  void push(std::vector<element_t> lv) {
    std::vector<std::int32_t> pos(top_ + 1, -1);
    for (std::size_t k = 0; k < lv.size(); ++k) pos[lv[k]] = static_cast<std::int32_t>(k);
    levels_.push_back(std::move(lv));
    pos_.push_back(std::move(pos));
  }

  std::optional<std::size_t> index_of(std::size_t r, element_t x) const {
    if (r == 0) throw contract_violation("level_sets: levels start at 1");
    const std::size_t lr = r <= levels_.size() ? r : (cyclic_ ? 0 : levels_.size());
    if (lr == 0 || x > top_) return std::nullopt;
    const auto p = pos_[lr - 1][x];
    if (p < 0) return std::nullopt;
    return static_cast<std::size_t>(p);
  }

  bool cyclic_;
  std::size_t b_;
  element_t top_ = 0;
  std::vector<std::vector<element_t>> levels_;
  std::vector<std::vector<std::int32_t>> pos_;
};

inline level_sets ref_levels(const component& c, std::size_t b) {
  if (c.kind == component_kind::sigma) throw contract_violation("ref_levels: sigma has no levels");
  return level_sets(c.order, c.kind == component_kind::cycle, b);
}

// Levels of the loop of a sigma, viewed as a cycle.
inline level_sets loop_levels(const component& c, std::size_t b) {
  return level_sets(c.loop(), true, b);
}

// The sigma with its end cut off, viewed as a path.
inline level_sets sigma_as_path(const component& c, std::size_t b) {
  return level_sets(c.order, false, b);
}

// The test of the b-local-minimum lemma: m equals the minimum of the level-1
// range pi_r^{-b}(m) .. pi_r^b(m), truncated at path ends.
inline bool min_of_neighbourhood(const level_sets& L, std::size_t r, element_t m) {
  const auto lo = L.step(r, m, -static_cast<long>(L.b()));
  const auto hi = L.step(r, m, static_cast<long>(L.b()));
  const auto& base = L.level(1);
  const element_t from = lo ? *lo : base.front();
  const element_t to = hi ? *hi : base.back();
  element_t best = m;
  for (auto x : L.walk(from, m)) best = std::min(best, x);
  for (auto x : L.walk(m, to)) best = std::min(best, x);
  return best == m;
}

// ---------------------------------------------------------------------------
// staircases

struct ref_staircase {
  std::vector<element_t> left;   // i_1 .. i_{r+1}
  std::vector<element_t> right;  // j_{r+1} .. j_1
  std::size_t size = 0;

  element_t start() const { return left.front(); }
  element_t middle() const { return left.back(); }
  element_t end() const { return right.back(); }
};

// Almost b-staircase of size r from i (nothing if some step is undefined).
inline std::optional<ref_staircase> almost_staircase(const level_sets& L, element_t i, std::size_t r) {
  if (!L.contains(1, i)) return std::nullopt;
  const long b = static_cast<long>(L.b());
  ref_staircase s;
  s.size = r;
  s.left.push_back(i);
  for (std::size_t k = 1; k <= r; ++k) {
    const element_t cur = s.left.back();
    if (!L.contains(k, cur)) return std::nullopt;
    const auto nx = L.step(k, cur, b);
    if (!nx) return std::nullopt;
    s.left.push_back(*nx);
  }
  s.right.push_back(s.left.back());
  for (std::size_t k = r; k >= 1; --k) {
    const auto nx = L.step(k, s.right.back(), b);
    if (!nx) return std::nullopt;
    s.right.push_back(*nx);
  }
  return s;
}

// b-staircase of size r from i: an almost staircase whose middle is on level r+1.
inline std::optional<ref_staircase> staircase(const level_sets& L, element_t i, std::size_t r) {
  auto s = almost_staircase(L, i, r);
  if (!s || !L.contains(r + 1, s->middle())) return std::nullopt;
  return s;
}

inline bool proper_almost_exists(const level_sets& L, element_t i, std::size_t r) {
  return L.size_at(r) > L.b() && almost_staircase(L, i, r).has_value();
}

// Best b-staircase from i straight from the definitions: the smallest t with a
// staircase of size t and no proper almost staircase of size t+1. Sizes are
// tried in increasing order and the search stops at the first almost staircase
// that is proper but not a staircase.
inline std::optional<ref_staircase> ref_best_staircase(const level_sets& L, element_t i) {
  for (std::size_t t = 0;; ++t) {
    auto s = staircase(L, i, t);
    if (!s) return std::nullopt;
    if (!proper_almost_exists(L, i, t + 1)) return s;
    if (!staircase(L, i, t + 1)) return std::nullopt;
    if (t > L.depth() + 1) throw contract_violation("ref_best_staircase: runaway size");
  }
}

// Half staircase of size r from i: i_{r+1} = pi_r(i_r) and a right part of r-1 levels.
inline bool half_staircase_exists(const level_sets& L, element_t i, std::size_t r) {
  if (!L.contains(1, i)) return false;
  const long b = static_cast<long>(L.b());
  element_t cur = i;
  for (std::size_t k = 1; k <= r; ++k) {
    if (!L.contains(k, cur)) return false;
    const auto nx = L.step(k, cur, b);
    if (!nx) return false;
    cur = *nx;
  }
  for (std::size_t k = r - 1; k >= 1; --k) {
    const auto nx = L.step(k, cur, b);
    if (!nx) return false;
    cur = *nx;
  }
  return true;
}

inline std::optional<std::size_t> ref_rank(const level_sets& L, element_t i) {
  auto s = ref_best_staircase(L, i);
  if (!s) return std::nullopt;
  return s->size;
}

inline std::optional<extended_rank> ref_extended_rank(const level_sets& L, element_t i) {
  auto s = ref_best_staircase(L, i);
  if (!s) return std::nullopt;
  return extended_rank{static_cast<unsigned>(s->size), half_staircase_exists(L, i, s->size + 1)};
}

// Number of elements of maximal (defined) rank on a path.
inline std::size_t count_outstanding(const level_sets& L) {
  std::optional<std::size_t> best;
  std::size_t count = 0;
  for (auto x : L.level(1)) {
    const auto r = ref_rank(L, x);
    if (!r) continue;
    if (!best || *r > *best) {
      best = r;
      count = 1;
    } else if (*r == *best) {
      ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// leaders

// pi_1^{-b}( ... pi_t^{-b}(m) ... ) with m the cycle minimum and t the top
// proper level.
inline element_t ref_leader(const level_sets& L) {
  if (!L.cyclic()) throw contract_violation("ref_leader: cycles only");
  const auto& base = L.level(1);
  element_t x = *std::min_element(base.begin(), base.end());
  for (std::size_t k = L.top_proper_level(); k >= 1; --k) {
    x = *L.step(k, x, -static_cast<long>(L.b()));
  }
  return x;
}

// All elements whose best b-staircase has the cycle minimum as its middle.
inline std::vector<element_t> ref_leaders_by_definition(const level_sets& L) {
  const auto& base = L.level(1);
  const element_t m = *std::min_element(base.begin(), base.end());
  std::vector<element_t> out;
  for (auto x : base) {
    auto s = ref_best_staircase(L, x);
    if (s && s->middle() == m) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<element_t> ref_leaders(const std::vector<element_t>& perm, std::size_t b) {
  std::vector<element_t> out;
  for (const auto& c : cycles_of(perm)) out.push_back(ref_leader(ref_levels(c, b)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<element_t> cycle_minima(const std::vector<element_t>& perm) {
  std::vector<element_t> out;
  for (const auto& c : cycles_of(perm)) out.push_back(*std::min_element(c.order.begin(), c.order.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// inverse and permute

inline std::vector<element_t> ref_inverse(const std::vector<element_t>& perm) {
  std::vector<element_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i] - 1] = static_cast<element_t>(i + 1);
  return inv;
}

// A[pi(i)] = a_i.
template <class T>
std::vector<T> ref_permute(const std::vector<T>& a, const std::vector<element_t>& perm) {
  std::vector<T> out(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i] - 1] = a[i];
  return out;
}

}  // namespace permtool::testkit
