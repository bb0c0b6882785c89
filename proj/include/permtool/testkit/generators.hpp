#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "permtool/errors.hpp"
#include "permtool/perm_table.hpp"

namespace permtool::testkit {

// succ[i-1] is pi(i), or nothing for the last element of a path.
using partial_fn = std::vector<std::optional<element_t>>;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 plus a portable bounded draw (the standard distributions are
// allowed to differ between library implementations).
class rng {
 public:
  explicit rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw generation_error("rng::below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = eng_();
      if (x < limit) return x % bound;
    }
  }

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[below(k)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<element_t> identity_values(std::size_t n) {
  std::vector<element_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<element_t>(i + 1);
  return v;
}

inline std::vector<element_t> random_perm(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw generation_error("random_perm: n must be positive");
  auto v = identity_values(n);
  rng r(seed);
  r.shuffle(v);
  return v;
}

// i -> i+1, n -> 1.
inline std::vector<element_t> rotation(std::size_t n) {
  if (n == 0) throw generation_error("rotation: n must be positive");
  std::vector<element_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<element_t>((i + 1) % n + 1);
  return v;
}

// A random single cycle through all of [n] (uniform over cyclic orders).
inline std::vector<element_t> random_cycle(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw generation_error("random_cycle: n must be positive");
  auto order = identity_values(n);
  rng r(seed);
  r.shuffle(order);
  std::vector<element_t> v(n);
  for (std::size_t k = 0; k < n; ++k) v[order[k] - 1] = order[(k + 1) % n];
  return v;
}

inline partial_fn to_partial(const std::vector<element_t>& perm) {
  partial_fn f(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) f[i] = perm[i];
  return f;
}

// A path over all of [n] in random order. `order` receives the walk.
inline partial_fn random_path(std::size_t n, std::uint64_t seed,
                              std::vector<element_t>* order_out = nullptr) {
  if (n == 0) throw generation_error("random_path: n must be positive");
  auto order = identity_values(n);
  rng r(seed);
  r.shuffle(order);
  partial_fn f(n);
  for (std::size_t k = 0; k + 1 < n; ++k) f[order[k] - 1] = order[k + 1];
  if (order_out) *order_out = order;
  return f;
}

// The walk given explicitly: order[0] -> order[1] -> ... -> null.
inline partial_fn path_of(const std::vector<element_t>& order) {
  partial_fn f(order.size());
  for (std::size_t k = 0; k + 1 < order.size(); ++k) f[order[k] - 1] = order[k + 1];
  return f;
}

struct sigma_shape {
  partial_fn fn;
  std::vector<element_t> tail;  // start first, last element points at the intersection
  std::vector<element_t> loop;  // intersection first, end last
};

// A sigma with `tail_len` >= 1 tail elements and `loop_len` >= 1 loop elements
// on [tail_len + loop_len], labels shuffled by `seed`.
inline sigma_shape random_sigma(std::size_t tail_len, std::size_t loop_len, std::uint64_t seed) {
  if (tail_len == 0 || loop_len == 0) throw generation_error("sigma: tail and loop must be non-empty");
  const std::size_t n = tail_len + loop_len;
  auto labels = identity_values(n);
  rng r(seed);
  r.shuffle(labels);
  sigma_shape s;
  s.tail.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(tail_len));
  s.loop.assign(labels.begin() + static_cast<std::ptrdiff_t>(tail_len), labels.end());
  s.fn.assign(n, std::nullopt);
  for (std::size_t k = 0; k + 1 < tail_len; ++k) s.fn[s.tail[k] - 1] = s.tail[k + 1];
  s.fn[s.tail.back() - 1] = s.loop.front();
  for (std::size_t k = 0; k < loop_len; ++k) s.fn[s.loop[k] - 1] = s.loop[(k + 1) % loop_len];
  return s;
}

// Visits every permutation of [n] in lexicographic order.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  auto v = identity_values(n);
  do {
    f(static_cast<const std::vector<element_t>&>(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

inline std::vector<std::vector<element_t>> exhaustive(std::size_t n) {
  if (n == 0 || n > 10) throw generation_error("exhaustive: need 1 <= n <= 10");
  std::vector<std::vector<element_t>> out;
  for_each_permutation(n, [&](const auto& p) { out.push_back(p); });
  return out;
}

// Table holding f, with nulls enabled when f has undefined values. Undefined
// slots become null_type.
inline perm_table make_table(const partial_fn& f, std::uint32_t k, std::uint32_t c,
                             std::uint32_t null_type = 1) {
  bool partial = false;
  std::vector<element_t> base(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i]) {
      base[i] = *f[i];
    } else {
      partial = true;
    }
  }
  if (!partial) {
    perm_table t(std::move(base));
    if (k != 0) t.enable_nulls(k, c);
    return t;
  }
  // Park each undefined slot on a distinct element nobody maps to (there are
  // at least as many of those as undefined slots), then write the nulls.
  std::vector<bool> hit(f.size() + 1, false);
  for (const auto& v : f) {
    if (v) hit[*v] = true;
  }
  std::vector<element_t> spare;
  for (std::size_t x = 1; x <= f.size(); ++x) {
    if (!hit[x]) spare.push_back(static_cast<element_t>(x));
  }
  std::vector<element_t> plain(f.size());
  std::size_t next_spare = 0;
  for (std::size_t i = 0; i < f.size(); ++i) plain[i] = f[i] ? *f[i] : spare[next_spare++];
  perm_table t(std::move(plain));
  if (k == 0) throw generation_error("make_table: nulls need k >= 1");
  t.enable_nulls(k, c);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) t.write(static_cast<element_t>(i + 1), value::null(null_type));
  }
  t.reset_stats();
  return t;
}

}  // namespace permtool::testkit
