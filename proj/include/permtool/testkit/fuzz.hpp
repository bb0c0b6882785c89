#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permtool/perm_table.hpp"
#include "permtool/testkit/generators.hpp"

namespace permtool::testkit {

struct fuzz_outcome {
  std::size_t ops = 0;
  std::size_t rejected = 0;  // writes refused with multiplicity_error, as predicted
  std::size_t mismatches = 0;
  std::optional<std::string> first_mismatch;
};

// Random writes of plain values and typed nulls against a shadow map of the
// logical content. The shadow predicts which writes must be refused (a plain
// value x <= k already held by c slots); every slot is compared after each op.
inline fuzz_outcome registry_fuzz(std::size_t n, std::uint32_t k, std::uint32_t c, std::size_t ops,
                                  std::uint64_t seed) {
  rng r(seed);
  // Start from a permutation so enable_nulls sees multiplicity 1.
  const auto start = random_perm(n, derive_seed(seed, 1));
  perm_table t(start);
  t.enable_nulls(k, c);
  std::vector<value> shadow(n);
  for (std::size_t i = 0; i < n; ++i) shadow[i] = value::of(start[i]);

  fuzz_outcome out;
  auto note = [&](const std::string& what) {
    ++out.mismatches;
    if (!out.first_mismatch) out.first_mismatch = "op " + std::to_string(out.ops) + ": " + what;
  };
  auto plain_count = [&](element_t x) {
    std::uint32_t cnt = 0;
    for (const auto& v : shadow) cnt += v == value::of(x);
    return cnt;
  };

  for (std::size_t op = 0; op < ops; ++op) {
    out.ops = op + 1;
    const auto i = static_cast<element_t>(r.between(1, n));
    value v;
    // Small values are where the registry does its work, so favour them.
    switch (r.below(3)) {
      case 0: v = value::null(static_cast<std::uint32_t>(r.between(1, k))); break;
      case 1: v = value::of(static_cast<element_t>(r.between(1, k))); break;
      default: v = value::of(static_cast<element_t>(r.between(1, n))); break;
    }
    bool expect_reject = false;
    if (v.is_element() && v.payload() <= k && shadow[i - 1] != v) expect_reject = plain_count(v.payload()) >= c;
    bool rejected = false;
    try {
      t.write(i, v);
    } catch (const multiplicity_error&) {
      rejected = true;
    }
    if (rejected != expect_reject) {
      note(std::string("write ") + (rejected ? "refused" : "accepted") + " against the shadow's prediction");
    }
    if (rejected) {
      ++out.rejected;
    } else {
      shadow[i - 1] = v;
    }
    for (std::size_t j = 1; j <= n; ++j) {
      const auto got = t.peek(static_cast<element_t>(j));
      if (got != shadow[j - 1]) {
        note("slot " + std::to_string(j));
        break;
      }
    }
  }
  return out;
}

}  // namespace permtool::testkit
