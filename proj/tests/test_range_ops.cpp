#include <gtest/gtest.h>

#include "permtool/range_ops.hpp"
#include "permtool/testkit/generators.hpp"
#include "permtool/testkit/oracles.hpp"

using namespace permtool;
using namespace permtool::testkit;

namespace {

perm_table rot5() { return perm_table(rotation(5)); }

// 4 -> 1 -> 2 -> 3 -> null
perm_table path4123() { return make_table(path_of({4, 1, 2, 3}), 1, 1); }

}  // namespace

TEST(MinRange, IdentityFullCycle) {
  auto t = perm_table::identity(4);
  for (element_t i = 1; i <= 4; ++i) EXPECT_EQ(min_range(t, i, i), i);
}

TEST(MinRange, Rotation) {
  auto t = rot5();
  EXPECT_EQ(min_range(t, 3, 5), 3u);
  EXPECT_EQ(min_range(t, 1, 1), 1u);
  EXPECT_EQ(min_range(t, 4, 2), 1u);
  EXPECT_EQ(t.stats().reads, 2u + 5u + 3u);
}

TEST(MinRange, OpenEndsOnPath) {
  auto t = path4123();
  EXPECT_EQ(min_range(t, endpoint(2), std::nullopt), 2u);
  EXPECT_EQ(min_range(t, std::nullopt, endpoint(1), endpoint(4)), 1u);
  EXPECT_THROW(min_range(t, std::nullopt, endpoint(1)), contract_violation);
  EXPECT_THROW(min_range(t, 2, 4), traversal_error);
  EXPECT_THROW(min_range(t, 2, 2), traversal_error);
}

TEST(MinRange, OpenEndOnCycleThrows) {
  auto t = rot5();
  EXPECT_THROW(min_range(t, endpoint(2), std::nullopt), traversal_error);
}

TEST(MinRange3, Examples) {
  auto id = perm_table::identity(3);
  EXPECT_EQ(min_range3(id, 2, 2, 2), 2u);
  auto t = rot5();
  EXPECT_EQ(min_range3(t, 2, 3, 5), 2u);
  EXPECT_EQ(min_range3(t, 5, 1, 2), 1u);
}

TEST(Dist, Examples) {
  auto t = rot5();
  EXPECT_EQ(dist(t, 1, 2), 1u);
  EXPECT_EQ(dist(t, 2, 1), 4u);
  EXPECT_EQ(dist(t, 3, 3), 5u);
  auto id = perm_table::identity(3);
  EXPECT_EQ(dist(id, 2, 2), 1u);
  auto p = path4123();
  EXPECT_THROW(dist(p, 2, 4), traversal_error);
  perm_table two({2, 1, 3});
  EXPECT_THROW(dist(two, 1, 3), traversal_error);
}

TEST(MinRange, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 17;
    const auto p = random_perm(n, seed);
    perm_table t(p);
    rng r(seed + 100);
    for (int q = 0; q < 20; ++q) {
      const auto a = static_cast<element_t>(r.between(1, n));
      // some element on a's cycle
      element_t b = a;
      for (auto k = r.below(n); k > 0; --k) b = p[b - 1];
      element_t lo = a, x = a;
      do {
        x = p[x - 1];
        lo = std::min(lo, x);
      } while (x != b);
      EXPECT_EQ(min_range(t, a, b), lo);
    }
  }
}

TEST(MinRange, MetersItsLocals) {
  auto t = rot5();
  (void)min_range(t, 1, 1);
  EXPECT_EQ(t.meter().peak(), 3u);
  EXPECT_EQ(t.meter().live(), 0u);
}
