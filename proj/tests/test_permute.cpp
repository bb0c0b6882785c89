#include <gtest/gtest.h>

#include <string>

#include "permtool/permute.hpp"
#include "permtool/testkit/generators.hpp"
#include "permtool/testkit/oracles.hpp"

using namespace permtool;
using namespace permtool::testkit;

namespace {

std::vector<leader_algo> all_algos() {
  return {naive_algo{}, logspace_algo{}, blocal_algo{bparams::fixed(1)}, blocal_algo{bparams::fixed(2)},
          blocal_algo{bparams::fixed(3)}};
}

std::vector<std::string> abc() { return {"a", "b", "c"}; }

}  // namespace

TEST(RotateCycle, FixedPointUnchanged) {
  perm_table t({1, 3, 2});
  auto a = abc();
  rotate_cycle(std::span(a), t, 1);
  EXPECT_EQ(a, abc());
}

TEST(RotateCycle, ThreeCycle) {
  perm_table t({2, 3, 1});
  auto a = abc();
  rotate_cycle(std::span(a), t, 1);
  EXPECT_EQ(a, (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RotateCycle, PathThrows) {
  auto t = make_table(path_of({1, 2, 3}), 1, 1);
  auto a = abc();
  EXPECT_THROW(rotate_cycle(std::span(a), t, 1), traversal_error);
}

TEST(Permute, Examples) {
  for (const auto& algo : all_algos()) {
    perm_table t({2, 3, 1});
    auto a = abc();
    permute(std::span(a), t, algo);
    EXPECT_EQ(a, (std::vector<std::string>{"c", "a", "b"})) << algo_name(algo);
    auto id = perm_table::identity(3);
    auto b = abc();
    permute(std::span(b), id, algo);
    EXPECT_EQ(b, abc());
  }
}

TEST(Permute, LengthMismatch) {
  perm_table t({2, 1});
  auto a = abc();
  EXPECT_THROW(permute(std::span(a), t, naive_algo{}), contract_violation);
}

TEST(Permute, TableIsOnlyRead) {
  const auto p = random_perm(300, 9);
  perm_table t(p);
  auto a = identity_values(300);
  permute(std::span(a), t, logspace_algo{});
  EXPECT_EQ(t.stats().writes, 0u);
  EXPECT_EQ(t.snapshot(), p);
}

TEST(Permute, ExhaustiveAgainstReference) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<element_t>& p) {
      std::vector<int> a(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = static_cast<int>(10 * k + 7);
      const auto want = ref_permute(a, p);
      for (const auto& algo : all_algos()) {
        perm_table t(p);
        auto got = a;
        permute(std::span(got), t, algo);
        ASSERT_EQ(got, want) << algo_name(algo);
      }
    });
  }
}

TEST(Permute, RandomLarger) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 100 + seed * 97;
    const auto p = random_perm(n, seed);
    auto a = identity_values(n);
    const auto want = ref_permute(a, p);
    for (const auto& algo : {leader_algo{logspace_algo{}}, leader_algo{blocal_algo{bparams::derive(n, 0.5)}}}) {
      perm_table t(p);
      auto got = a;
      permute(std::span(got), t, algo);
      EXPECT_EQ(got, want);
    }
  }
}
