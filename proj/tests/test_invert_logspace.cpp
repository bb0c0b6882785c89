#include <gtest/gtest.h>

#include "permtool/invert_logspace.hpp"
#include "permtool/testkit/audit.hpp"
#include "permtool/testkit/fixtures.hpp"
#include "permtool/testkit/generators.hpp"
#include "permtool/testkit/oracles.hpp"

using namespace permtool;
using namespace permtool::testkit;

namespace {

void invert_and_audit(const std::vector<element_t>& p) {
  perm_table t(p);
  logspace_audit audit(p);
  run_invert_logspace(t, [&](element_t i) { audit.check(t, i); });
  EXPECT_EQ(audit.checks(), p.size());
  EXPECT_EQ(t.null_count(), 0u);
  EXPECT_EQ(t.snapshot(), ref_inverse(p));
}

}  // namespace

TEST(InvertCycle, Examples) {
  perm_table fixed({1, 3, 2});
  invert_cycle(fixed, 1);
  EXPECT_EQ(fixed.snapshot(), (std::vector<element_t>{1, 3, 2}));
  perm_table t({2, 3, 1});
  invert_cycle(t, 1);
  EXPECT_EQ(t.snapshot(), (std::vector<element_t>{3, 1, 2}));
}

TEST(InvertCycle, PathThrowsAndRestores) {
  const auto f = path_of({4, 1, 2, 3});
  auto t = make_table(f, 2, 2);
  EXPECT_THROW(invert_cycle(t, 1), traversal_error);
  EXPECT_EQ(contents(t), f);
}

TEST(PathEnd, Examples) {
  perm_table c({2, 3, 1});
  EXPECT_EQ(path_end(c, 2), std::nullopt);
  auto t = make_table(path_of({4, 1, 2, 3}), 1, 1);
  EXPECT_EQ(path_end(t, 1), std::optional<element_t>(3));
  EXPECT_EQ(path_end(t, 3), std::optional<element_t>(3));
  EXPECT_EQ(path_end(t, 4), std::optional<element_t>(3));
}

TEST(ProcessInvert, HardCycleTrace) {
  perm_table t({4, 1, 2, 3});
  const auto k = logspace_null_types(4);
  t.enable_nulls(k, 2);
  logspace_inverter<perm_table> inv(t, k);
  inv.process(1);
  EXPECT_EQ(t.snapshot(), (std::vector<element_t>{4, 1, 2, 3}));
  inv.process(2);
  // 4 -> 1 -> 2 -> 3 -> null with the extended rank (1, false) of 4
  const std::uint32_t enc = extended_rank{1, false}.encode();
  EXPECT_EQ(t.peek(4), value::of(1));
  EXPECT_EQ(t.peek(1), value::of(2));
  EXPECT_EQ(t.peek(2), value::of(3));
  EXPECT_EQ(t.peek(3), value::null(enc));
  inv.process(3);
  EXPECT_EQ(t.peek(3), value::null(enc));
  inv.process(4);
  EXPECT_EQ(t.snapshot(), (std::vector<element_t>{2, 3, 4, 1}));
  EXPECT_EQ(inv.stats().cycles_inverted, 1u);
  EXPECT_EQ(inv.stats().cuts, 1u);
  EXPECT_EQ(inv.stats().fixes, 1u);
}

TEST(ExtendedRank, Encoding) {
  EXPECT_EQ((extended_rank{0, false}.encode()), 1u);
  EXPECT_EQ((extended_rank{0, true}.encode()), 2u);
  EXPECT_EQ((extended_rank{3, true}.encode()), 8u);
  EXPECT_LT((extended_rank{1, true}), (extended_rank{2, false}));
  EXPECT_LT((extended_rank{1, false}), (extended_rank{1, true}));
}

TEST(RunInvertLogspace, Identity) {
  auto t = perm_table::identity(6);
  const auto st = run_invert_logspace(t);
  EXPECT_EQ(t.snapshot(), identity_values(6));
  EXPECT_EQ(st.cycles_inverted, 6u);
}

TEST(RunInvertLogspace, ShowcaseCycle) { invert_and_audit(showcase_cycle()); }

TEST(RunInvertLogspace, ExhaustiveWithAudit) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<element_t>& p) { invert_and_audit(p); });
  }
}

TEST(RunInvertLogspace, RandomWithAudit) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed * 37 % 200;
    invert_and_audit(seed % 3 == 0 ? random_cycle(n, seed) : random_perm(n, seed));
  }
}

TEST(RunInvertLogspace, NullTypesFit) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 500 + seed * 311;
    perm_table t(random_cycle(n, seed));
    const auto st = run_invert_logspace(t);
    EXPECT_EQ(st.null_types, logspace_null_types(n));
    EXPECT_LE(st.null_types, 2 * ceil_log2(n) + 2);
    EXPECT_FALSE(t.registry().enabled());
  }
}

TEST(Metering, LogspaceInversionBalanced) {
  perm_table t(random_perm(3000, 2));
  (void)run_invert_logspace(t);
  EXPECT_EQ(t.meter().live(), 0u);
  EXPECT_FALSE(t.meter().faulted());
  EXPECT_GE(t.meter().peak(), elbow_capacity(3000));
}

TEST(Oracle, ExtendedRanksOnPath) {
  const level_sets L({4, 1, 2, 3}, false, 1);
  EXPECT_EQ(ref_extended_rank(L, 4), (std::optional<extended_rank>(extended_rank{1, false})));
  EXPECT_EQ(ref_extended_rank(L, 3), (std::optional<extended_rank>(extended_rank{0, false})));
  EXPECT_FALSE(ref_extended_rank(L, 1));
  EXPECT_EQ(ref_extended_rank(L, 2), (std::optional<extended_rank>(extended_rank{0, true})));
  EXPECT_EQ(count_outstanding(L), 1u);
  const level_sets one({5}, false, 1);
  EXPECT_EQ(ref_extended_rank(one, 5), (std::optional<extended_rank>(extended_rank{0, false})));
  EXPECT_EQ(count_outstanding(one), 1u);
}
