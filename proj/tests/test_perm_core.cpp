#include <gtest/gtest.h>

#include "permtool/perm_table.hpp"
#include "permtool/testkit/fuzz.hpp"

using namespace permtool;

TEST(PermTable, IdentityRead) {
  auto t = perm_table::identity(5);
  EXPECT_EQ(t.read(3), value::of(3));
  EXPECT_EQ(t.stats().reads, 1u);
  EXPECT_EQ(t.stats().writes, 0u);
}

TEST(PermTable, ReadYourWriteNull) {
  auto t = perm_table::identity(6);
  t.enable_nulls(5, 1);
  t.write(2, value::null(5));
  EXPECT_EQ(t.read(2), value::null(5));
  EXPECT_EQ(t.null_count(), 1u);
}

TEST(PermTable, NullDoesNotShadowPlainValue) {
  perm_table t({4, 1, 2, 3});
  t.enable_nulls(2, 1);
  t.write(3, value::null(2));
  EXPECT_EQ(t.read(3), value::null(2));
  // index 4 physically holds 3; index 3 held 2 and now holds null_2
  EXPECT_EQ(t.read(2), value::of(1));
  t.write(1, value::of(2));
  EXPECT_EQ(t.read(1), value::of(2));
  EXPECT_EQ(t.read(3), value::null(2));
}

TEST(PermTable, RoundTripEveryValue) {
  const std::uint32_t n = 6, k = 3;
  for (element_t i = 1; i <= n; ++i) {
    for (std::uint32_t v = 1; v <= n; ++v) {
      auto t = perm_table::identity(n);
      t.enable_nulls(k, n);
      t.write(i, value::of(v));
      EXPECT_EQ(t.read(i), value::of(v));
    }
    for (std::uint32_t x = 1; x <= k; ++x) {
      auto t = perm_table::identity(n);
      t.enable_nulls(k, 1);
      t.write(i, value::null(x));
      EXPECT_EQ(t.read(i), value::null(x));
    }
  }
}

TEST(PermTable, MultiplicityOverflow) {
  auto t = perm_table::identity(4);
  t.enable_nulls(2, 1);
  // 2 is already the value of index 2
  EXPECT_THROW(t.write(3, value::of(2)), multiplicity_error);
  EXPECT_EQ(t.read(3), value::of(3));
  t.write(2, value::null(1));
  t.write(3, value::of(2));
  EXPECT_THROW(t.write(4, value::of(2)), multiplicity_error);
}

TEST(PermTable, RewritingSameValueIsNoOverflow) {
  auto t = perm_table::identity(4);
  t.enable_nulls(2, 1);
  EXPECT_NO_THROW(t.write(2, value::of(2)));
}

TEST(PermTable, IndexOutOfRange) {
  auto t = perm_table::identity(3);
  EXPECT_THROW(t.read(0), contract_violation);
  EXPECT_THROW(t.read(4), contract_violation);
  EXPECT_THROW(t.write(4, value::of(1)), contract_violation);
}

TEST(PermTable, UnregisteredNullType) {
  auto t = perm_table::identity(5);
  EXPECT_THROW(t.write(1, value::null(1)), contract_violation);
  t.enable_nulls(2, 1);
  EXPECT_THROW(t.write(1, value::null(3)), contract_violation);
}

TEST(PermTable, DisableRequiresNullFree) {
  auto t = perm_table::identity(5);
  t.enable_nulls(2, 2);
  t.write(4, value::null(2));
  EXPECT_THROW(t.disable_nulls(), contract_violation);
  t.write(4, value::of(4));
  EXPECT_NO_THROW(t.disable_nulls());
  EXPECT_TRUE(t.is_permutation());
}

TEST(PermTable, EnableRejectsBadParameters) {
  auto t = perm_table::identity(3);
  EXPECT_THROW(t.enable_nulls(4, 1), contract_violation);
  EXPECT_THROW(t.enable_nulls(0, 1), contract_violation);
  EXPECT_THROW(t.enable_nulls(2, 0), contract_violation);
}

TEST(PermTable, RegistryWordsAreCk) {
  auto t = perm_table::identity(10);
  t.enable_nulls(4, 2);
  // c*k bucket slots plus k counters
  EXPECT_EQ(t.registry().words(), 4u * 2u + 4u);
}

TEST(PermTable, PeekIsNotCounted) {
  perm_table t({2, 3, 1});
  (void)t.peek(1);
  (void)t.snapshot();
  EXPECT_EQ(t.stats().reads, 0u);
}

TEST(RegistryFuzz, MatchesShadowMap) {
  for (std::uint32_t c : {1u, 2u}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto out = testkit::registry_fuzz(12, 5, c, 2000, seed);
      EXPECT_EQ(out.mismatches, 0u) << out.first_mismatch.value_or("");
      EXPECT_GT(out.rejected, 0u);
    }
  }
}

TEST(SpaceMeter, NestedScopesPeak) {
  space_meter m;
  {
    auto a = m.scope(3);
    {
      auto b = m.scope(2);
      EXPECT_EQ(m.live(), 5u);
    }
    EXPECT_EQ(m.live(), 3u);
  }
  EXPECT_EQ(m.live(), 0u);
  EXPECT_EQ(m.peak(), 5u);
  EXPECT_FALSE(m.faulted());
}

TEST(SpaceMeter, OutOfOrderRelease) {
  space_meter m;
  auto a = m.scope(3);
  auto b = m.scope(2);
  EXPECT_THROW(a.release(), metering_error);
  b.release();
  a.release();
  EXPECT_THROW(a.release(), metering_error);
}

TEST(SpaceMeter, OutOfOrderDestructionFaults) {
  space_meter m;
  {
    std::optional<space_meter::scope_token> a(m.scope(1));
    auto b = m.scope(1);
    a.reset();
  }
  EXPECT_TRUE(m.faulted());
}

TEST(SpaceMeter, ChargesCopyAndMove) {
  space_meter m;
  {
    space_meter::charge c1(&m, 2);
    space_meter::charge c2 = c1;
    EXPECT_EQ(m.live(), 4u);
    space_meter::charge c3 = std::move(c2);
    EXPECT_EQ(m.live(), 4u);
  }
  EXPECT_EQ(m.live(), 0u);
  EXPECT_EQ(m.peak(), 4u);
}

TEST(SpaceMeter, ResetWhileLive) {
  space_meter m;
  auto a = m.scope(1);
  EXPECT_THROW(m.reset(), metering_error);
}

TEST(Value, Accessors) {
  EXPECT_TRUE(value::null(3).is_null());
  EXPECT_EQ(value::null(3).null_type(), 3u);
  EXPECT_EQ(value::of(7).element(), 7u);
  EXPECT_THROW((void)value::of(7).null_type(), contract_violation);
  EXPECT_THROW((void)value::null(1).element(), contract_violation);
  EXPECT_NE(value::of(2), value::null(2));
}
