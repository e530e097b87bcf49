#include <gtest/gtest.h>

#include <random>

#include "fca/closure.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fca;
using fca::testkit::fixture;

namespace {
AttributeSet fig_set(std::initializer_list<std::size_t> idx) { return AttributeSet(4, idx); }
}  // namespace

TEST(Lectic, Examples) {
  // a=0, b=1, c=2
  EXPECT_TRUE(lectic_less(AttributeSet(3, {0}), AttributeSet(3, {0, 2})));
  EXPECT_TRUE(lectic_less(AttributeSet(3, {1}), AttributeSet(3, {0})));
  EXPECT_FALSE(lectic_less(AttributeSet(3, {0}), AttributeSet(3, {1})));
  EXPECT_FALSE(lectic_less(AttributeSet(3, {1}), AttributeSet(3, {1})));
}

TEST(Lectic, AgreesWithOracleOnAllPairs) {
  for (testkit::Mask a = 0; a < 32; ++a)
    for (testkit::Mask b = 0; b < 32; ++b)
      EXPECT_EQ(lectic_less(testkit::attrs_from_mask(a, 5), testkit::attrs_from_mask(b, 5)),
                testkit::brute_lectic_less(a, b));
}

TEST(NextClosure, FullSetHasNoSuccessor) {
  const auto fig = fixture("fig.cxt");
  ContextClosure op(fig);
  EXPECT_EQ(next_closure(fig.all_attributes(), op), std::nullopt);
}

TEST(NextClosure, FigFirstAndCount) {
  const auto fig = fixture("fig.cxt");
  ContextClosure op(fig);
  LecticCursor cursor(op);
  auto first = cursor.next();
  ASSERT_TRUE(first);
  EXPECT_EQ(*first, fig_set({}));
  int count = 1;
  while (cursor.next()) ++count;
  EXPECT_EQ(count, 9);
  EXPECT_EQ(cursor.next(), std::nullopt);
}

TEST(NextClosure, ResultIsClosedAndLecticallyNext) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ctx = testkit::random_context(rng, 7, 6);
    const auto k = testkit::raw(ctx);
    const auto intents = testkit::brute_intents(k);
    ContextClosure op(ctx);
    for (auto it = intents.begin(); it != intents.end(); ++it) {
      const auto got = next_closure(testkit::attrs_from_mask(*it, ctx.num_attributes()), op);
      // smallest closed set lectically above *it
      std::optional<testkit::Mask> want;
      for (auto c : intents)
        if (testkit::brute_lectic_less(*it, c) && (!want || testkit::brute_lectic_less(c, *want))) want = c;
      ASSERT_EQ(got.has_value(), want.has_value());
      if (got) EXPECT_EQ(testkit::to_mask(*got), *want);
    }
  }
}

TEST(Concepts, FigNine) {
  const auto fig = fixture("fig.cxt");
  const auto concepts = enumerate_concepts(fig);
  EXPECT_EQ(concepts.size(), 9u);
  const FormalConcept bc{ObjectSet(4, {2, 3}), fig_set({1, 2})};
  EXPECT_NE(std::find(concepts.begin(), concepts.end(), bc), concepts.end());
  for (const auto& c : concepts) {
    EXPECT_EQ(fig.derive_objects(c.extent), c.intent);
    EXPECT_EQ(fig.derive_attrs(c.intent), c.extent);
  }
}

TEST(Concepts, TstSeven) { EXPECT_EQ(enumerate_concepts(fixture("tst.cxt")).size(), 7u); }

TEST(Concepts, NoObjectsGivesOneConcept) {
  const auto ctx = FormalContext::empty({"a", "b", "c"});
  const auto concepts = enumerate_concepts(ctx);
  ASSERT_EQ(concepts.size(), 1u);
  EXPECT_TRUE(concepts[0].extent.empty());
  EXPECT_TRUE(concepts[0].intent.is_full());
}

TEST(Concepts, EmptyUniverse) {
  const auto concepts = enumerate_concepts(FormalContext::empty({}));
  ASSERT_EQ(concepts.size(), 1u);
}

TEST(Concepts, RandomMatchesBruteForceInLecticOrder) {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ctx = testkit::random_context(rng, 10, 8);
    const auto concepts = enumerate_concepts(ctx);
    std::set<testkit::Mask> got;
    for (std::size_t i = 0; i < concepts.size(); ++i) {
      got.insert(testkit::to_mask(concepts[i].intent));
      if (i > 0) EXPECT_TRUE(lectic_less(concepts[i - 1].intent, concepts[i].intent));
    }
    EXPECT_EQ(got.size(), concepts.size());
    EXPECT_EQ(got, testkit::brute_intents(testkit::raw(ctx)));
  }
}
