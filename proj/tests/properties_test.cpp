#include <gtest/gtest.h>

#include "caba/json_export.hpp"
#include "fixtures.hpp"
#include "suites.hpp"

using namespace caba;

namespace {

constexpr uint64_t kSeed = 20240601;

void expect_clean(const suites::Outcome& o, size_t at_least) {
  EXPECT_GE(o.cases, at_least);
  EXPECT_TRUE(o.ok()) << suites::summary(o);
}

}  // namespace

TEST(Invariants, FullImpliesPartial) { expect_clean(suites::full_implies_partial(kSeed, 1000), 1000); }

TEST(Invariants, ConstraintSplitConditions) { expect_clean(suites::constraint_split_conditions(kSeed + 1, 1000), 1000); }

TEST(Invariants, SplitStepsPreserveEquivalence) { expect_clean(suites::split_steps_preserve(kSeed + 2, 1000), 1000); }

TEST(Invariants, SplittingOutputCompliant) { expect_clean(suites::splitting_output(kSeed + 3, 1000), 1000); }

TEST(Invariants, ProjectSoundness) { expect_clean(suites::project_soundness(kSeed + 4, 1000), 1000); }

TEST(Invariants, NegatePartitions) { expect_clean(suites::negate_partitions(kSeed + 5, 1000), 1000); }

TEST(Invariants, RenamingInvariance) { expect_clean(suites::renaming_invariance(kSeed + 6, 1000), 1000); }

// A short run here; the acceptance binary does the long one.
TEST(GroundOracle, RandomBoundedFrameworks) { expect_clean(suites::ground_cross_check(kSeed, 30), 30); }

TEST(Properties, NormalisePreservesGrounding) {
  auto u = parse_universe("0..8");
  for (uint64_t s = 0; s < 100; ++s) {
    gen::Rng r(kSeed + s);
    auto f = parse(gen::bounded_framework(r));
    auto g1 = ground(f, u);
    auto g2 = ground(normalise(f), u);
    EXPECT_EQ(g1.rules, g2.rules) << serialise(f);
  }
}

TEST(Properties, SerialiseRoundTrip) {
  for (uint64_t s = 0; s < 200; ++s) {
    gen::Rng r(kSeed + s);
    auto f = parse(s % 2 ? gen::bounded_framework(r) : gen::open_framework(r));
    EXPECT_EQ(parse(serialise(f)), f);
  }
}

TEST(Properties, CommonInstancesSymmetric) {
  gen::Rng r(kSeed);
  for (int k = 0; k < 50; ++k) {
    auto args = build_mgcarg_strict(parse(gen::small_framework(r)));
    for (const auto& a : args)
      for (const auto& b : args) EXPECT_EQ(common_instances(a, b), common_instances(b, a));
  }
}

TEST(Properties, SetEquivMatchesGroundingOnBoundedSets) {
  auto u = parse_universe("0..8");
  for (uint64_t s = 0; s < 60; ++s) {
    gen::Rng r(kSeed + s);
    auto f = parse(gen::bounded_framework(r));
    auto m = build_mgcarg_strict(f);
    if (m.size() < 2) continue;
    ArgumentSet dropped(m.begin() + 1, m.end());
    bool same = detail::instances(m, u) == detail::instances(dropped, u);
    EXPECT_EQ(static_cast<bool>(set_equiv(m, dropped)), same) << serialise(f);
  }
}

TEST(Properties, StructuredArgumentsRoundTrip) {
  for (uint64_t s = 0; s < 50; ++s) {
    gen::Rng r(kSeed + s);
    auto args = build_mgcarg_strict(parse(gen::open_framework(r)));
    auto back = json::arguments_from_json(json::Json::parse(json::to_json(args).dump()));
    ASSERT_EQ(back.size(), args.size());
    for (size_t i = 0; i < args.size(); ++i) {
      EXPECT_EQ(back[i], args[i]);
      EXPECT_EQ(back[i].id, args[i].id);
    }
  }
}
