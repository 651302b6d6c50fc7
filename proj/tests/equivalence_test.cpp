#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace caba;
using fx::arg;

namespace {

ArgumentSet fa_mgc() { return build_mgcarg_strict(fx::corpus("fa.caba")); }

}  // namespace

TEST(CommonInstances, WorkedExampleWithDuplicatedAssumption) {
  auto a = arg("a", "p(X)", "X > 3, Y < 0", {"a(X)"});
  auto b = arg("b", "p(U)", "Z > 0, U > 1", {"a(Z)", "a(U)"});
  EXPECT_TRUE(common_instances(a, b));
  EXPECT_TRUE(common_instances(b, a));
}

TEST(CommonInstances, Self) {
  for (const auto& a : fa_mgc()) EXPECT_TRUE(common_instances(a, a)) << a.id;
}

TEST(CommonInstances, NestedRegions) {
  EXPECT_TRUE(common_instances(arg("1", "p(X)", "X > 0"), arg("2", "p(X)", "X > 3")));
}

TEST(CommonInstances, DifferentShapes) {
  EXPECT_FALSE(common_instances(arg("1", "p(X)", "X > 0"), arg("2", "p(X)", "X > 0", {"a(X)"})));
  EXPECT_FALSE(common_instances(arg("1", "p(X)", "X > 0"), arg("2", "q(X)", "X > 0")));
  EXPECT_FALSE(common_instances(arg("1", "p(X)", "X > 3"), arg("2", "p(X)", "X < 3")));
}

TEST(InstanceDisjoint, CpCqMgcarg) { EXPECT_TRUE(instance_disjoint(build_mgcarg_strict(fx::corpus("cpcq.caba")))); }

TEST(InstanceDisjoint, NestedPair) {
  EXPECT_FALSE(instance_disjoint({arg("1", "p(X)", "X > 0"), arg("2", "p(X)", "X > 3")}));
}

TEST(InstanceDisjoint, Singleton) { EXPECT_TRUE(instance_disjoint({arg("1", "p(X)", "X > 0")})); }

TEST(NonOverlapping, CpCqMgcargOverlaps) {
  auto f = fx::corpus("cpcq.caba");
  EXPECT_FALSE(non_overlapping(f, build_mgcarg_strict(f)));
}

TEST(NonOverlapping, NoPartialAttacks) {
  auto f = fx::corpus("fa.caba");
  EXPECT_TRUE(non_overlapping(f, {arg("α3", "s(Y)", "Y > 0"), arg("α5", "cb(X)", "X < 10")}));
}

TEST(SetEquiv, CaseSplitOfAlphaTwo) {
  auto m = fa_mgc();
  ArgumentSet n;
  for (const auto& a : m)
    if (!fx::equiv(a, arg("", "p(X)", "Y < 10", {"a(Y,X)"}))) n.push_back(a);
  ASSERT_EQ(n.size(), 6u);
  n.push_back(arg("α2,1", "p(X)", "Y < 10, Y >= 5", {"a(Y,X)"}));
  n.push_back(arg("α2,2,1", "p(X)", "Y < 10, Y < 5, X > 3", {"a(Y,X)"}));
  n.push_back(arg("α2,2,2", "p(X)", "Y < 10, Y < 5, X <= 3", {"a(Y,X)"}));
  EXPECT_TRUE(set_equiv(m, n));

  n.pop_back();
  auto r = set_equiv(m, n);
  EXPECT_FALSE(r);
  EXPECT_NE(r.witness.find("only"), std::string::npos);
}

TEST(SetEquiv, Renaming) {
  for (const auto& a : fa_mgc()) {
    std::map<std::string, std::string> m;
    for (const auto& v : a.vars()) m[v] = v + "_r";
    EXPECT_TRUE(set_equiv({a}, {rename(a, m)})) << a.id;
  }
}

TEST(SetEquiv, AssumptionOrderInsideTuple) {
  EXPECT_FALSE(fx::equiv(arg("1", "p(X)", "Y < 10", {"a(Y,X)"}), arg("2", "p(X)", "Y < 10", {"a(X,Y)"})));
}

TEST(SetEquiv, CollapsedAssumptions) {
  // {a(X), a(Y)} with X=Y denotes the same instances as {a(X)}
  EXPECT_TRUE(fx::equiv(arg("1", "p(X)", "X = Y", {"a(X)", "a(Y)"}), arg("2", "p(X)", "", {"a(X)"})));
  EXPECT_FALSE(fx::equiv(arg("1", "p(X)", "", {"a(X)", "a(Y)"}), arg("2", "p(X)", "", {"a(X)"})));
}

TEST(SetEquiv, AgreesWithGrounding) {
  auto u = parse_universe("0..6");
  ArgumentSet x{arg("1", "p(X)", "X >= 2, X <= 4"), arg("2", "p(X)", "X > 4, X <= 6")};
  ArgumentSet y{arg("3", "p(X)", "X >= 2, X <= 6")};
  EXPECT_TRUE(set_equiv(x, y));
  EXPECT_EQ(ground_instances(x, u), ground_instances(y, u));
}

TEST(SetEquiv, EquivalenceRelation) {
  ArgumentSet a{arg("1", "p(X)", "X > 0")};
  ArgumentSet b{arg("2", "p(X)", "X > 0, X < 5"), arg("3", "p(X)", "X >= 5")};
  ArgumentSet c{arg("4", "p(Y)", "Y > 0, Y <= 1"), arg("5", "p(Y)", "Y > 1")};
  EXPECT_TRUE(set_equiv(a, a));
  EXPECT_TRUE(set_equiv(a, b));
  EXPECT_TRUE(set_equiv(b, a));
  EXPECT_TRUE(set_equiv(b, c));
  EXPECT_TRUE(set_equiv(a, c));
}

TEST(SetEquiv, CardinalityLimit) {
  auto big = arg("1", "p(X)", "", {"a(X)", "a(Y)", "a(Z)", "a(U)", "a(W)"});
  EXPECT_THROW(set_equiv({big}, {big}), CardinalityLimit);
}
