#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace caba;

namespace {

GroundAtom ga(const std::string& s) {
  Atom a = parse_atom(s);
  GroundAtom out{a.pred, {}};
  for (const auto& t : a.args) out.args.push_back(t.constant);
  return out;
}

std::set<std::string> rendered(const GroundAbaFramework& g) {
  std::set<std::string> out;
  for (const auto& r : g.rules) out.insert(to_string(r));
  return out;
}

std::set<GroundAtom> claims(const std::set<GroundArgument>& e) {
  std::set<GroundAtom> out;
  for (const auto& a : e) out.insert(a.claim);
  return out;
}

}  // namespace

TEST(Universe, Parsing) {
  EXPECT_EQ(parse_universe("0..3").size(), 4u);
  auto u = parse_universe("3, 1/2, 0, 3");
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[1], Rational(1, 2));
  EXPECT_THROW(parse_universe("3..1"), ValidationError);
  EXPECT_THROW(parse_universe("a,b"), ValidationError);
}

TEST(Ground, FrameworkB) {
  auto g = ground(fx::corpus("aba_b.caba"), parse_universe("1..2"));
  EXPECT_EQ(rendered(g), (std::set<std::string>{"p(1) <- a(1).", "q(1) <- b(1).", "r(1).", "p(2) <- a(2).",
                                                "q(2) <- b(2)."}));
  EXPECT_EQ(g.assumptions, (std::set<GroundAtom>{ga("a(1)"), ga("a(2)"), ga("b(1)"), ga("b(2)")}));
  EXPECT_EQ(g.contrary.at(ga("a(2)")), ga("q(2)"));
  EXPECT_EQ(g.contrary.at(ga("b(1)")), ga("r(1)"));
}

TEST(Ground, FrameworkFAAtZero) {
  auto f = fx::corpus("fa.caba");
  size_t expected = 0;
  for (const auto& r : f.rules) {
    std::map<std::string, LinearTerm> zero;
    for (const auto& v : r.vars()) zero[v] = LinearTerm(Rational(0));
    if (eval_ground(substitute(r.constraints, zero))) ++expected;
  }
  auto g = ground(f, parse_universe("0"));
  EXPECT_EQ(g.rules.size(), expected);
  EXPECT_EQ(expected, 3u);
}

TEST(Ground, NoRules) {
  auto g = ground(parse("assumption a(X) contrary c(X).\n"), parse_universe("0..2"));
  EXPECT_TRUE(g.rules.empty());
  EXPECT_EQ(g.assumptions.size(), 3u);
}

TEST(Ground, IsFlatAba) {
  auto g = ground(fx::corpus("fa.caba"), parse_universe("0..4"));
  for (const auto& r : g.rules) EXPECT_FALSE(g.assumptions.count(r.head));
  for (const auto& [a, c] : g.contrary) EXPECT_FALSE(g.assumptions.count(c));
}

TEST(Classical, FrameworkBArguments) {
  auto g = ground(fx::corpus("aba_b.caba"), parse_universe("1..2"));
  EXPECT_EQ(classical_arguments(g).size(), 9u);
}

TEST(Classical, FactsOnly) {
  auto g = ground(parse("p(1).\nq(2).\n"), parse_universe("1..2"));
  auto args = classical_arguments(g);
  ASSERT_EQ(args.size(), 2u);
  for (const auto& a : args) EXPECT_TRUE(a.assumptions.empty());
}

TEST(Classical, TightArgumentForS) {
  auto g = ground(fx::corpus("fa.caba"), parse_universe("0,4"));
  EXPECT_TRUE(classical_arguments(g).count(GroundArgument{ga("s(4)"), {}}));
}

TEST(Classical, FrameworkBStable) {
  auto g = ground(fx::corpus("aba_b.caba"), parse_universe("1..2"));
  auto st = classical_extensions(g, Semantics::Stable);
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(claims(st[0]), (std::set<GroundAtom>{ga("r(1)"), ga("p(1)"), ga("a(1)"), ga("q(2)"), ga("b(2)")}));
  auto ad = classical_extensions(g, Semantics::Admissible);
  EXPECT_NE(std::find(ad.begin(), ad.end(), st[0]), ad.end());
}

TEST(Classical, NoAttacksMeansEverything) {
  auto g = ground(parse("assumption a(X) contrary c(X).\np(X) <- a(X).\n"), parse_universe("0..1"));
  auto st = classical_extensions(g, Semantics::Stable);
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0], classical_arguments(g));
}

TEST(Classical, ArgumentCap) {
  auto g = ground(fx::corpus("fa.caba"), parse_universe("0..12"));
  EXPECT_THROW(classical_arguments(g, 10), UniverseTooLarge);
}

TEST(CrossCheck, FrameworkBAllModes) {
  auto f = fx::corpus("aba_b.caba");
  for (auto m : {CheckMode::Arguments, CheckMode::Attacks, CheckMode::Extension}) {
    auto r = cross_check(f, parse_universe("1..2"), m);
    EXPECT_EQ(r.verdict, Verdict::ExactMatch) << to_string(r);
  }
  auto r = cross_check(f, parse_universe("1..2"), CheckMode::Arguments);
  EXPECT_EQ(r.native_count, 9u);
  EXPECT_EQ(r.classical_count, 9u);
}

TEST(CrossCheck, BoundedFA) {
  auto f = fx::corpus("fa_bounded.caba");
  auto r = cross_check(f, parse_universe("0..12"), CheckMode::Extension);
  EXPECT_EQ(r.verdict, Verdict::ExactMatch) << to_string(r);
}

TEST(CrossCheck, CorruptedExtension) {
  auto f = fx::corpus("aba_b.caba");
  auto u = parse_universe("1..2");
  auto basis = argument_splitting(f, build_mgcarg_strict(f)).args;
  auto ext = enumerate_extensions(f, basis, Semantics::Stable);
  ASSERT_EQ(ext.size(), 1u);
  ext[0].members.pop_back();
  auto r = cross_check_extensions(f, u, basis, ext, Semantics::Stable);
  EXPECT_EQ(r.verdict, Verdict::Mismatch);
  EXPECT_FALSE(r.witness.empty());
}

TEST(CrossCheck, UnboundedIsPartial) {
  auto f = fx::corpus("cpcq.caba");
  auto r = cross_check(f, parse_universe("-2..2"), CheckMode::Extension);
  EXPECT_FALSE(r.bounded);
  EXPECT_EQ(r.verdict, Verdict::Partial);
}

TEST(CrossCheck, MgcargInstancesMatchClassical) {
  auto f = fx::corpus("fa_bounded.caba");
  auto u = parse_universe("0..12");
  auto g = ground(f, u);
  EXPECT_EQ(ground_instances(build_mgcarg_strict(f), g.universe).size(), classical_arguments(g).size());
}
