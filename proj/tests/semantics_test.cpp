#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace caba;
using fx::arg;

namespace {

struct Basis {
  CabaFramework f;
  ArgumentSet delta;
  explicit Basis(const std::string& name) : f(fx::corpus(name)) {
    delta = argument_splitting(f, build_mgcarg_strict(f)).args;
  }
  ArgumentSet pick(const ArgumentSet& want) const {
    ArgumentSet out;
    for (const auto& w : want)
      for (const auto& a : delta)
        if (fx::equiv(a, w)) out.push_back(a);
    return out;
  }
};

ArgumentSet e1() {
  return {arg("α1,1", "cp(X)", "X = 0", {"q(X)"}), arg("α1,2", "cp(X)", "X > 0", {"q(X)"}),
          arg("α2,2", "cq(X)", "X < 0", {"p(X)"}), arg("α3", "r(X)", "X >= Y, Y >= 0"),
          arg("α4", "s(X)", "X <= 0"),              arg("α5,1", "p(X)", "X < 0", {"p(X)"}),
          arg("α6,2", "q(X)", "X = 0", {"q(X)"}),  arg("α6,3", "q(X)", "X > 0", {"q(X)"})};
}

ArgumentSet e2() {
  return {arg("α1,2", "cp(X)", "X > 0", {"q(X)"}), arg("α2,1", "cq(X)", "X = 0", {"p(X)"}),
          arg("α2,2", "cq(X)", "X < 0", {"p(X)"}), arg("α3", "r(X)", "X >= Y, Y >= 0"),
          arg("α4", "s(X)", "X <= 0"),              arg("α5,1", "p(X)", "X < 0", {"p(X)"}),
          arg("α5,2", "p(X)", "X = 0", {"p(X)"}),  arg("α6,3", "q(X)", "X > 0", {"q(X)"})};
}

// the stable set of FA written out by hand
ArgumentSet gamma() {
  return {arg("", "p(X)", "Y < 10, Y >= 5", {"a(Y,X)"}),
          arg("", "p(X)", "Y < 5, X <= 3", {"a(Y,X)"}),
          arg("", "s(Y)", "Y > 0"),
          arg("", "ca(X,Y)", "X < 5, Y > 3"),
          arg("", "cb(X)", "X < 10"),
          arg("", "a(X,Y)", "X >= 5", {"a(X,Y)"}),
          arg("", "a(X,Y)", "X < 5, Y <= 3", {"a(X,Y)"}),
          arg("", "b(X)", "X >= 10", {"b(X)"})};
}

bool same_members(const Extension& e, const ArgumentSet& want, const ArgumentSet& delta) {
  return fx::same_pieces(members_of(e, delta), want);
}

}  // namespace

TEST(Extensions, CpCqStable) {
  Basis b("cpcq.caba");
  auto ext = enumerate_extensions(b.f, b.delta, Semantics::Stable);
  ASSERT_EQ(ext.size(), 2u);
  bool first = same_members(ext[0], e1(), b.delta) && same_members(ext[1], e2(), b.delta);
  bool second = same_members(ext[0], e2(), b.delta) && same_members(ext[1], e1(), b.delta);
  EXPECT_TRUE(first || second);
  for (const auto& e : ext) EXPECT_TRUE(check_stable_native(b.f, members_of(e, b.delta), b.delta));
}

TEST(Extensions, CpCqAdmissibleNonStable) {
  Basis b("cpcq.caba");
  auto ext = enumerate_extensions(b.f, b.delta, Semantics::Admissible);
  auto has = [&](const ArgumentSet& want) {
    for (const auto& e : ext)
      if (same_members(e, want, b.delta)) return true;
    return false;
  };
  auto r = arg("α3", "r(X)", "X >= Y, Y >= 0");
  auto s = arg("α4", "s(X)", "X <= 0");
  EXPECT_TRUE(has({arg("α1,1", "cp(X)", "X = 0", {"q(X)"}), r, s}));
  EXPECT_TRUE(has({arg("α2,1", "cq(X)", "X = 0", {"p(X)"}), r, s}));
  EXPECT_TRUE(has({}));
}

TEST(Extensions, ChainStableAdmissibleConflictFree) {
  Basis b("cpcq.caba");
  auto as_sets = [&](Semantics s) {
    std::set<std::vector<std::string>> out;
    for (const auto& e : enumerate_extensions(b.f, b.delta, s)) out.insert(e.members);
    return out;
  };
  auto st = as_sets(Semantics::Stable);
  auto ad = as_sets(Semantics::Admissible);
  auto cf = as_sets(Semantics::ConflictFree);
  for (const auto& e : st) EXPECT_TRUE(ad.count(e));
  for (const auto& e : ad) EXPECT_TRUE(cf.count(e));
  EXPECT_GT(ad.size(), st.size());
}

TEST(Extensions, FrameworkFAUniqueStable) {
  Basis b("fa.caba");
  auto ext = enumerate_extensions(b.f, b.delta, Semantics::Stable);
  ASSERT_EQ(ext.size(), 1u);
  auto members = members_of(ext[0], b.delta);
  EXPECT_TRUE(set_equiv(members, gamma()));
  EXPECT_TRUE(check_stable_native(b.f, members, b.delta));
}

TEST(Extensions, StableAgreesWithNativeCheck) {
  for (const char* name : {"cpcq.caba", "aba_b.caba"}) {
    Basis b(name);
    std::set<std::vector<std::string>> stable;
    for (const auto& e : enumerate_extensions(b.f, b.delta, Semantics::Stable)) stable.insert(e.members);
    for (const auto& e : enumerate_extensions(b.f, b.delta, Semantics::ConflictFree))
      EXPECT_EQ(stable.count(e.members) == 1, check_stable_native(b.f, members_of(e, b.delta), b.delta)) << name;
  }
}

TEST(Extensions, RefusesNonCompliantBasis) {
  auto f = fx::corpus("cpcq.caba");
  EXPECT_THROW(enumerate_extensions(f, build_mgcarg_strict(f), Semantics::Stable), BasisNotCompliant);
}

TEST(Ngcf, GammaIsConflictFree) {
  Basis b("fa.caba");
  EXPECT_TRUE(is_ngcf(b.f, gamma()));
  EXPECT_TRUE(is_ngcf(b.f, {}));
}

TEST(Fatt, GammaAgainstSplitBasis) {
  Basis b("fa.caba");
  auto attacked = fatt(b.f, b.pick(gamma()), b.delta);
  ArgumentSet alpha1;
  for (const auto& a : attacked)
    if (a.assumptions.size() == 2) alpha1.push_back(a);
  EXPECT_TRUE(set_equiv(alpha1, {arg("", "p(X)", "X < 1, Y > 0", {"a(X,Y)", "b(X)"})}));
  auto contains = [&](const ConstrainedArgument& w) {
    for (const auto& a : attacked)
      if (fx::equiv(a, w)) return true;
    return false;
  };
  EXPECT_TRUE(contains(arg("", "p(X)", "Y < 5, X > 3", {"a(Y,X)"})));
  EXPECT_TRUE(contains(arg("", "a(X,Y)", "X < 5, Y > 3", {"a(X,Y)"})));
  EXPECT_TRUE(contains(arg("", "b(X)", "X < 10", {"b(X)"})));
  EXPECT_TRUE(fatt(b.f, {}, b.delta).empty());
}

TEST(Fatt, UnattackedSingleton) {
  auto f = fx::corpus("fa.caba");
  ArgumentSet one{arg("α3", "s(Y)", "Y > 0")};
  EXPECT_TRUE(fatt(f, one, one).empty());
}

TEST(NativeCheck, EmptySetFailsCoverage) {
  Basis b("fa.caba");
  EXPECT_FALSE(check_stable_native(b.f, {}, b.delta));
}

TEST(NativeCheck, GammaIsStable) {
  Basis b("fa.caba");
  EXPECT_TRUE(check_stable_native(b.f, b.pick(gamma()), b.delta));
  EXPECT_TRUE(check_stable_native(b.f, gamma(), b.delta));
}

TEST(Solver, AbstractFrameworks) {
  // odd cycle: no stable extension
  std::vector<std::vector<size_t>> att{{2}, {0}, {1}};
  EXPECT_TRUE(enumerate_af(3, att, Semantics::Stable).empty());
  // even cycle: two
  att = {{1}, {0}};
  EXPECT_EQ(enumerate_af(2, att, Semantics::Stable).size(), 2u);
  // self-attacker attacked from an unattacked node
  att = {{}, {0, 1}};
  auto st = enumerate_af(2, att, Semantics::Stable);
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0], std::vector<size_t>{0});
}
