#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace caba;

namespace {

bool has_kind(const std::vector<Diagnostic>& ds, const std::string& kind) {
  for (const auto& d : ds)
    if (d.kind == kind) return true;
  return false;
}

// ground rules without their ids
std::set<std::pair<GroundAtom, std::vector<GroundAtom>>> instances(const CabaFramework& f, const Universe& u) {
  std::set<std::pair<GroundAtom, std::vector<GroundAtom>>> out;
  for (const auto& r : ground(f, u).rules) {
    std::vector<GroundAtom> body(r.body.begin(), r.body.end());
    std::sort(body.begin(), body.end());
    out.insert({r.head, body});
  }
  return out;
}

}  // namespace

TEST(Parse, FrameworkFA) {
  auto f = fx::corpus("fa.caba");
  EXPECT_EQ(f.rules.size(), 5u);
  EXPECT_EQ(f.assumptions.size(), 2u);
  EXPECT_EQ(f.assumption("a")->contrary, "ca");
  EXPECT_EQ(f.assumption("b")->contrary, "cb");
  EXPECT_EQ(f.rules[0].id, "R1");
  EXPECT_TRUE(validate(f).empty());
}

TEST(Parse, TaxRules) {
  auto f = parse(
      "assumption nonexempt(P) contrary exempt(P).\n"
      "assumption salary_income(P) contrary other_incomes(P).\n"
      "R1: must_pay_tax(P) <- income(P,I), I >= 0, nonexempt(P).\n"
      "R2: exempt(P) <- income(P,I), I >= 0, I <= 16000, salary_income(P).\n"
      "R3: other_incomes(P) <- foreign_income(P,F), F >= 10000.\n");
  EXPECT_EQ(f.rules.size(), 3u);
  EXPECT_EQ(f.rules[0].head.pred, "must_pay_tax");
  EXPECT_EQ(fx::corpus("tax.caba").rules.size(), 7u);
}

TEST(Parse, AssumptionOnly) {
  auto f = parse("assumption a(X) contrary c(X).\n");
  EXPECT_TRUE(f.rules.empty());
  EXPECT_TRUE(validate(f).empty());
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse("assumption a(X) contrary c(X).\np(X) <- X < 1,\n  a(X) q.\n");
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Parse, RejectsInvalidFramework) {
  EXPECT_THROW(parse("assumption a(X) contrary c(X).\na(X) <- X < 1.\n"), ValidationError);
}

TEST(Parse, RoundTrip) {
  for (const char* name : {"fa.caba", "cpcq.caba", "aba_b.caba", "tax.caba", "overlap.caba", "fa_bounded.caba"}) {
    auto f = fx::corpus(name);
    EXPECT_EQ(parse(serialise(f)), f) << name;
  }
}

TEST(Parse, BogusAssumptionHidden) {
  auto f = parse("p(X) <- X > 0.\n");
  EXPECT_TRUE(f.bogus.has_value());
  EXPECT_TRUE(f.assumptions.empty());
  EXPECT_EQ(serialise(f).find(f.bogus->pred), std::string::npos);
}

TEST(Validate, NonFlat) {
  auto f = parse_unchecked("assumption a(X) contrary c(X).\na(X) <- p(X).\n");
  EXPECT_TRUE(has_kind(validate(f), "NonFlat"));
}

TEST(Validate, ContraryClash) {
  auto f = parse_unchecked("assumption a(X) contrary c(X).\nassumption a(X) contrary d(X).\n");
  EXPECT_TRUE(has_kind(validate(f), "ContraryClash"));
}

TEST(Validate, ArityMismatch) {
  auto f = parse_unchecked("assumption a(X) contrary c(X).\np(X) <- a(X,X).\n");
  EXPECT_TRUE(has_kind(validate(f), "ArityMismatch"));
}

TEST(Normalise, WorkedRule) {
  auto f = parse("assumption a(X) contrary c(X).\np(X,X,4+1) <- X < 3, a(7).\n");
  auto r = normalise(f.rules[0]);
  VarSet head;
  r.head.collect_vars(head);
  EXPECT_EQ(head.size(), 3u);
  for (const auto& t : r.head.args) EXPECT_TRUE(t.as_variable().has_value());
  ASSERT_EQ(r.body.size(), 1u);
  ASSERT_TRUE(r.body[0].args[0].as_variable().has_value());
  // X=Y, Z=4+1, X<3, U=7
  EXPECT_EQ(r.constraints.size(), 4u);
  auto u = parse_universe("0..8");
  EXPECT_EQ(instances(f, u), instances(normalise(f), u));
}

TEST(Normalise, FactBecomesEquality) {
  auto f = parse("q(2).\n");
  auto r = normalise(f.rules[0]);
  ASSERT_TRUE(r.head.args[0].as_variable().has_value());
  EXPECT_EQ(r.constraints.size(), 1u);
  auto u = parse_universe("1..3");
  EXPECT_EQ(instances(f, u), instances(normalise(f), u));
}

TEST(Normalise, Idempotent) {
  for (const char* name : {"fa.caba", "cpcq.caba", "tax.caba"}) {
    auto once = normalise(fx::corpus(name));
    auto twice = normalise(once);
    ASSERT_EQ(once.rules.size(), twice.rules.size());
    for (size_t i = 0; i < once.rules.size(); ++i) {
      EXPECT_EQ(once.rules[i].body.size(), twice.rules[i].body.size());
      EXPECT_EQ(once.rules[i].constraints.size(), twice.rules[i].constraints.size()) << name;
    }
    auto u = parse_universe("0..4");
    EXPECT_EQ(instances(once, u), instances(twice, u));
  }
}

TEST(Embedding, PlainAbaValidates) {
  auto f = fx::corpus("aba_b.caba");
  EXPECT_TRUE(validate(f).empty());
  for (const auto& r : f.rules) EXPECT_TRUE(r.constraints.empty());
}
