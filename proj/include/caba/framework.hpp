#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caba/constraint_theory.hpp"
#include "caba/errors.hpp"

namespace caba {

struct Atom {
  std::string pred;
  std::vector<LinearTerm> args;

  void collect_vars(VarSet& out) const {
    for (const auto& t : args) t.collect_vars(out);
  }
  bool is_ground() const {
    for (const auto& t : args)
      if (!t.is_ground()) return false;
    return true;
  }
  Atom substitute(const std::map<std::string, LinearTerm>& s) const {
    Atom a{pred, {}};
    for (const auto& t : args) a.args.push_back(t.substitute(s));
    return a;
  }
  Atom rename(const std::map<std::string, std::string>& m) const {
    Atom a{pred, {}};
    for (const auto& t : args) a.args.push_back(t.rename(m));
    return a;
  }
  friend bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
    for (size_t i = 0; i < a.args.size(); ++i) {
      int c = compare(a.args[i], b.args[i]);
      if (c) return c < 0;
    }
    return false;
  }
};

inline std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string out = a.pred + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.args[i]);
  }
  return out + ")";
}

struct Rule {
  std::string id;
  Atom head;
  ConstraintSet constraints;
  std::vector<Atom> body;

  VarSet vars() const {
    VarSet v = vars_of(constraints);
    head.collect_vars(v);
    for (const auto& b : body) b.collect_vars(v);
    return v;
  }
  friend bool operator==(const Rule& a, const Rule& b) {
    return a.id == b.id && a.head == b.head && a.constraints == b.constraints && a.body == b.body;
  }
};

inline std::string to_string(const Rule& r) {
  std::string out = r.id + ": " + to_string(r.head);
  if (r.constraints.empty() && r.body.empty()) return out + ".";
  out += " <- ";
  bool first = true;
  for (const auto& c : r.constraints) {
    if (!first) out += ", ";
    out += to_string(c);
    first = false;
  }
  for (const auto& b : r.body) {
    if (!first) out += ", ";
    out += to_string(b);
    first = false;
  }
  return out + ".";
}

struct AssumptionDecl {
  std::string pred;
  size_t arity = 0;
  std::string contrary;
  int line = 0;
  friend bool operator==(const AssumptionDecl& a, const AssumptionDecl& b) {
    return a.pred == b.pred && a.arity == b.arity && a.contrary == b.contrary;
  }
};

struct Domain {
  Rational lo, hi;
  friend bool operator==(const Domain& a, const Domain& b) { return a.lo == b.lo && a.hi == b.hi; }
};

struct CabaFramework {
  std::vector<Rule> rules;
  std::vector<AssumptionDecl> assumptions;  // declaration order
  std::optional<AssumptionDecl> bogus;      // set when nothing was declared
  std::optional<Domain> domain;             // every variable confined to [lo, hi]

  bool is_assumption(const std::string& p) const {
    for (const auto& a : assumptions)
      if (a.pred == p) return true;
    return false;
  }
  const AssumptionDecl* assumption(const std::string& p) const {
    for (const auto& a : assumptions)
      if (a.pred == p) return &a;
    return nullptr;
  }
  // assumption predicates whose contrary is `c`
  std::vector<std::string> attacked_by(const std::string& c) const {
    std::vector<std::string> out;
    for (const auto& a : assumptions)
      if (a.contrary == c) out.push_back(a.pred);
    return out;
  }
  bool is_contrary(const std::string& p) const {
    for (const auto& a : assumptions)
      if (a.contrary == p) return true;
    return false;
  }

  // predicate -> arity, first use wins
  std::map<std::string, size_t> signature() const {
    std::map<std::string, size_t> sig;
    for (const auto& a : assumptions) {
      sig.emplace(a.pred, a.arity);
      sig.emplace(a.contrary, a.arity);
    }
    for (const auto& r : rules) {
      sig.emplace(r.head.pred, r.head.args.size());
      for (const auto& b : r.body) sig.emplace(b.pred, b.args.size());
    }
    return sig;
  }

  bool declares(const std::string& p) const { return signature().count(p) > 0; }

  // head predicates in first-appearance order
  std::vector<std::string> head_predicates() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& r : rules)
      if (seen.insert(r.head.pred).second) out.push_back(r.head.pred);
    return out;
  }

  friend bool operator==(const CabaFramework& a, const CabaFramework& b) {
    return a.rules == b.rules && a.assumptions == b.assumptions && a.domain == b.domain;
  }
};

struct Diagnostic {
  std::string kind;  // NonFlat, ContraryClash, ArityMismatch, DuplicateRuleId
  std::string message;
};

inline std::vector<Diagnostic> validate(const CabaFramework& f) {
  std::vector<Diagnostic> out;
  std::map<std::string, size_t> arity;
  std::map<std::string, std::string> first_use;
  auto check = [&](const std::string& pred, size_t n, const std::string& where) {
    auto [it, fresh] = arity.emplace(pred, n);
    if (fresh) { first_use[pred] = where; return; }
    if (it->second != n)
      out.push_back({"ArityMismatch", "predicate " + pred + " used with arity " + std::to_string(n) + " in " +
                                          where + " but arity " + std::to_string(it->second) + " in " +
                                          first_use[pred]});
  };

  std::map<std::string, std::string> contrary_of;
  for (const auto& a : f.assumptions) {
    std::string where = "assumption declaration of " + a.pred;
    check(a.pred, a.arity, where);
    check(a.contrary, a.arity, where);
    auto [it, fresh] = contrary_of.emplace(a.pred, a.contrary);
    if (!fresh && it->second != a.contrary)
      out.push_back({"ContraryClash", "assumption " + a.pred + " declared with contraries " + it->second +
                                          " and " + a.contrary});
  }
  for (const auto& a : f.assumptions) {
    if (f.is_assumption(a.contrary))
      out.push_back({"ContraryClash", "contrary " + a.contrary + " of " + a.pred + " is itself an assumption"});
  }
  std::set<std::string> ids;
  for (const auto& r : f.rules) {
    if (!ids.insert(r.id).second) out.push_back({"DuplicateRuleId", "rule id " + r.id + " used twice"});
    check(r.head.pred, r.head.args.size(), "head of " + r.id);
    for (const auto& b : r.body) check(b.pred, b.args.size(), "body of " + r.id);
    if (f.is_assumption(r.head.pred))
      out.push_back({"NonFlat", "rule " + r.id + " has assumption " + r.head.pred + " as its head"});
  }
  return out;
}

// Every head/body atom gets distinct fresh variables; the original
// arguments move into equality constraints.
inline Rule normalise(const Rule& r) {
  VarSet used = r.vars();
  size_t counter = 0;
  auto fresh = [&]() {
    std::string n;
    do n = "N" + std::to_string(counter++);
    while (used.count(n));
    used.insert(n);
    return n;
  };
  std::set<std::string> taken;
  Rule out{r.id, {r.head.pred, {}}, r.constraints, {}};
  auto fix = [&](const Atom& a) {
    Atom b{a.pred, {}};
    for (const auto& t : a.args) {
      auto v = t.as_variable();
      if (v && taken.insert(*v).second) {
        b.args.push_back(t);
        continue;
      }
      std::string n = fresh();
      taken.insert(n);
      out.constraints.insert(make_constraint(LinearTerm::var(n), Rel::Eq, t));
      b.args.push_back(LinearTerm::var(n));
    }
    return b;
  };
  out.head = fix(r.head);
  for (const auto& b : r.body) out.body.push_back(fix(b));
  return out;
}

inline CabaFramework normalise(const CabaFramework& f) {
  CabaFramework g = f;
  for (auto& r : g.rules) r = normalise(r);
  return g;
}

// ---------------------------------------------------------------------------
// Text syntax

namespace detail {

enum class Tok { Ident, Var, Num, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      int l = line_, c = col_;
      if (pos_ >= src_.size()) { out.push_back({Tok::End, "", l, c}); return out; }
      char ch = src_[pos_];
      if (std::islower(static_cast<unsigned char>(ch))) {
        out.push_back({Tok::Ident, word(), l, c});
      } else if (std::isupper(static_cast<unsigned char>(ch)) || ch == '_') {
        out.push_back({Tok::Var, word(), l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          s += take();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
        }
        out.push_back({Tok::Num, s, l, c});
      } else {
        static const char* multi[] = {"<-", ":-", "<=", ">=", "!=", "..", "=<"};
        std::string p;
        for (const char* m : multi)
          if (src_.substr(pos_, 2) == m) { p = m; break; }
        if (p.empty()) {
          if (std::string_view("()<>=,.+-*/:").find(ch) == std::string_view::npos)
            throw ParseError(at(l, c) + "unexpected character '" + std::string(1, ch) + "'");
          p = std::string(1, ch);
        }
        for (size_t i = 0; i < p.size(); ++i) take();
        if (p == ":-") p = "<-";
        if (p == "=<") p = "<=";
        out.push_back({Tok::Punct, p, l, c});
      }
    }
  }

  static std::string at(int l, int c) { return "line " + std::to_string(l) + ", column " + std::to_string(c) + ": "; }

private:
  char take() {
    char ch = src_[pos_++];
    if (ch == '\n') { ++line_; col_ = 1; }
    else ++col_;
    return ch;
  }
  void skip() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == '#' || ch == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        take();
      } else {
        break;
      }
    }
  }
  std::string word() {
    std::string s;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      s += take();
    return s;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

inline Rational parse_number(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(s, 10);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::string denom = "1" + std::string(s.size() - dot - 1, '0');
  Rational q(mpz_class(digits, 10), mpz_class(denom, 10));
  q.canonicalize();
  return q;
}

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  CabaFramework framework() {
    CabaFramework f;
    size_t auto_id = 0;
    while (peek().kind != Tok::End) {
      if (is_ident("assumption")) {
        f.assumptions.push_back(assumption_decl());
      } else if (is_ident("domain")) {
        next();
        Rational lo = signed_number();
        expect("..");
        Rational hi = signed_number();
        expect(".");
        if (lo > hi) throw ParseError(here() + "empty domain");
        f.domain = Domain{lo, hi};
      } else {
        ++auto_id;
        Rule r = rule();
        if (r.id.empty()) r.id = "R" + std::to_string(auto_id);
        f.rules.push_back(std::move(r));
      }
    }
    if (f.assumptions.empty()) f.bogus = AssumptionDecl{"_bogus", 0, "_bogus_contrary", 0};
    return f;
  }

  Atom atom_only() {
    Atom a = atom();
    expect_end();
    return a;
  }
  LinearConstraint constraint_only() {
    LinearConstraint c = constraint();
    expect_end();
    return c;
  }
  LinearTerm term_only() {
    LinearTerm t = term();
    expect_end();
    return t;
  }
  ConstraintSet constraint_list() {
    ConstraintSet cs;
    if (peek().kind == Tok::End) return cs;
    cs.insert(constraint());
    while (accept(",")) cs.insert(constraint());
    expect_end();
    return cs;
  }

private:
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  std::string here() const { return Lexer::at(peek().line, peek().col); }
  bool is_ident(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool is_punct(const char* p, size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }
  bool accept(const char* p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect(const char* p) {
    if (!accept(p)) throw ParseError(here() + "expected '" + p + "' but found '" + describe(peek()) + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::End) throw ParseError(here() + "unexpected '" + describe(peek()) + "'");
  }
  static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }

  AssumptionDecl assumption_decl() {
    int line = peek().line;
    next();
    Atom a = atom();
    if (!is_ident("contrary")) throw ParseError(here() + "expected 'contrary'");
    next();
    Atom c = atom();
    expect(".");
    std::set<std::string> seen;
    for (const auto& t : a.args) {
      auto v = t.as_variable();
      if (!v || !seen.insert(*v).second)
        throw ParseError(Lexer::at(line, 1) + "assumption " + a.pred + " must list distinct variables");
    }
    if (c.args != a.args)
      throw ParseError(Lexer::at(line, 1) + "contrary " + c.pred + " must repeat the variables of " + a.pred);
    return AssumptionDecl{a.pred, a.args.size(), c.pred, line};
  }

  Rule rule() {
    Rule r;
    if ((peek().kind == Tok::Var || peek().kind == Tok::Ident) && is_punct(":", 1)) {
      r.id = next().text;
      next();
    }
    if (peek().kind != Tok::Ident) throw ParseError(here() + "expected a rule head, found '" + describe(peek()) + "'");
    r.head = atom();
    if (accept("<-")) {
      if (!is_punct(".")) {
        body_element(r);
        while (accept(",")) body_element(r);
      }
    }
    expect(".");
    return r;
  }

  void body_element(Rule& r) {
    if (peek().kind == Tok::Ident) r.body.push_back(atom());
    else r.constraints.insert(constraint());
  }

  Atom atom() {
    if (peek().kind != Tok::Ident) throw ParseError(here() + "expected a predicate, found '" + describe(peek()) + "'");
    Atom a{next().text, {}};
    if (accept("(")) {
      if (!accept(")")) {
        a.args.push_back(term());
        while (accept(",")) a.args.push_back(term());
        expect(")");
      }
    }
    return a;
  }

  LinearConstraint constraint() {
    LinearTerm lhs = term();
    static const std::pair<const char*, Rel> rels[] = {{"<", Rel::Lt}, {"<=", Rel::Le}, {"=", Rel::Eq},
                                                       {"!=", Rel::Ne}, {">=", Rel::Ge}, {">", Rel::Gt}};
    for (const auto& [sym, rel] : rels) {
      if (accept(sym)) return make_constraint(lhs, rel, term());
    }
    throw ParseError(here() + "expected a relation, found '" + describe(peek()) + "'");
  }

  Rational signed_number() {
    bool neg = accept("-");
    Rational q = rational();
    return neg ? Rational(-q) : q;
  }

  Rational rational() {
    if (peek().kind != Tok::Num) throw ParseError(here() + "expected a number, found '" + describe(peek()) + "'");
    Rational q = parse_number(next().text);
    if (is_punct("/") && peek(1).kind == Tok::Num) {
      next();
      Rational d = parse_number(next().text);
      if (d == 0) throw ParseError(here() + "division by zero");
      q /= d;
    }
    return q;
  }

  LinearTerm factor() {
    if (peek().kind == Tok::Var) return LinearTerm::var(next().text);
    if (peek().kind == Tok::Num) {
      Rational q = rational();
      if (accept("*")) {
        if (peek().kind != Tok::Var) throw ParseError(here() + "expected a variable after '*'");
        return LinearTerm::var(next().text, q);
      }
      return LinearTerm(q);
    }
    if (accept("(")) {
      LinearTerm t = term();
      expect(")");
      return t;
    }
    throw ParseError(here() + "expected a term, found '" + describe(peek()) + "'");
  }

  LinearTerm term() {
    LinearTerm t;
    bool neg = accept("-");
    t = factor();
    if (neg) t = -t;
    while (true) {
      if (accept("+")) t += factor();
      else if (accept("-")) t -= factor();
      else return t;
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

// Parses without checking the framework conditions.
inline CabaFramework parse_unchecked(std::string_view text) { return detail::Parser(text).framework(); }

inline std::string describe(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "\n") + d.kind + ": " + d.message;
  return out;
}

inline CabaFramework parse(std::string_view text) {
  CabaFramework f = parse_unchecked(text);
  auto ds = validate(f);
  if (!ds.empty()) throw ValidationError(describe(ds));
  return f;
}

inline Atom parse_atom(std::string_view s) { return detail::Parser(s).atom_only(); }
inline LinearConstraint parse_constraint(std::string_view s) { return detail::Parser(s).constraint_only(); }
inline LinearTerm parse_term(std::string_view s) { return detail::Parser(s).term_only(); }
inline ConstraintSet parse_constraints(std::string_view s) { return detail::Parser(s).constraint_list(); }

// Rejects predicates the framework never mentions.
inline void require_predicate(const CabaFramework& f, const std::string& pred) {
  if (!f.declares(pred)) throw ValidationError("unknown predicate " + pred);
}

inline std::string serialise(const CabaFramework& f) {
  std::string out;
  if (f.domain) out += "domain " + to_string(f.domain->lo) + " .. " + to_string(f.domain->hi) + ".\n";
  for (const auto& a : f.assumptions) {
    std::string vars;
    for (size_t i = 0; i < a.arity; ++i) vars += (i ? "," : "") + std::string("X") + std::to_string(i + 1);
    std::string args = a.arity ? "(" + vars + ")" : "";
    out += "assumption " + a.pred + args + " contrary " + a.contrary + args + ".\n";
  }
  for (const auto& r : f.rules) out += to_string(r) + "\n";
  return out;
}

}  // namespace caba
