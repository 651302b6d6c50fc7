#pragma once

// Exact linear rational arithmetic: terms, atomic constraints, consistency,
// projection (Fourier-Motzkin), negation and constraint split.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "caba/errors.hpp"

namespace caba {

using Rational = mpq_class;
using VarSet = std::set<std::string>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// LinearTerm

struct LinearTerm {
  std::map<std::string, Rational> coeffs;  // never holds a zero
  Rational constant = 0;

  LinearTerm() = default;
  explicit LinearTerm(Rational c) : constant(std::move(c)) {}

  static LinearTerm var(const std::string& name, Rational k = 1) {
    LinearTerm t;
    if (k != 0) t.coeffs.emplace(name, std::move(k));
    return t;
  }

  bool is_ground() const { return coeffs.empty(); }

  std::optional<std::string> as_variable() const {
    if (coeffs.size() == 1 && constant == 0 && coeffs.begin()->second == 1)
      return coeffs.begin()->first;
    return std::nullopt;
  }

  Rational coeff(const std::string& v) const {
    auto it = coeffs.find(v);
    return it == coeffs.end() ? Rational(0) : it->second;
  }

  void add_scaled(const LinearTerm& o, const Rational& k) {
    if (k == 0) return;
    for (const auto& [v, c] : o.coeffs) {
      auto [it, fresh] = coeffs.emplace(v, 0);
      it->second += c * k;
      if (it->second == 0) coeffs.erase(it);
    }
    constant += o.constant * k;
  }

  LinearTerm& operator+=(const LinearTerm& o) { add_scaled(o, 1); return *this; }
  LinearTerm& operator-=(const LinearTerm& o) { add_scaled(o, -1); return *this; }
  LinearTerm& operator*=(const Rational& k) {
    if (k == 0) { coeffs.clear(); constant = 0; return *this; }
    for (auto& kv : coeffs) kv.second *= k;
    constant *= k;
    return *this;
  }

  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Rational& k) { return a *= k; }
  friend LinearTerm operator-(LinearTerm a) { return a *= Rational(-1); }

  void collect_vars(VarSet& out) const {
    for (const auto& kv : coeffs) out.insert(kv.first);
  }

  // replace v by t
  LinearTerm substitute(const std::string& v, const LinearTerm& t) const {
    auto it = coeffs.find(v);
    if (it == coeffs.end()) return *this;
    LinearTerm r = *this;
    Rational k = it->second;
    r.coeffs.erase(v);
    r.add_scaled(t, k);
    return r;
  }

  LinearTerm substitute(const std::map<std::string, LinearTerm>& s) const {
    LinearTerm r(constant);
    for (const auto& [v, c] : coeffs) {
      auto it = s.find(v);
      if (it == s.end()) r.add_scaled(var(v), c);
      else r.add_scaled(it->second, c);
    }
    return r;
  }

  LinearTerm rename(const std::map<std::string, std::string>& m) const {
    LinearTerm r(constant);
    for (const auto& [v, c] : coeffs) {
      auto it = m.find(v);
      r.add_scaled(var(it == m.end() ? v : it->second), c);
    }
    return r;
  }

  Rational eval(const std::map<std::string, Rational>& env) const {
    Rational r = constant;
    for (const auto& [v, c] : coeffs) r += c * env.at(v);
    return r;
  }

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) {
    return a.constant == b.constant && a.coeffs == b.coeffs;
  }
  friend bool operator!=(const LinearTerm& a, const LinearTerm& b) { return !(a == b); }
};

inline int compare(const LinearTerm& a, const LinearTerm& b) {
  auto i = a.coeffs.begin();
  auto j = b.coeffs.begin();
  for (; i != a.coeffs.end() && j != b.coeffs.end(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first ? -1 : 1;
    int c = cmp(i->second, j->second);
    if (c) return c < 0 ? -1 : 1;
  }
  if (i != a.coeffs.end()) return 1;
  if (j != b.coeffs.end()) return -1;
  int c = cmp(a.constant, b.constant);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

inline bool operator<(const LinearTerm& a, const LinearTerm& b) { return compare(a, b) < 0; }

inline std::string to_string(const LinearTerm& t) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& k, const std::string& body) {
    Rational a = abs(k);
    if (first) os << (k < 0 ? "-" : "");
    else os << (k < 0 ? " - " : " + ");
    if (body.empty()) os << to_string(a);
    else {
      if (a != 1) os << to_string(a) << "*";
      os << body;
    }
    first = false;
  };
  for (const auto& [v, c] : t.coeffs) emit(c, v);
  if (t.constant != 0 || first) {
    if (first && t.constant >= 0) { os << to_string(t.constant); first = false; }
    else emit(t.constant, "");
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LinearConstraint, stored as `expr rel 0`

enum class Rel { Lt, Le, Eq, Ne, Ge, Gt };

inline const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

struct LinearConstraint {
  LinearTerm expr;
  Rel rel = Rel::Eq;  // one of Lt, Le, Eq, Ne once built through make()

  static LinearConstraint make(const LinearTerm& lhs, Rel r, const LinearTerm& rhs) {
    LinearConstraint c;
    switch (r) {
      case Rel::Ge: c.expr = rhs - lhs; c.rel = Rel::Le; break;
      case Rel::Gt: c.expr = rhs - lhs; c.rel = Rel::Lt; break;
      default: c.expr = lhs - rhs; c.rel = r; break;
    }
    c.normalise();
    return c;
  }

  void normalise() {
    if (expr.coeffs.empty()) return;
    Rational lead = expr.coeffs.begin()->second;
    if (rel == Rel::Lt || rel == Rel::Le) lead = abs(lead);
    if (lead != 1) expr *= Rational(1 / lead);
  }

  bool is_ground() const { return expr.is_ground(); }

  bool holds_ground() const {
    const Rational& c = expr.constant;
    switch (rel) {
      case Rel::Lt: return c < 0;
      case Rel::Le: return c <= 0;
      case Rel::Eq: return c == 0;
      case Rel::Ne: return c != 0;
      case Rel::Ge: return c >= 0;
      case Rel::Gt: return c > 0;
    }
    return false;
  }

  bool holds(const std::map<std::string, Rational>& env) const {
    LinearConstraint g;
    g.expr = LinearTerm(expr.eval(env));
    g.rel = rel;
    return g.holds_ground();
  }

  LinearConstraint substitute(const std::map<std::string, LinearTerm>& s) const {
    LinearConstraint c{expr.substitute(s), rel};
    c.normalise();
    return c;
  }
  LinearConstraint substitute(const std::string& v, const LinearTerm& t) const {
    LinearConstraint c{expr.substitute(v, t), rel};
    c.normalise();
    return c;
  }
  LinearConstraint rename(const std::map<std::string, std::string>& m) const {
    LinearConstraint c{expr.rename(m), rel};
    c.normalise();
    return c;
  }

  void collect_vars(VarSet& out) const { expr.collect_vars(out); }

  friend bool operator==(const LinearConstraint& a, const LinearConstraint& b) {
    return a.rel == b.rel && a.expr == b.expr;
  }
  friend bool operator<(const LinearConstraint& a, const LinearConstraint& b) {
    // variables first, then relation, then coefficients
    auto ka = a.expr.coeffs.begin(), kb = b.expr.coeffs.begin();
    for (; ka != a.expr.coeffs.end() && kb != b.expr.coeffs.end(); ++ka, ++kb)
      if (ka->first != kb->first) return ka->first < kb->first;
    if ((ka == a.expr.coeffs.end()) != (kb == b.expr.coeffs.end()))
      return ka == a.expr.coeffs.end();
    if (a.rel != b.rel) return a.rel < b.rel;
    return compare(a.expr, b.expr) < 0;
  }
};

inline LinearConstraint make_constraint(const LinearTerm& l, Rel r, const LinearTerm& rhs) {
  return LinearConstraint::make(l, r, rhs);
}

inline std::string to_string(const LinearConstraint& c) {
  LinearTerm e = c.expr;
  Rel r = c.rel;
  if (e.is_ground()) return to_string(e.constant) + " " + rel_symbol(r) + " 0";
  if ((r == Rel::Lt || r == Rel::Le) && e.coeffs.begin()->second < 0) {
    e *= Rational(-1);
    r = r == Rel::Lt ? Rel::Gt : Rel::Ge;
  }
  LinearTerm lhs, rhs(-e.constant);
  for (const auto& [v, k] : e.coeffs) {
    if (k > 0) lhs.coeffs.emplace(v, k);
    else rhs.coeffs.emplace(v, -k);
  }
  return to_string(lhs) + " " + rel_symbol(r) + " " + to_string(rhs);
}

using ConstraintSet = std::set<LinearConstraint>;
using ConstraintDNF = std::vector<ConstraintSet>;

inline VarSet vars_of(const ConstraintSet& cs) {
  VarSet v;
  for (const auto& c : cs) c.collect_vars(v);
  return v;
}

inline ConstraintSet rename(const ConstraintSet& cs, const std::map<std::string, std::string>& m) {
  ConstraintSet out;
  for (const auto& c : cs) out.insert(c.rename(m));
  return out;
}

inline ConstraintSet substitute(const ConstraintSet& cs, const std::map<std::string, LinearTerm>& s) {
  ConstraintSet out;
  for (const auto& c : cs) out.insert(c.substitute(s));
  return out;
}

inline ConstraintSet join(ConstraintSet a, const ConstraintSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

inline std::string to_string(const ConstraintSet& cs) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : cs) {
    if (!first) out += ", ";
    out += to_string(c);
    first = false;
  }
  return out + "}";
}

inline std::string to_string(const ConstraintDNF& d) {
  if (d.empty()) return "false";
  std::string out;
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) out += " | ";
    out += to_string(d[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin core. An inequality `a.x + c < 0` (strict) or `<= 0`.

namespace detail {

struct Ineq {
  std::map<std::string, Rational> a;
  Rational c;
  bool strict = false;
};

// keeps only the tightest constant per coefficient vector
class IneqStore {
public:
  // returns false when a ground inequality is violated
  bool add(Ineq q) {
    if (q.a.empty()) {
      return q.strict ? q.c < 0 : q.c <= 0;
    }
    Rational lead = abs(q.a.begin()->second);
    if (lead != 1) {
      for (auto& kv : q.a) kv.second /= lead;
      q.c /= lead;
    }
    auto it = rows_.find(q.a);
    if (it == rows_.end()) {
      rows_.emplace(std::move(q.a), std::make_pair(q.c, q.strict));
    } else {
      auto& [c, s] = it->second;
      // a.x <= -c : larger c is tighter
      if (q.c > c || (q.c == c && q.strict && !s)) { c = q.c; s = q.strict; }
    }
    return true;
  }

  std::vector<Ineq> rows() const {
    std::vector<Ineq> out;
    out.reserve(rows_.size());
    for (const auto& [a, cs] : rows_) out.push_back(Ineq{a, cs.first, cs.second});
    return out;
  }

  bool contradicts_pairwise() const {
    // a.x + c1 <= 0 and -a.x + c2 <= 0 with c1 + c2 > 0 (or = 0 with strictness)
    for (const auto& [a, cs] : rows_) {
      std::map<std::string, Rational> na;
      for (const auto& kv : a) na.emplace(kv.first, -kv.second);
      auto it = rows_.find(na);
      if (it == rows_.end()) continue;
      Rational sum = cs.first + it->second.first;
      if (sum > 0) return true;
      if (sum == 0 && (cs.second || it->second.second)) return true;
    }
    return false;
  }

private:
  std::map<std::map<std::string, Rational>, std::pair<Rational, bool>> rows_;
};

// Eliminates every variable accepted by `drop`. Returns nullopt if infeasible.
inline std::optional<std::vector<Ineq>> fm_eliminate(std::vector<Ineq> rows,
                                                     const std::function<bool(const std::string&)>& drop) {
  IneqStore store;
  for (auto& r : rows)
    if (!store.add(r)) return std::nullopt;
  if (store.contradicts_pairwise()) return std::nullopt;
  rows = store.rows();

  while (true) {
    // choose the eliminable variable with the smallest pos*neg product
    std::map<std::string, std::pair<size_t, size_t>> counts;
    for (const auto& r : rows)
      for (const auto& [v, k] : r.a)
        if (drop(v)) (k > 0 ? counts[v].first : counts[v].second)++;
    if (counts.empty()) return rows;
    std::string best;
    size_t best_cost = SIZE_MAX;
    for (const auto& [v, pn] : counts) {
      size_t cost = pn.first * pn.second;
      if (cost < best_cost) { best = v; best_cost = cost; }
    }
    std::vector<const Ineq*> pos, neg;
    IneqStore next;
    for (const auto& r : rows) {
      Rational k = 0;
      auto it = r.a.find(best);
      if (it != r.a.end()) k = it->second;
      if (k > 0) pos.push_back(&r);
      else if (k < 0) neg.push_back(&r);
      else if (!next.add(r)) return std::nullopt;
    }
    for (const Ineq* p : pos) {
      Rational kp = p->a.at(best);
      for (const Ineq* n : neg) {
        Rational kn = -n->a.at(best);
        // kn*p + kp*n cancels `best`
        Ineq q;
        q.c = p->c * kn + n->c * kp;
        q.strict = p->strict || n->strict;
        for (const auto& [v, k] : p->a)
          if (v != best) q.a[v] += k * kn;
        for (const auto& [v, k] : n->a)
          if (v != best) q.a[v] += k * kp;
        for (auto it = q.a.begin(); it != q.a.end();)
          it = it->second == 0 ? q.a.erase(it) : std::next(it);
        if (!next.add(std::move(q))) return std::nullopt;
      }
    }
    if (next.contradicts_pairwise()) return std::nullopt;
    rows = next.rows();
  }
}

inline Ineq to_ineq(const LinearConstraint& c) {
  return Ineq{c.expr.coeffs, c.expr.constant, c.rel == Rel::Lt};
}

inline LinearConstraint from_ineq(const Ineq& q) {
  LinearConstraint c;
  c.expr.coeffs = q.a;
  c.expr.constant = q.c;
  c.rel = q.strict ? Rel::Lt : Rel::Le;
  c.normalise();
  return c;
}

inline bool ineqs_feasible(const std::vector<Ineq>& rows) {
  return fm_eliminate(rows, [](const std::string&) { return true; }).has_value();
}

struct Split {
  std::vector<Ineq> ineqs;
  std::vector<LinearConstraint> eqs;  // left after substitution
  std::vector<LinearConstraint> nes;
  bool ground_false = false;
};

// Substitutes away equalities whose pivot variable satisfies `pivot_ok`;
// the first such variable in name order is chosen.
inline Split eliminate_equalities(const ConstraintSet& cs,
                                  const std::function<bool(const std::string&)>& pivot_ok) {
  std::vector<LinearConstraint> work(cs.begin(), cs.end());
  std::vector<LinearConstraint> kept_eqs;
  Split out;
  while (true) {
    int idx = -1;
    std::string pivot;
    for (size_t i = 0; i < work.size() && idx < 0; ++i) {
      if (work[i].rel != Rel::Eq) continue;
      for (const auto& kv : work[i].expr.coeffs)
        if (pivot_ok(kv.first)) { idx = int(i); pivot = kv.first; break; }
    }
    if (idx < 0) break;
    LinearTerm e = work[idx].expr;
    Rational k = e.coeffs.at(pivot);
    e.coeffs.erase(pivot);
    LinearTerm value = e * Rational(-1 / k);
    work.erase(work.begin() + idx);
    for (auto& w : work) w = w.substitute(pivot, value);
  }
  for (const auto& w : work) {
    if (w.is_ground()) {
      if (!w.holds_ground()) out.ground_false = true;
      continue;
    }
    switch (w.rel) {
      case Rel::Lt:
      case Rel::Le: out.ineqs.push_back(to_ineq(w)); break;
      case Rel::Eq: out.eqs.push_back(w); break;
      case Rel::Ne: out.nes.push_back(w); break;
      default: break;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations

inline bool is_consistent(const ConstraintSet& cs) {
  using namespace detail;
  Split s = eliminate_equalities(cs, [](const std::string&) { return true; });
  if (s.ground_false) return false;
  if (!ineqs_feasible(s.ineqs)) return false;
  // a polyhedron minus finitely many hyperplanes is empty only if it lies
  // inside one of them
  for (const auto& ne : s.nes) {
    auto lo = s.ineqs;
    lo.push_back(Ineq{ne.expr.coeffs, ne.expr.constant, true});
    if (ineqs_feasible(lo)) continue;
    auto hi = s.ineqs;
    LinearTerm m = -ne.expr;
    hi.push_back(Ineq{m.coeffs, m.constant, true});
    if (!ineqs_feasible(hi)) return false;
  }
  return true;
}

inline ConstraintDNF negate(const LinearConstraint& c) {
  auto mk = [](const LinearTerm& e, Rel r) {
    LinearConstraint x{e, r};
    x.normalise();
    return x;
  };
  switch (c.rel) {
    case Rel::Lt: return {{mk(-c.expr, Rel::Le)}};
    case Rel::Le: return {{mk(-c.expr, Rel::Lt)}};
    case Rel::Eq: return {{mk(c.expr, Rel::Lt)}, {mk(-c.expr, Rel::Lt)}};
    case Rel::Ne: return {{mk(c.expr, Rel::Eq)}};
    case Rel::Ge: return {{mk(c.expr, Rel::Lt)}};
    case Rel::Gt: return {{mk(c.expr, Rel::Le)}};
  }
  return {};
}

// Mutually exclusive DNF of the complement of a conjunction:
// ~c1 | (c1 & ~c2) | (c1 & c2 & ~c3) ...
inline ConstraintDNF negate(const ConstraintSet& cs) {
  ConstraintDNF out;
  ConstraintSet prefix;
  for (const auto& c : cs) {
    for (const auto& piece : negate(c)) {
      ConstraintSet d = join(prefix, piece);
      if (is_consistent(d)) out.push_back(std::move(d));
    }
    prefix.insert(c);
  }
  return out;
}

// Drops constraints implied by the rest and fuses opposite non-strict
// inequalities into equalities. Solution set is unchanged.
inline ConstraintSet simplify(const ConstraintSet& in) {
  ConstraintSet cs = in;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : cs) {
      if (c.rel != Rel::Le || c.is_ground()) continue;
      LinearConstraint opp{-c.expr, Rel::Le};
      opp.normalise();
      if (cs.count(opp)) {
        LinearConstraint eq{c.expr, Rel::Eq};
        eq.normalise();
        cs.erase(opp);
        cs.erase(c);
        cs.insert(eq);
        changed = true;
        break;
      }
    }
  }
  std::vector<LinearConstraint> order(cs.begin(), cs.end());
  for (const auto& c : order) {
    ConstraintSet rest = cs;
    rest.erase(c);
    bool implied = true;
    for (const auto& piece : negate(c)) {
      if (is_consistent(join(rest, piece))) { implied = false; break; }
    }
    if (implied) cs = std::move(rest);
  }
  return cs;
}

// Makes disjuncts pairwise exclusive by subtracting earlier disjuncts.
inline ConstraintDNF make_exclusive(const ConstraintDNF& ds) {
  ConstraintDNF out;
  std::vector<ConstraintDNF> negs;
  for (const auto& d : ds) {
    if (!is_consistent(d)) continue;
    ConstraintDNF pieces{d};
    for (const auto& n : negs) {
      ConstraintDNF next;
      for (const auto& p : pieces)
        for (const auto& q : n) {
          ConstraintSet r = join(p, q);
          if (is_consistent(r)) next.push_back(std::move(r));
        }
      pieces = std::move(next);
    }
    for (auto& p : pieces) out.push_back(simplify(p));
    negs.push_back(negate(d));
  }
  return out;
}

inline ConstraintDNF project(const ConstraintSet& cs, const VarSet& keep) {
  using namespace detail;
  if (!is_consistent(cs)) throw InconsistentInput("project: inconsistent input " + to_string(cs));
  auto dropped = [&](const std::string& v) { return keep.count(v) == 0; };
  Split s = eliminate_equalities(cs, dropped);

  std::vector<LinearConstraint> split_nes, kept_nes;
  for (const auto& ne : s.nes) {
    VarSet vs;
    ne.collect_vars(vs);
    bool local = std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return keep.count(v); });
    (local ? kept_nes : split_nes).push_back(ne);
  }

  ConstraintDNF raw;
  size_t branches = size_t(1) << split_nes.size();
  for (size_t mask = 0; mask < branches; ++mask) {
    auto rows = s.ineqs;
    for (size_t i = 0; i < split_nes.size(); ++i) {
      LinearTerm e = (mask >> i) & 1 ? -split_nes[i].expr : split_nes[i].expr;
      rows.push_back(Ineq{e.coeffs, e.constant, true});
    }
    auto projected = fm_eliminate(rows, dropped);
    if (!projected) continue;
    ConstraintSet d;
    for (const auto& q : *projected) d.insert(from_ineq(q));
    for (const auto& e : s.eqs) d.insert(e);
    for (const auto& n : kept_nes) d.insert(n);
    if (is_consistent(d)) raw.push_back(simplify(d));
  }
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return make_exclusive(raw);
}

namespace detail {
// region & ~(p1 | p2 | ...) is empty
inline bool covered(const ConstraintSet& region, const ConstraintDNF& p, size_t i) {
  if (i == p.size()) return !is_consistent(region);
  if (p[i].empty()) return true;
  for (const auto& piece : negate(p[i])) {
    ConstraintSet r = join(region, piece);
    if (is_consistent(r) && !covered(r, p, i + 1)) return false;
  }
  return true;
}
}  // namespace detail

// Every solution of `region` satisfies one of the disjuncts.
inline bool covered_by(const ConstraintSet& region, const ConstraintDNF& p) {
  if (!is_consistent(region)) return true;
  return detail::covered(region, p, 0);
}

inline bool entails_projected(const ConstraintSet& d, const ConstraintSet& c, const VarSet& keep) {
  if (!is_consistent(d)) return true;
  if (!is_consistent(c)) return false;
  return covered_by(d, project(c, keep));
}

inline ConstraintDNF project_dnf(const ConstraintDNF& p, const VarSet& keep) {
  ConstraintDNF out;
  for (const auto& d : p) {
    if (!is_consistent(d)) continue;
    for (auto& x : project(d, keep)) out.push_back(std::move(x));
  }
  return out;
}

inline bool equivalent_dnf(const ConstraintDNF& p, const ConstraintDNF& q, const VarSet& keep) {
  ConstraintDNF pp = project_dnf(p, keep), qq = project_dnf(q, keep);
  for (const auto& d : pp)
    if (!covered_by(d, qq)) return false;
  for (const auto& d : qq)
    if (!covered_by(d, pp)) return false;
  return true;
}

inline bool equivalent_dnf(const ConstraintDNF& p, const ConstraintDNF& q) {
  VarSet keep;
  for (const auto& d : p) for (const auto& v : vars_of(d)) keep.insert(v);
  for (const auto& d : q) for (const auto& v : vars_of(d)) keep.insert(v);
  return equivalent_dnf(p, q, keep);
}

// Exclusive, consistent DNF of  ~exists_{-shared}(c) & d.
inline ConstraintDNF constraint_split(const ConstraintSet& c, const ConstraintSet& d, const VarSet& shared) {
  if (!is_consistent(c)) throw InconsistentInput("constraint_split: inconsistent " + to_string(c));
  if (!is_consistent(d)) throw InconsistentInput("constraint_split: inconsistent " + to_string(d));
  ConstraintDNF pieces{d};
  for (const auto& pj : project(c, shared)) {
    ConstraintDNF next;
    for (const auto& p : pieces)
      for (const auto& q : negate(pj)) {
        ConstraintSet r = join(p, q);
        if (is_consistent(r)) next.push_back(std::move(r));
      }
    pieces = std::move(next);
  }
  for (auto& p : pieces) p = simplify(p);
  return pieces;
}

inline ConstraintDNF constraint_split(const ConstraintSet& c, const ConstraintSet& d) {
  VarSet vc = vars_of(c), vd = vars_of(d), shared;
  std::set_intersection(vc.begin(), vc.end(), vd.begin(), vd.end(), std::inserter(shared, shared.end()));
  return constraint_split(c, d, shared);
}

inline bool eval_ground(const ConstraintSet& cs) {
  for (const auto& c : cs)
    if (!c.is_ground()) throw NonGroundInput("eval_ground: " + to_string(c) + " has variables");
  for (const auto& c : cs)
    if (!c.holds_ground()) return false;
  return true;
}

inline bool holds(const ConstraintSet& cs, const std::map<std::string, Rational>& env) {
  for (const auto& c : cs)
    if (!c.holds(env)) return false;
  return true;
}

// Closed-or-open interval; a missing end is unbounded.
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_open = false, hi_open = false;

  static Interval point(const Rational& q) { return Interval{q, q, false, false}; }
  bool empty() const { return lo && hi && (*hi < *lo || (*hi == *lo && (lo_open || hi_open))); }
};

inline bool disjoint(const Interval& a, const Interval& b) {
  auto before = [](const Interval& x, const Interval& y) {
    return x.hi && y.lo && (*x.hi < *y.lo || (*x.hi == *y.lo && (x.hi_open || y.lo_open)));
  };
  return a.empty() || b.empty() || before(a, b) || before(b, a);
}

// Smallest interval containing every value `v` takes in a solution of cs.
inline Interval hull(const ConstraintSet& cs, const std::string& v) {
  if (!is_consistent(cs)) return Interval{Rational(1), Rational(0)};
  Interval out;
  bool first = true;
  for (const auto& d : project(cs, {v})) {
    Interval x;
    for (const auto& c : d) {
      if (c.expr.coeffs.empty() || c.rel == Rel::Ne) continue;
      Rational a = c.expr.coeffs.begin()->second, k = -c.expr.constant / a;
      bool open = c.rel == Rel::Lt;
      auto tighten_hi = [&] {
        if (!x.hi || k < *x.hi || (k == *x.hi && open)) { x.hi = k; x.hi_open = open; }
      };
      auto tighten_lo = [&] {
        if (!x.lo || k > *x.lo || (k == *x.lo && open)) { x.lo = k; x.lo_open = open; }
      };
      if (c.rel == Rel::Eq) {
        open = false;
        tighten_hi();
        tighten_lo();
      } else if (a > 0) {
        tighten_hi();
      } else {
        tighten_lo();
      }
    }
    if (first) {
      out = x;
      first = false;
      continue;
    }
    if (!x.lo || (out.lo && (*x.lo < *out.lo || (*x.lo == *out.lo && !x.lo_open)))) {
      out.lo = x.lo;
      out.lo_open = x.lo_open;
    }
    if (!x.hi || (out.hi && (*x.hi > *out.hi || (*x.hi == *out.hi && !x.hi_open)))) {
      out.hi = x.hi;
      out.hi_open = x.hi_open;
    }
  }
  return out;
}

}  // namespace caba
