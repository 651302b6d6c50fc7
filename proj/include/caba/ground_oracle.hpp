#pragma once

// Grounding over a finite universe into a classical ABA framework, used to
// cross-validate the native (symbolic) pipeline.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "caba/arguments.hpp"
#include "caba/attacks.hpp"
#include "caba/equivalence.hpp"
#include "caba/framework.hpp"
#include "caba/semantics.hpp"
#include "caba/splitting.hpp"

namespace caba {

using Universe = std::vector<Rational>;  // sorted, no duplicates

inline std::string to_string(const Universe& u) {
  std::string out = "{";
  for (size_t i = 0; i < u.size(); ++i) out += (i ? "," : "") + to_string(u[i]);
  return out + "}";
}

// "lo..hi" (integers) or a comma separated list of rationals.
inline Universe parse_universe(const std::string& text) {
  Universe u;
  auto number = [&](std::string s) {
    LinearTerm t;
    try {
      t = parse_term(s);
    } catch (const ParseError&) {
      throw ValidationError("bad universe element '" + s + "'");
    }
    if (!t.is_ground()) throw ValidationError("bad universe element '" + s + "'");
    return t.constant;
  };
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    Rational lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo.get_den() != 1 || hi.get_den() != 1) throw ValidationError("range bounds must be integers");
    if (hi < lo) throw ValidationError("empty universe range " + text);
    if (hi - lo > 100000) throw ValidationError("universe range too large");
    for (Rational x = lo; x <= hi; x += 1) u.push_back(x);
  } else {
    size_t start = 0;
    while (start <= text.size()) {
      size_t comma = text.find(',', start);
      if (comma == std::string::npos) comma = text.size();
      u.push_back(number(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (u.empty()) throw ValidationError("empty universe");
  return u;
}

struct GroundRule {
  std::string id;
  GroundAtom head;
  std::vector<GroundAtom> body;

  friend bool operator<(const GroundRule& a, const GroundRule& b) {
    if (!(a.head == b.head)) return a.head < b.head;
    if (a.body != b.body) return a.body < b.body;
    return a.id < b.id;
  }
  friend bool operator==(const GroundRule& a, const GroundRule& b) {
    return a.id == b.id && a.head == b.head && a.body == b.body;
  }
};

inline std::string to_string(const GroundRule& r) {
  std::string out = to_string(r.head);
  if (r.body.empty()) return out + ".";
  out += " <- ";
  for (size_t i = 0; i < r.body.size(); ++i) out += (i ? ", " : "") + to_string(r.body[i]);
  return out + ".";
}

struct GroundAbaFramework {
  std::set<GroundRule> rules;
  std::set<GroundAtom> assumptions;
  std::map<GroundAtom, GroundAtom> contrary;
  Universe universe;
};

inline constexpr size_t kDefaultArgumentCap = 2000;

namespace detail {

inline Universe effective_universe(const CabaFramework& f, const Universe& u) {
  if (!f.domain) return u;
  Universe out;
  for (const auto& x : u)
    if (x >= f.domain->lo && x <= f.domain->hi) out.push_back(x);
  return out;
}

inline bool in_universe(const GroundAtom& a, const Universe& u) {
  for (const auto& x : a.args)
    if (!std::binary_search(u.begin(), u.end(), x)) return false;
  return true;
}

inline void tuples(size_t n, const Universe& u, std::vector<Rational>& cur,
                   const std::function<void(const std::vector<Rational>&)>& fn) {
  if (cur.size() == n) { fn(cur); return; }
  for (const auto& x : u) {
    cur.push_back(x);
    tuples(n, u, cur, fn);
    cur.pop_back();
  }
}

}  // namespace detail

// Rule instances whose constraints hold and whose atoms stay inside the
// universe. A declared domain narrows the universe.
inline GroundAbaFramework ground(const CabaFramework& f, const Universe& universe) {
  GroundAbaFramework g;
  g.universe = detail::effective_universe(f, universe);
  for (const auto& r : f.rules) {
    VarSet vs = r.vars();
    std::vector<std::string> vars(vs.begin(), vs.end());
    for_each_solution(vars, r.constraints, g.universe, [&](const std::map<std::string, Rational>& env) {
      GroundRule gr{r.id, evaluate(r.head, env), {}};
      if (!detail::in_universe(gr.head, g.universe)) return;
      for (const auto& b : r.body) {
        gr.body.push_back(evaluate(b, env));
        if (!detail::in_universe(gr.body.back(), g.universe)) return;
      }
      g.rules.insert(std::move(gr));
    });
  }
  for (const auto& d : f.assumptions) {
    std::vector<Rational> cur;
    detail::tuples(d.arity, g.universe, cur, [&](const std::vector<Rational>& t) {
      GroundAtom a{d.pred, t}, c{d.contrary, t};
      g.assumptions.insert(a);
      g.contrary[a] = c;
    });
  }
  return g;
}

// Every (claim, support) pair obtainable from a derivation tree.
inline std::set<GroundArgument> classical_arguments(const GroundAbaFramework& g, size_t cap = kDefaultArgumentCap) {
  using Support = std::set<GroundAtom>;
  std::map<GroundAtom, std::set<Support>> supports;
  size_t total = 0;
  for (const auto& a : g.assumptions) {
    supports[a].insert(Support{a});
    ++total;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (g.assumptions.count(r.head)) continue;
      std::vector<Support> acc{Support{}};
      for (const auto& b : r.body) {
        auto it = supports.find(b);
        if (it == supports.end()) { acc.clear(); break; }
        std::vector<Support> next;
        for (const auto& s : acc)
          for (const auto& t : it->second) {
            Support u = s;
            u.insert(t.begin(), t.end());
            next.push_back(std::move(u));
          }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        acc = std::move(next);
      }
      for (auto& s : acc)
        if (supports[r.head].insert(std::move(s)).second) {
          changed = true;
          if (++total > cap)
            throw UniverseTooLarge("more than " + std::to_string(cap) + " ground arguments");
        }
    }
  }
  std::set<GroundArgument> out;
  for (const auto& [claim, ss] : supports)
    for (const auto& s : ss) out.insert(GroundArgument{claim, s});
  return out;
}

inline bool classically_attacks(const GroundAbaFramework& g, const GroundArgument& a, const GroundArgument& b) {
  for (const auto& s : b.assumptions) {
    auto it = g.contrary.find(s);
    if (it != g.contrary.end() && it->second == a.claim) return true;
  }
  return false;
}

inline std::vector<std::pair<GroundArgument, GroundArgument>> classical_attacks(
    const GroundAbaFramework& g, const std::set<GroundArgument>& args) {
  std::vector<std::pair<GroundArgument, GroundArgument>> out;
  for (const auto& a : args)
    for (const auto& b : args)
      if (classically_attacks(g, a, b)) out.emplace_back(a, b);
  return out;
}

inline std::vector<std::set<GroundArgument>> classical_extensions(const GroundAbaFramework& g, Semantics sem,
                                                                   size_t cap = kDefaultArgumentCap) {
  auto args = classical_arguments(g, cap);
  std::vector<GroundArgument> v(args.begin(), args.end());
  std::vector<std::vector<size_t>> att(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (classically_attacks(g, v[i], v[j])) att[j].push_back(i);
  std::vector<std::set<GroundArgument>> out;
  for (const auto& ms : enumerate_af(v.size(), att, sem)) {
    std::set<GroundArgument> e;
    for (size_t m : ms) e.insert(v[m]);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class Verdict { ExactMatch, Partial, Mismatch };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "EXACT-MATCH";
    case Verdict::Partial: return "PARTIAL";
    case Verdict::Mismatch: return "MISMATCH";
  }
  return "?";
}

struct Report {
  Verdict verdict = Verdict::ExactMatch;
  bool bounded = true;
  std::string mode;
  size_t native_count = 0;
  size_t classical_count = 0;
  std::string witness;  // first discrepancy, empty on agreement
};

inline std::string to_string(const Report& r) {
  std::string out = std::string(to_string(r.verdict)) + " mode=" + r.mode + " native=" +
                    std::to_string(r.native_count) + " classical=" + std::to_string(r.classical_count);
  if (!r.bounded) out += " (unbounded: falsification only)";
  if (!r.witness.empty()) out += "\n  witness: " + r.witness;
  return out;
}

enum class CheckMode { Arguments, Attacks, Extension };

inline std::optional<CheckMode> parse_check_mode(const std::string& s) {
  if (s == "arguments") return CheckMode::Arguments;
  if (s == "attacks") return CheckMode::Attacks;
  if (s == "extension" || s == "extensions") return CheckMode::Extension;
  return std::nullopt;
}

namespace detail {

// For an integer range only the convex hull is tested, so non-integer points
// inside the hull are not seen by the oracle.
inline ConstraintDNF membership(const std::string& v, const Universe& u) {
  bool range = true;
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i].get_den() != 1 || (i && u[i] != u[i - 1] + 1)) range = false;
  LinearTerm x = LinearTerm::var(v);
  if (range)
    return {{make_constraint(x, Rel::Ge, LinearTerm(u.front())), make_constraint(x, Rel::Le, LinearTerm(u.back()))}};
  ConstraintDNF out;
  for (const auto& q : u) out.push_back({make_constraint(x, Rel::Eq, LinearTerm(q))});
  return out;
}

inline bool confined(const ConstrainedArgument& a, const Universe& u) {
  for (const auto& v : a.vars()) {
    for (const auto& p : project(a.constraints, {v}))
      if (!covered_by(p, membership(v, u))) return false;
  }
  return true;
}

inline bool confined(const ArgumentSet& as, const Universe& u) {
  for (const auto& a : as)
    if (!confined(a, u)) return false;
  return true;
}

// Instances of `a` with every atom argument inside the universe, along with
// the assignment producing them.
inline void for_each_instance(const ConstrainedArgument& a, const Universe& u,
                              const std::function<void(const GroundArgument&, const std::map<std::string, Rational>&)>& fn) {
  VarSet vs = a.vars();
  std::vector<std::string> vars(vs.begin(), vs.end());
  for_each_solution(vars, a.constraints, u, [&](const std::map<std::string, Rational>& env) {
    GroundArgument g{evaluate(a.claim, env), {}};
    if (!in_universe(g.claim, u)) return;
    for (const auto& s : a.assumptions) {
      GroundAtom x = evaluate(s, env);
      if (!in_universe(x, u)) return;
      g.assumptions.insert(std::move(x));
    }
    fn(g, env);
  });
}

inline std::set<GroundArgument> instances(const ConstrainedArgument& a, const Universe& u) {
  std::set<GroundArgument> out;
  for_each_instance(a, u, [&](const GroundArgument& g, const auto&) { out.insert(g); });
  return out;
}

inline std::set<GroundArgument> instances(const ArgumentSet& as, const Universe& u) {
  std::set<GroundArgument> out;
  for (const auto& a : as) {
    auto g = instances(a, u);
    out.insert(g.begin(), g.end());
  }
  return out;
}

inline std::string describe(const std::set<GroundArgument>& e) {
  std::string out = "[";
  bool first = true;
  for (const auto& g : e) {
    out += (first ? "" : "; ") + to_string(g);
    first = false;
  }
  return out + "]";
}

inline Report finish(Report r) {
  if (!r.witness.empty()) r.verdict = Verdict::Mismatch;
  else r.verdict = r.bounded ? Verdict::ExactMatch : Verdict::Partial;
  return r;
}

}  // namespace detail

// Ground instances of the native arguments against the classical ones.
inline Report cross_check_arguments(const CabaFramework& f, const Universe& universe, const ArgumentSet& native,
                                    size_t cap = kDefaultArgumentCap) {
  Report r;
  r.mode = "arguments";
  auto g = ground(f, universe);
  r.bounded = detail::confined(native, g.universe);
  auto lhs = detail::instances(native, g.universe);
  auto rhs = classical_arguments(g, cap);
  r.native_count = lhs.size();
  r.classical_count = rhs.size();
  for (const auto& x : lhs)
    if (!rhs.count(x)) { r.witness = "native only: " + to_string(x); break; }
  if (r.witness.empty())
    for (const auto& x : rhs)
      if (!lhs.count(x)) { r.witness = "classical only: " + to_string(x); break; }
  return detail::finish(r);
}

// Per target assumption: a native full attack must hit every ground instance
// of the target, a partial one at least one but not all, none must hit none.
inline Report cross_check_attacks(const CabaFramework& f, const Universe& universe, const ArgumentSet& native) {
  Report r;
  r.mode = "attacks";
  auto g = ground(f, universe);
  const Universe& u = g.universe;
  r.bounded = detail::confined(native, u);
  std::vector<std::set<GroundAtom>> claims(native.size());
  for (size_t i = 0; i < native.size(); ++i)
    for (const auto& x : detail::instances(native[i], u)) claims[i].insert(x.claim);

  for (size_t i = 0; i < native.size() && r.witness.empty(); ++i)
    for (size_t j = 0; j < native.size() && r.witness.empty(); ++j)
      for (const auto& s : native[j].assumptions) {
        const auto& a = native[i];
        const auto& b = native[j];
        AttackKind nk = attack_kind_on(f, a, b, s);
        if (nk != AttackKind::None) ++r.native_count;
        size_t hit = 0, total = 0;
        const AssumptionDecl* decl = f.assumption(s.pred);
        detail::for_each_instance(b, u, [&](const GroundArgument&, const std::map<std::string, Rational>& env) {
          ++total;
          GroundAtom target = evaluate(s, env);
          if (decl && decl->contrary == a.claim.pred && claims[i].count(GroundAtom{decl->contrary, target.args})) ++hit;
        });
        AttackKind gk = hit == 0 ? AttackKind::None : hit == total ? AttackKind::Full : AttackKind::Partial;
        if (gk != AttackKind::None) ++r.classical_count;
        if (gk != nk) {
          r.witness = a.id + " on " + b.id + " [" + to_string(s) + "]: native " + to_string(nk) + ", ground " +
                      to_string(gk) + " (" + std::to_string(hit) + "/" + std::to_string(total) + " instances hit)";
          break;
        }
      }
  return detail::finish(r);
}

// Native extensions over `basis`, grounded, against the classical extensions.
inline Report cross_check_extensions(const CabaFramework& f, const Universe& universe, const ArgumentSet& basis,
                                     const std::vector<Extension>& native, Semantics sem,
                                     size_t cap = kDefaultArgumentCap) {
  Report r;
  r.mode = "extension";
  auto g = ground(f, universe);
  r.bounded = detail::confined(basis, g.universe);
  std::set<std::set<GroundArgument>> lhs;
  for (const auto& e : native) lhs.insert(detail::instances(members_of(e, basis), g.universe));
  auto ext = classical_extensions(g, sem, cap);
  std::set<std::set<GroundArgument>> rhs(ext.begin(), ext.end());
  r.native_count = lhs.size();
  r.classical_count = rhs.size();
  for (const auto& e : lhs)
    if (r.witness.empty() && !rhs.count(e)) r.witness = "native only: " + detail::describe(e);
  for (const auto& e : rhs)
    if (r.witness.empty() && !lhs.count(e)) r.witness = "classical only: " + detail::describe(e);
  return detail::finish(r);
}

// Runs the native pipeline itself and checks the requested stage.
inline Report cross_check(const CabaFramework& f, const Universe& universe, CheckMode mode,
                          Semantics sem = Semantics::Stable, size_t max_depth = 16,
                          size_t max_iters = kDefaultMaxIters, size_t cap = kDefaultArgumentCap) {
  ArgumentSet args = build_mgcarg_strict(f, max_depth);
  switch (mode) {
    case CheckMode::Arguments: return cross_check_arguments(f, universe, args, cap);
    case CheckMode::Attacks: return cross_check_attacks(f, universe, args);
    case CheckMode::Extension: {
      ArgumentSet basis = argument_splitting(f, args, max_iters).args;
      auto ext = enumerate_extensions(f, basis, sem, "split");
      return cross_check_extensions(f, universe, basis, ext, sem, cap);
    }
  }
  return {};
}

}  // namespace caba
