#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "caba/constraint_theory.hpp"
#include "caba/framework.hpp"

namespace caba {

struct DerivationNode {
  Atom atom;
  std::string rule;  // empty for an assumption leaf
  std::vector<DerivationNode> children;
};

struct ConstrainedArgument {
  std::string id;
  Atom claim;
  ConstraintSet constraints;
  std::set<Atom> assumptions;
  std::set<std::string> rules;
  std::optional<DerivationNode> derivation;  // not part of equality

  VarSet vars() const {
    VarSet v = vars_of(constraints);
    claim.collect_vars(v);
    for (const auto& a : assumptions) a.collect_vars(v);
    return v;
  }
  VarSet visible_vars() const {
    VarSet v;
    claim.collect_vars(v);
    for (const auto& a : assumptions) a.collect_vars(v);
    return v;
  }

  friend bool operator==(const ConstrainedArgument& a, const ConstrainedArgument& b) {
    return a.claim == b.claim && a.constraints == b.constraints && a.assumptions == b.assumptions &&
           a.rules == b.rules;
  }
};

using ArgumentSet = std::vector<ConstrainedArgument>;

inline std::string to_string(const ConstrainedArgument& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : a.constraints) {
    out += (first ? "" : ", ") + to_string(c);
    first = false;
  }
  out += " ;";
  first = true;
  for (const auto& s : a.assumptions) {
    out += (first ? " " : ", ") + to_string(s);
    first = false;
  }
  out += "} |-{";
  first = true;
  for (const auto& r : a.rules) {
    out += (first ? "" : ",") + r;
    first = false;
  }
  return out + "} " + to_string(a.claim);
}

inline ConstrainedArgument rename(const ConstrainedArgument& a, const std::map<std::string, std::string>& m) {
  ConstrainedArgument b = a;
  b.claim = a.claim.rename(m);
  b.constraints = caba::rename(a.constraints, m);
  b.assumptions.clear();
  for (const auto& s : a.assumptions) b.assumptions.insert(s.rename(m));
  b.derivation.reset();
  return b;
}

// Renames every variable to `prefix` + k in a deterministic order.
inline ConstrainedArgument rename_apart(const ConstrainedArgument& a, const std::string& prefix) {
  std::map<std::string, std::string> m;
  size_t k = 0;
  for (const auto& v : a.vars()) m[v] = prefix + std::to_string(k++);
  return rename(a, m);
}

namespace detail {
inline void order_vars(const LinearTerm& t, std::vector<std::string>& order, std::set<std::string>& seen) {
  for (const auto& kv : t.coeffs)
    if (seen.insert(kv.first).second) order.push_back(kv.first);
}
}  // namespace detail

// V0, V1, ... by first appearance in claim, assumptions, constraints.
inline ConstrainedArgument canonicalise(const ConstrainedArgument& a) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& t : a.claim.args) detail::order_vars(t, order, seen);
  for (const auto& s : a.assumptions)
    for (const auto& t : s.args) detail::order_vars(t, order, seen);
  for (const auto& c : a.constraints) detail::order_vars(c.expr, order, seen);
  std::map<std::string, std::string> m;
  // go through temporaries so V-names already present cannot collide
  for (size_t i = 0; i < order.size(); ++i) m[order[i]] = "\x01" + std::to_string(i);
  ConstrainedArgument b = rename(a, m);
  std::map<std::string, std::string> m2;
  for (size_t i = 0; i < order.size(); ++i) m2["\x01" + std::to_string(i)] = "V" + std::to_string(i);
  ConstrainedArgument c = rename(b, m2);
  c.derivation = a.derivation;
  return c;
}

// ---------------------------------------------------------------------------
// MGCArg construction

struct MgcResult {
  ArgumentSet args;
  bool complete = true;
};

namespace detail {

inline bool has_cycle(const CabaFramework& f) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& r : f.rules)
    for (const auto& b : r.body)
      if (!f.is_assumption(b.pred)) edges[r.head.pred].insert(b.pred);
  std::map<std::string, int> state;
  std::function<bool(const std::string&)> dfs = [&](const std::string& p) {
    int& s = state[p];
    if (s == 1) return true;
    if (s == 2) return false;
    s = 1;
    for (const auto& q : edges[p])
      if (dfs(q)) return true;
    state[p] = 2;
    return false;
  };
  for (const auto& [p, _] : edges)
    if (dfs(p)) return true;
  return false;
}

struct Partial {
  std::vector<LinearConstraint> constraints;  // insertion order
  std::vector<Atom> assumptions;              // derivation order
  std::set<std::string> rules;
  std::vector<DerivationNode> trees;
};

class Builder {
public:
  Builder(const CabaFramework& f, size_t max_depth)
      : f_(normalise(f)), cyclic_(has_cycle(f_)), max_depth_(max_depth) {}

  bool complete = true;

  std::string fresh() { return "_v" + std::to_string(counter_++); }

  ConstraintSet domain_bounds(const VarSet& vs) const {
    ConstraintSet out;
    if (!f_.domain) return out;
    for (const auto& v : vs) {
      out.insert(make_constraint(LinearTerm::var(v), Rel::Ge, LinearTerm(f_.domain->lo)));
      out.insert(make_constraint(LinearTerm::var(v), Rel::Le, LinearTerm(f_.domain->hi)));
    }
    return out;
  }

  static ConstraintSet as_set(const std::vector<LinearConstraint>& v) { return ConstraintSet(v.begin(), v.end()); }

  // all derivations of `goal`, each consistent together with `context`
  std::vector<Partial> solve(const Atom& goal, size_t depth) {
    std::vector<Partial> out;
    if (f_.is_assumption(goal.pred)) {
      Partial p;
      p.assumptions.push_back(goal);
      p.trees.push_back(DerivationNode{goal, "", {}});
      out.push_back(std::move(p));
      return out;
    }
    for (const auto& r : f_.rules) {
      if (r.head.pred != goal.pred) continue;
      if (cyclic_ && depth >= max_depth_) {
        complete = false;
        continue;
      }
      // rename apart, then bind head variables to the goal arguments
      std::map<std::string, LinearTerm> s;
      VarSet rv = r.vars();
      for (const auto& v : rv) s[v] = LinearTerm::var(fresh());
      for (size_t i = 0; i < r.head.args.size(); ++i) {
        auto hv = r.head.args[i].as_variable();
        s[*hv] = goal.args[i];
      }
      Partial base;
      base.rules.insert(r.id);
      for (const auto& c : r.constraints) base.constraints.push_back(c.substitute(s));
      VarSet local;
      for (const auto& v : rv) {
        auto hv = std::find_if(r.head.args.begin(), r.head.args.end(),
                               [&](const LinearTerm& t) { return t.as_variable() == v; });
        if (hv == r.head.args.end()) s[v].collect_vars(local);
      }
      for (const auto& c : domain_bounds(local)) base.constraints.push_back(c);
      if (!is_consistent(as_set(base.constraints))) continue;

      std::vector<Partial> partials{base};
      std::vector<Atom> body;
      for (const auto& b : r.body) body.push_back(b.substitute(s));
      for (const auto& b : body) {
        std::vector<Partial> subs = solve(b, depth + 1);
        std::vector<Partial> next;
        for (const auto& p : partials)
          for (const auto& q : subs) {
            Partial m = p;
            m.constraints.insert(m.constraints.end(), q.constraints.begin(), q.constraints.end());
            if (!q.constraints.empty() && !is_consistent(as_set(m.constraints))) continue;
            m.assumptions.insert(m.assumptions.end(), q.assumptions.begin(), q.assumptions.end());
            m.rules.insert(q.rules.begin(), q.rules.end());
            m.trees.insert(m.trees.end(), q.trees.begin(), q.trees.end());
            next.push_back(std::move(m));
          }
        partials = std::move(next);
        if (partials.empty()) break;
      }
      for (auto& p : partials) {
        DerivationNode node{goal, r.id, std::move(p.trees)};
        p.trees.clear();
        p.trees.push_back(std::move(node));
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  MgcResult run() {
    MgcResult res;
    std::vector<std::string> preds = f_.head_predicates();
    for (const auto& a : f_.assumptions) preds.push_back(a.pred);
    auto sig = f_.signature();
    std::vector<ConstrainedArgument> all;
    for (const auto& p : preds) {
      Atom goal{p, {}};
      VarSet gv;
      for (size_t i = 0; i < sig[p]; ++i) {
        std::string v = fresh();
        goal.args.push_back(LinearTerm::var(v));
        gv.insert(v);
      }
      ConstraintSet bounds = domain_bounds(gv);
      for (auto& part : solve(goal, 0)) {
        std::vector<LinearConstraint> cs(bounds.begin(), bounds.end());
        cs.insert(cs.end(), part.constraints.begin(), part.constraints.end());
        if (!bounds.empty() && !is_consistent(as_set(cs))) continue;
        ConstrainedArgument a = finish(goal, cs, part);
        if (std::find(all.begin(), all.end(), a) == all.end()) all.push_back(std::move(a));
      }
    }
    for (size_t i = 0; i < all.size(); ++i) all[i].id = "α" + std::to_string(i + 1);
    res.args = std::move(all);
    res.complete = complete;
    return res;
  }

private:
  // unify variables linked by X = Y (claim variables stay), then rename
  ConstrainedArgument finish(const Atom& goal, std::vector<LinearConstraint> cs, Partial& part) {
    VarSet claim_vars;
    goal.collect_vars(claim_vars);
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const auto& t : goal.args) order_vars(t, order, seen);
    for (const auto& a : part.assumptions)
      for (const auto& t : a.args) order_vars(t, order, seen);
    for (const auto& c : cs) order_vars(c.expr, order, seen);
    std::map<std::string, size_t> rank;
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::vector<Atom> asms = part.assumptions;
    std::map<std::string, LinearTerm> applied;
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        if (c.rel != Rel::Eq || c.expr.constant != 0 || c.expr.coeffs.size() != 2) continue;
        auto it = c.expr.coeffs.begin();
        auto x = *it++;
        auto y = *it;
        if (x.second != 1 || y.second != -1) continue;
        std::string keep = x.first, drop = y.first;
        bool kc = claim_vars.count(keep), dc = claim_vars.count(drop);
        if (kc && dc) continue;
        if (dc || (!kc && rank[drop] < rank[keep])) std::swap(keep, drop);
        std::map<std::string, LinearTerm> s{{drop, LinearTerm::var(keep)}};
        std::vector<LinearConstraint> next;
        for (size_t j = 0; j < cs.size(); ++j)
          if (j != i) next.push_back(cs[j].substitute(s));
        cs = std::move(next);
        for (auto& a : asms) a = a.substitute(s);
        applied[drop] = LinearTerm::var(keep);
        for (auto& kv : applied) kv.second = kv.second.substitute(s);
        changed = true;
        break;
      }
    }
    ConstrainedArgument a;
    a.claim = goal;
    for (const auto& c : cs) {
      if (c.is_ground() && c.holds_ground()) continue;
      a.constraints.insert(c);
    }
    if (f_.domain) a.constraints = simplify(a.constraints);  // bounds are often implied
    a.assumptions.insert(asms.begin(), asms.end());
    a.rules = part.rules;
    if (!part.trees.empty()) a.derivation = substitute_tree(part.trees.front(), applied);

    // canonical names in derivation order
    order.clear();
    seen.clear();
    for (const auto& t : a.claim.args) order_vars(t, order, seen);
    for (const auto& s : asms)
      for (const auto& t : s.args) order_vars(t, order, seen);
    for (const auto& c : cs) order_vars(c.expr, order, seen);
    std::map<std::string, std::string> m;
    for (size_t i = 0; i < order.size(); ++i) m[order[i]] = "V" + std::to_string(i);
    ConstrainedArgument out = rename(a, m);
    if (a.derivation) out.derivation = rename_tree(*a.derivation, m);
    return out;
  }

  static DerivationNode substitute_tree(const DerivationNode& n, const std::map<std::string, LinearTerm>& s) {
    DerivationNode out{n.atom.substitute(s), n.rule, {}};
    for (const auto& c : n.children) out.children.push_back(substitute_tree(c, s));
    return out;
  }
  static DerivationNode rename_tree(const DerivationNode& n, const std::map<std::string, std::string>& m) {
    DerivationNode out{n.atom.rename(m), n.rule, {}};
    for (const auto& c : n.children) out.children.push_back(rename_tree(c, m));
    return out;
  }

  CabaFramework f_;
  bool cyclic_;
  size_t max_depth_;
  size_t counter_ = 0;
};

}  // namespace detail

inline MgcResult build_mgcarg(const CabaFramework& f, size_t max_depth = 16) {
  return detail::Builder(f, max_depth).run();
}

// Throws DepthExceeded instead of returning an incomplete set.
inline ArgumentSet build_mgcarg_strict(const CabaFramework& f, size_t max_depth = 16) {
  MgcResult r = build_mgcarg(f, max_depth);
  if (!r.complete) throw DepthExceeded("argument construction stopped at depth " + std::to_string(max_depth));
  return r.args;
}

// ---------------------------------------------------------------------------
// Instances

inline ConstrainedArgument constrained_instance(const ConstrainedArgument& a,
                                                const std::map<std::string, LinearTerm>& subst,
                                                const ConstraintSet& extra) {
  ConstrainedArgument b;
  b.id = a.id;
  b.claim = a.claim.substitute(subst);
  b.constraints = join(substitute(a.constraints, subst), extra);
  for (const auto& s : a.assumptions) b.assumptions.insert(s.substitute(subst));
  b.rules = a.rules;
  if (!is_consistent(b.constraints))
    throw InconsistentInstance("instance of " + a.id + " has inconsistent constraints " + to_string(b.constraints));
  return b;
}

namespace detail {
inline std::string fresh_name(VarSet& used, const std::string& base, size_t& k) {
  std::string n;
  do n = base + std::to_string(++k);
  while (used.count(n));
  used.insert(n);
  return n;
}
}  // namespace detail

// p(t) becomes p(Z) with Z = t added.
inline ConstrainedArgument generalise_claim(const ConstrainedArgument& a) {
  VarSet used = a.vars();
  size_t k = 0;
  ConstrainedArgument b = a;
  b.derivation.reset();
  for (auto& t : b.claim.args) {
    std::string z = detail::fresh_name(used, "Z", k);
    b.constraints.insert(make_constraint(LinearTerm::var(z), Rel::Eq, t));
    t = LinearTerm::var(z);
  }
  return b;
}

inline ConstrainedArgument generalise_assumption(const ConstrainedArgument& a, const Atom& which) {
  VarSet used = a.vars();
  size_t k = 0;
  ConstrainedArgument b = a;
  b.derivation.reset();
  b.assumptions.erase(which);
  Atom g{which.pred, {}};
  for (const auto& t : which.args) {
    std::string w = detail::fresh_name(used, "W", k);
    b.constraints.insert(make_constraint(LinearTerm::var(w), Rel::Eq, t));
    g.args.push_back(LinearTerm::var(w));
  }
  b.assumptions.insert(g);
  return b;
}

// ---------------------------------------------------------------------------
// Ground instances

struct GroundAtom {
  std::string pred;
  std::vector<Rational> args;

  friend bool operator==(const GroundAtom& a, const GroundAtom& b) { return a.pred == b.pred && a.args == b.args; }
  friend bool operator<(const GroundAtom& a, const GroundAtom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
    for (size_t i = 0; i < a.args.size(); ++i)
      if (a.args[i] != b.args[i]) return a.args[i] < b.args[i];
    return false;
  }
};

inline std::string to_string(const GroundAtom& a) {
  if (a.args.empty()) return a.pred;
  std::string out = a.pred + "(";
  for (size_t i = 0; i < a.args.size(); ++i) out += (i ? "," : "") + to_string(a.args[i]);
  return out + ")";
}

inline GroundAtom evaluate(const Atom& a, const std::map<std::string, Rational>& env) {
  GroundAtom g{a.pred, {}};
  for (const auto& t : a.args) g.args.push_back(t.eval(env));
  return g;
}

// Ground constraints are evaluated away, so equality modulo ground
// constraints is plain structural equality here.
struct GroundArgument {
  GroundAtom claim;
  std::set<GroundAtom> assumptions;

  friend bool operator==(const GroundArgument& a, const GroundArgument& b) {
    return a.claim == b.claim && a.assumptions == b.assumptions;
  }
  friend bool operator<(const GroundArgument& a, const GroundArgument& b) {
    if (!(a.claim == b.claim)) return a.claim < b.claim;
    return a.assumptions < b.assumptions;
  }
};

inline std::string to_string(const GroundArgument& g) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : g.assumptions) {
    out += (first ? "" : ", ") + to_string(a);
    first = false;
  }
  return out + "} |- " + to_string(g.claim);
}

// Calls `fn(env)` for every assignment of `vars` over `universe` satisfying cs.
inline void for_each_solution(const std::vector<std::string>& vars, const ConstraintSet& cs,
                              const std::vector<Rational>& universe,
                              const std::function<void(const std::map<std::string, Rational>&)>& fn) {
  // check each constraint as soon as its last variable is bound
  std::vector<std::vector<const LinearConstraint*>> due(vars.size() + 1);
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;
  for (const auto& c : cs) {
    size_t last = 0;
    for (const auto& kv : c.expr.coeffs) last = std::max(last, pos.at(kv.first) + 1);
    due[last].push_back(&c);
  }
  for (const auto* c : due[0])
    if (!c->holds_ground()) return;
  std::map<std::string, Rational> env;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == vars.size()) { fn(env); return; }
    for (const auto& u : universe) {
      env[vars[i]] = u;
      bool ok = true;
      for (const auto* c : due[i + 1])
        if (!c->holds(env)) { ok = false; break; }
      if (ok) rec(i + 1);
    }
    env.erase(vars[i]);
  };
  rec(0);
}

inline std::set<GroundArgument> ground_instances(const ConstrainedArgument& a, const std::vector<Rational>& universe) {
  std::set<GroundArgument> out;
  VarSet vs = a.vars();
  std::vector<std::string> vars(vs.begin(), vs.end());
  for_each_solution(vars, a.constraints, universe, [&](const std::map<std::string, Rational>& env) {
    GroundArgument g{evaluate(a.claim, env), {}};
    for (const auto& s : a.assumptions) g.assumptions.insert(evaluate(s, env));
    out.insert(std::move(g));
  });
  return out;
}

inline std::set<GroundArgument> ground_instances(const ArgumentSet& as, const std::vector<Rational>& universe) {
  std::set<GroundArgument> out;
  for (const auto& a : as) {
    auto g = ground_instances(a, universe);
    out.insert(g.begin(), g.end());
  }
  return out;
}

// A ground argument as a variable-free constrained argument.
inline ConstrainedArgument as_constrained(const GroundArgument& g) {
  auto atom = [](const GroundAtom& x) {
    Atom a{x.pred, {}};
    for (const auto& q : x.args) a.args.push_back(LinearTerm(q));
    return a;
  };
  ConstrainedArgument a;
  a.id = to_string(g);
  a.claim = atom(g.claim);
  for (const auto& s : g.assumptions) a.assumptions.insert(atom(s));
  return a;
}

// Per-variable hulls of argument constraints, keyed by argument rendering.
class BoxCache {
public:
  Interval of(const std::string& key, const ConstraintSet& cs, const LinearTerm& t) {
    if (t.is_ground()) return Interval::point(t.constant);
    auto v = t.as_variable();
    if (!v) return Interval{};
    auto it = memo_.find({key, *v});
    if (it != memo_.end()) return it->second;
    Interval x = hull(cs, *v);
    memo_.emplace(std::make_pair(key, *v), x);
    return x;
  }

private:
  std::map<std::pair<std::string, std::string>, Interval> memo_;
};

inline const ConstrainedArgument* find_argument(const ArgumentSet& as, const std::string& id) {
  for (const auto& a : as)
    if (a.id == id) return &a;
  return nullptr;
}

}  // namespace caba
