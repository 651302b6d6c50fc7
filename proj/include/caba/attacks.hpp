#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "caba/arguments.hpp"
#include "caba/framework.hpp"

namespace caba {

enum class AttackKind { None = 0, Partial = 1, Full = 2 };

inline const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::None: return "none";
    case AttackKind::Partial: return "partial";
    case AttackKind::Full: return "full";
  }
  return "?";
}

struct AttackEdge {
  std::string attacker;
  std::string target;
  AttackKind kind = AttackKind::None;
  Atom target_assumption;
};

inline std::string to_string(const AttackEdge& e) {
  return e.attacker + " =" + to_string(e.kind) + "=> " + e.target + " [on " + to_string(e.target_assumption) + "]";
}

namespace detail {

// Attacker and target renamed apart and linked through fresh variables
// X = t (attacker claim) and X = u (target assumption).
struct AttackProblem {
  ConstraintSet c;  // attacker side
  ConstraintSet d;  // target side
  VarSet link;      // the X variables
  std::map<std::string, std::string> target_renaming;
};

inline AttackProblem attack_problem(const ConstrainedArgument& a, const ConstrainedArgument& b, const Atom& on) {
  AttackProblem p;
  std::map<std::string, std::string> ma, mb;
  size_t k = 0;
  for (const auto& v : a.vars()) ma[v] = "_a" + std::to_string(k++);
  k = 0;
  for (const auto& v : b.vars()) mb[v] = "_b" + std::to_string(k++);
  Atom claim = a.claim.rename(ma);
  Atom target = on.rename(mb);
  p.c = rename(a.constraints, ma);
  p.d = rename(b.constraints, mb);
  for (size_t i = 0; i < claim.args.size(); ++i) {
    std::string x = "_x" + std::to_string(i);
    p.link.insert(x);
    p.c.insert(make_constraint(LinearTerm::var(x), Rel::Eq, claim.args[i]));
    p.d.insert(make_constraint(LinearTerm::var(x), Rel::Eq, target.args[i]));
  }
  p.target_renaming = std::move(mb);
  return p;
}

}  // namespace detail

// Kind of attack of `a` on the single assumption `on` of `b`.
inline AttackKind attack_kind_on(const CabaFramework& f, const ConstrainedArgument& a, const ConstrainedArgument& b,
                                 const Atom& on) {
  const AssumptionDecl* decl = f.assumption(on.pred);
  if (!decl || decl->contrary != a.claim.pred || !b.assumptions.count(on)) return AttackKind::None;
  auto p = detail::attack_problem(a, b, on);
  if (!is_consistent(join(p.c, p.d))) return AttackKind::None;
  return entails_projected(p.d, p.c, p.link) ? AttackKind::Full : AttackKind::Partial;
}

// Strongest kind over all assumptions of `b`.
inline AttackKind attack_kind(const CabaFramework& f, const ConstrainedArgument& a, const ConstrainedArgument& b) {
  AttackKind best = AttackKind::None;
  for (const auto& s : b.assumptions) {
    best = std::max(best, attack_kind_on(f, a, b, s));
    if (best == AttackKind::Full) break;
  }
  return best;
}

inline bool fully_attacks(const CabaFramework& f, const ConstrainedArgument& a, const ConstrainedArgument& b) {
  return attack_kind(f, a, b) == AttackKind::Full;
}

inline bool partially_attacks(const CabaFramework& f, const ConstrainedArgument& a, const ConstrainedArgument& b) {
  return attack_kind(f, a, b) != AttackKind::None;
}

inline std::vector<AttackEdge> attack_graph(const CabaFramework& f, const ArgumentSet& args) {
  std::vector<AttackEdge> out;
  for (const auto& a : args) {
    if (f.attacked_by(a.claim.pred).empty()) continue;
    for (const auto& b : args)
      for (const auto& s : b.assumptions) {
        AttackKind k = attack_kind_on(f, a, b, s);
        if (k != AttackKind::None) out.push_back(AttackEdge{a.id, b.id, k, s});
      }
  }
  return out;
}

// Pair-level kind derived from per-assumption edges.
inline AttackKind pair_kind(const std::vector<AttackEdge>& edges, const std::string& a, const std::string& b) {
  AttackKind best = AttackKind::None;
  for (const auto& e : edges)
    if (e.attacker == a && e.target == b) best = std::max(best, e.kind);
  return best;
}

// Memoises pair-level attack kinds keyed by argument content.
class AttackCache {
public:
  explicit AttackCache(const CabaFramework& f) : f_(f) {}

  AttackKind kind(const ConstrainedArgument& a, const ConstrainedArgument& b) {
    auto key = std::make_pair(to_string(a), to_string(b));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    AttackKind k = AttackKind::None;
    for (const auto& s : b.assumptions) {
      const AssumptionDecl* decl = f_.assumption(s.pred);
      if (!decl || decl->contrary != a.claim.pred || apart(key, a, b, s)) continue;
      k = std::max(k, attack_kind_on(f_, a, b, s));
      if (k == AttackKind::Full) break;
    }
    memo_.emplace(std::move(key), k);
    return k;
  }

  const CabaFramework& framework() const { return f_; }

private:
  // some linked coordinate ranges cannot meet
  bool apart(const std::pair<std::string, std::string>& key, const ConstrainedArgument& a,
             const ConstrainedArgument& b, const Atom& s) {
    for (size_t i = 0; i < s.args.size() && i < a.claim.args.size(); ++i)
      if (disjoint(boxes_.of(key.first, a.constraints, a.claim.args[i]),
                   boxes_.of(key.second, b.constraints, s.args[i])))
        return true;
    return false;
  }

  const CabaFramework& f_;
  std::map<std::pair<std::string, std::string>, AttackKind> memo_;
  BoxCache boxes_;
};

}  // namespace caba
