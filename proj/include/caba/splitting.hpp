#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "caba/arguments.hpp"
#include "caba/attacks.hpp"
#include "caba/equivalence.hpp"

namespace caba {

// Orders ids such as α2.10 after α2.9: digit runs compare numerically.
inline bool id_less(const std::string& a, const std::string& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

namespace detail {

inline ConstrainedArgument from_region(const Region& r, const ConstrainedArgument& parent, const ConstraintSet& cs) {
  ConstrainedArgument a;
  a.claim.pred = r.key.claim_pred;
  for (size_t i = 0; i < r.key.claim_arity; ++i) a.claim.args.push_back(LinearTerm::var(claim_slot(i)));
  for (size_t k = 0; k < r.key.assumption_preds.size(); ++k) {
    Atom s{r.key.assumption_preds[k].first, {}};
    for (size_t j = 0; j < r.key.assumption_preds[k].second; ++j) s.args.push_back(LinearTerm::var(asm_slot(k, j)));
    a.assumptions.insert(s);
  }
  a.constraints = cs;
  a.rules = parent.rules;
  return canonicalise(a);
}

inline void number_pieces(std::vector<ConstrainedArgument>& pieces, const std::string& parent) {
  for (size_t k = 0; k < pieces.size(); ++k) pieces[k].id = parent + "." + std::to_string(k + 1);
}

}  // namespace detail

// Pieces of `b` that share no instance with `a`.
inline ArgumentSet split_ci(const ConstrainedArgument& a, const ConstrainedArgument& b, Denotations& den) {
  if (!common_instances(a, b, den))
    throw PreconditionViolated("split_ci: " + a.id + " and " + b.id + " have no common instance");
  const auto& ra = den.of(a);
  ArgumentSet out;
  for (const auto& r : den.of(b)) {
    ConstraintDNF pieces{r.constraints};
    for (const auto& x : ra) {
      if (!(x.key == r.key)) continue;
      for (const auto& px : detail::permutations(x)) {
        ConstraintDNF next;
        for (const auto& p : pieces)
          for (const auto& q : negate(px)) {
            ConstraintSet z = join(p, q);
            if (is_consistent(z)) next.push_back(std::move(z));
          }
        pieces = std::move(next);
      }
    }
    for (const auto& p : pieces) out.push_back(detail::from_region(r, b, simplify(p)));
  }
  detail::number_pieces(out, b.id);
  return out;
}

inline ArgumentSet split_ci(const ConstrainedArgument& a, const ConstrainedArgument& b) {
  Denotations den;
  return split_ci(a, b, den);
}

namespace detail {
inline ConstrainedArgument with_constraints(const ConstrainedArgument& b, const std::map<std::string, std::string>& m,
                                            const ConstraintSet& cs) {
  ConstrainedArgument x = rename(b, m);
  x.constraints = cs;
  x.derivation.reset();
  return canonicalise(x);
}
}  // namespace detail

// beta_0 (the fully attacked part) followed by the unattacked pieces.
inline ArgumentSet split_pa(const CabaFramework& f, const ConstrainedArgument& a, const ConstrainedArgument& b) {
  const Atom* on = nullptr;
  bool full_somewhere = false;
  for (const auto& s : b.assumptions) {
    AttackKind k = attack_kind_on(f, a, b, s);
    if (k == AttackKind::Partial && !on) on = &s;
    if (k == AttackKind::Full) full_somewhere = true;
  }
  if (!on) {
    if (!full_somewhere)
      throw PreconditionViolated("split_pa: " + a.id + " does not partially attack " + b.id);
    ConstrainedArgument same = b;
    same.id = b.id + ".1";
    return {same};
  }
  auto p = detail::attack_problem(a, b, *on);
  ConstrainedArgument renamed = rename(b, p.target_renaming);
  VarSet keep = renamed.visible_vars();

  ArgumentSet out;
  for (const auto& e : project(join(p.c, p.d), keep))
    out.push_back(detail::with_constraints(b, p.target_renaming, e));
  for (const auto& e : constraint_split(p.c, p.d, p.link))
    for (const auto& s : project(e, keep)) out.push_back(detail::with_constraints(b, p.target_renaming, s));
  detail::number_pieces(out, b.id);
  return out;
}

struct SplitStep {
  std::string op;  // split_ci or split_pa
  std::string attacker;
  std::string target;
  std::vector<std::string> pieces;
};

struct SplitResult {
  ArgumentSet args;
  std::vector<SplitStep> log;
};

inline constexpr size_t kDefaultMaxIters = 10000;

// Violating pairs are kept in (attacker id, target id) order; after each
// repair only pairs involving the new pieces are examined.
inline SplitResult argument_splitting(const CabaFramework& f, const ArgumentSet& input,
                                      size_t max_iters = kDefaultMaxIters) {
  struct PairLess {
    bool operator()(const std::pair<std::string, std::string>& x, const std::pair<std::string, std::string>& y) const {
      if (x.first != y.first) return id_less(x.first, y.first);
      return id_less(x.second, y.second);
    }
  };
  using Pairs = std::set<std::pair<std::string, std::string>, PairLess>;

  SplitResult res;
  ArgumentSet work = input;
  Denotations den;
  AttackCache cache(f);
  Pairs ci, pa;

  auto find = [&](const std::string& id) {
    for (size_t i = 0; i < work.size(); ++i)
      if (work[i].id == id) return i;
    throw PreconditionViolated("argument_splitting: lost argument " + id);
  };
  auto examine = [&](const ConstrainedArgument& a, const ConstrainedArgument& b) {
    if (a.id != b.id && common_instances(a, b, den))
      ci.insert(id_less(a.id, b.id) ? std::make_pair(a.id, b.id) : std::make_pair(b.id, a.id));
    if (cache.kind(a, b) == AttackKind::Partial) pa.emplace(a.id, b.id);
    if (a.id != b.id && cache.kind(b, a) == AttackKind::Partial) pa.emplace(b.id, a.id);
  };
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = i; j < work.size(); ++j) examine(work[i], work[j]);

  auto replace = [&](const std::string& id, ArgumentSet pieces) {
    auto drop = [&](Pairs& ps) {
      for (auto it = ps.begin(); it != ps.end();)
        it = (it->first == id || it->second == id) ? ps.erase(it) : std::next(it);
    };
    drop(ci);
    drop(pa);
    size_t at = find(id);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(at));
    std::vector<std::string> names;
    for (const auto& p : pieces) names.push_back(p.id);
    work.insert(work.begin() + static_cast<std::ptrdiff_t>(at), pieces.begin(), pieces.end());
    for (size_t k = 0; k < pieces.size(); ++k) {
      const auto& p = work[at + k];
      for (size_t j = 0; j < work.size(); ++j)
        if (j < at || j >= at + k) examine(p, work[j]);
    }
    return names;
  };

  for (size_t iter = 0; !ci.empty() || !pa.empty(); ++iter) {
    if (iter >= max_iters)
      throw IterationLimit("argument splitting did not settle after " + std::to_string(max_iters) + " repairs");
    if (!ci.empty()) {
      auto [x, y] = *ci.begin();
      const auto& a = work[find(x)];
      const auto& b = work[find(y)];
      // the larger canonical rendering is the one replaced
      std::string ra = to_string(canonicalise(a)), rb = to_string(canonicalise(b));
      bool b_replaced = ra < rb || (ra == rb && id_less(a.id, b.id));
      const auto& keep = b_replaced ? a : b;
      const auto& repl = b_replaced ? b : a;
      SplitStep step{"split_ci", keep.id, repl.id, {}};
      ArgumentSet pieces = split_ci(keep, repl, den);
      step.pieces = replace(repl.id, std::move(pieces));
      res.log.push_back(std::move(step));
      continue;
    }
    auto [x, y] = *pa.begin();
    SplitStep step{"split_pa", x, y, {}};
    ArgumentSet pieces = split_pa(f, work[find(x)], work[find(y)]);
    step.pieces = replace(y, std::move(pieces));
    res.log.push_back(std::move(step));
  }
  res.args = std::move(work);
  return res;
}

}  // namespace caba
