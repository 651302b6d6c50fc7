#pragma once

// Arguments are compared through their denotations: the ground instances
// they stand for. A denotation is split by the shape of the ground instance
// (claim predicate plus the multiset of distinct assumption predicates) and,
// per shape, described by constraints over slot variables: #c<i> for claim
// arguments, #<k>_<i> for the i-th argument of the k-th assumption.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "caba/arguments.hpp"
#include "caba/attacks.hpp"

namespace caba {

struct ShapeKey {
  std::string claim_pred;
  size_t claim_arity = 0;
  std::vector<std::pair<std::string, size_t>> assumption_preds;  // sorted, with repeats

  friend bool operator<(const ShapeKey& a, const ShapeKey& b) {
    return std::tie(a.claim_pred, a.claim_arity, a.assumption_preds) <
           std::tie(b.claim_pred, b.claim_arity, b.assumption_preds);
  }
  friend bool operator==(const ShapeKey& a, const ShapeKey& b) {
    return a.claim_pred == b.claim_pred && a.claim_arity == b.claim_arity &&
           a.assumption_preds == b.assumption_preds;
  }
};

inline std::string to_string(const ShapeKey& k) {
  std::string out = k.claim_pred + "/" + std::to_string(k.claim_arity) + " <= [";
  for (size_t i = 0; i < k.assumption_preds.size(); ++i)
    out += (i ? ", " : "") + k.assumption_preds[i].first + "/" + std::to_string(k.assumption_preds[i].second);
  return out + "]";
}

struct Region {
  ShapeKey key;
  ConstraintSet constraints;
};

inline constexpr size_t kMaxSamePredicate = 4;

namespace detail {

inline std::string claim_slot(size_t i) { return "#c" + std::to_string(i); }
inline std::string asm_slot(size_t k, size_t i) { return "#" + std::to_string(k) + "_" + std::to_string(i); }

// all set partitions of {0..n-1}, as block index per element
inline std::vector<std::vector<size_t>> set_partitions(size_t n) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> cur(n, 0);
  std::function<void(size_t, size_t)> rec = [&](size_t i, size_t blocks) {
    if (i == n) { out.push_back(cur); return; }
    for (size_t b = 0; b <= blocks; ++b) {
      cur[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

inline ConstraintDNF product(const ConstraintDNF& a, const ConstraintDNF& b) {
  ConstraintDNF out;
  for (const auto& x : a)
    for (const auto& y : b) {
      ConstraintSet z = join(x, y);
      if (is_consistent(z)) out.push_back(std::move(z));
    }
  return out;
}

inline std::vector<Region> compute_denotation(const ConstrainedArgument& arg) {
  ConstrainedArgument a = rename_apart(arg, "_d");
  std::map<std::string, std::vector<Atom>> groups;
  for (const auto& s : a.assumptions) groups[s.pred].push_back(s);
  for (const auto& [p, atoms] : groups)
    if (atoms.size() > kMaxSamePredicate)
      throw CardinalityLimit("argument " + arg.id + " has " + std::to_string(atoms.size()) +
                             " assumptions with predicate " + p);

  std::vector<std::string> preds;
  std::vector<std::vector<std::vector<size_t>>> choices;
  for (const auto& [p, atoms] : groups) {
    preds.push_back(p);
    choices.push_back(set_partitions(atoms.size()));
  }

  ConstraintSet base = a.constraints;
  VarSet keep;
  for (size_t i = 0; i < a.claim.args.size(); ++i) {
    base.insert(make_constraint(LinearTerm::var(claim_slot(i)), Rel::Eq, a.claim.args[i]));
    keep.insert(claim_slot(i));
  }

  std::vector<Region> out;
  std::vector<size_t> pick(preds.size(), 0);
  std::function<void(size_t)> rec = [&](size_t g) {
    if (g < preds.size()) {
      for (size_t c = 0; c < choices[g].size(); ++c) {
        pick[g] = c;
        rec(g + 1);
      }
      return;
    }
    ShapeKey key{a.claim.pred, a.claim.args.size(), {}};
    ConstraintSet cs = base;
    VarSet vars = keep;
    ConstraintDNF distinct{{}};
    size_t slot = 0;
    for (size_t gi = 0; gi < preds.size(); ++gi) {
      const auto& atoms = groups[preds[gi]];
      const auto& part = choices[gi][pick[gi]];
      size_t nblocks = *std::max_element(part.begin(), part.end()) + 1;
      std::vector<size_t> first(nblocks, SIZE_MAX);
      for (size_t i = 0; i < atoms.size(); ++i) {
        size_t b = part[i];
        if (first[b] == SIZE_MAX) { first[b] = i; continue; }
        for (size_t j = 0; j < atoms[i].args.size(); ++j)
          cs.insert(make_constraint(atoms[i].args[j], Rel::Eq, atoms[first[b]].args[j]));
      }
      size_t arity = atoms.front().args.size();
      if (arity == 0 && nblocks > 1) return;  // distinct 0-ary atoms cannot exist
      for (size_t b = 0; b < nblocks; ++b) {
        key.assumption_preds.emplace_back(preds[gi], arity);
        for (size_t j = 0; j < arity; ++j) {
          cs.insert(make_constraint(LinearTerm::var(asm_slot(slot + b, j)), Rel::Eq, atoms[first[b]].args[j]));
          vars.insert(asm_slot(slot + b, j));
        }
      }
      // blocks denote different atoms: some coordinate differs
      for (size_t b1 = 0; b1 < nblocks; ++b1)
        for (size_t b2 = b1 + 1; b2 < nblocks; ++b2) {
          ConstraintDNF differ;
          ConstraintSet prefix;
          for (size_t j = 0; j < arity; ++j) {
            LinearTerm x = LinearTerm::var(asm_slot(slot + b1, j)), y = LinearTerm::var(asm_slot(slot + b2, j));
            ConstraintSet d = prefix;
            d.insert(make_constraint(x, Rel::Ne, y));
            differ.push_back(d);
            prefix.insert(make_constraint(x, Rel::Eq, y));
          }
          distinct = product(distinct, differ);
        }
      slot += nblocks;
    }
    for (const auto& d : distinct) {
      ConstraintSet full = join(cs, d);
      if (!is_consistent(full)) continue;
      for (auto& r : project(full, vars)) out.push_back(Region{key, std::move(r)});
    }
  };
  rec(0);
  return out;
}

// Copies of `r` with same-predicate assumption slots permuted.
inline std::vector<ConstraintSet> permutations(const Region& r) {
  const auto& preds = r.key.assumption_preds;
  std::vector<size_t> idx(preds.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::vector<size_t>> perms{idx};
  size_t start = 0;
  while (start < preds.size()) {
    size_t end = start;
    while (end < preds.size() && preds[end] == preds[start]) ++end;
    std::vector<std::vector<size_t>> next;
    for (const auto& p : perms) {
      std::vector<size_t> q = p;
      std::sort(q.begin() + start, q.begin() + end);
      do next.push_back(q);
      while (std::next_permutation(q.begin() + start, q.begin() + end));
    }
    perms = std::move(next);
    start = end;
  }
  std::vector<ConstraintSet> out;
  for (const auto& p : perms) {
    std::map<std::string, std::string> m;
    for (size_t k = 0; k < p.size(); ++k)
      for (size_t j = 0; j < preds[k].second; ++j) m[asm_slot(k, j)] = asm_slot(p[k], j);
    out.push_back(rename(r.constraints, m));
  }
  return out;
}

}  // namespace detail

// Memoises denotations keyed by argument content.
class Denotations {
public:
  // claim ranges that cannot meet rule out common instances
  bool claims_apart(const ConstrainedArgument& a, const ConstrainedArgument& b) {
    if (a.claim.pred != b.claim.pred || a.claim.args.size() != b.claim.args.size()) return true;
    std::string ka = to_string(a), kb = to_string(b);
    for (size_t i = 0; i < a.claim.args.size(); ++i)
      if (disjoint(boxes_.of(ka, a.constraints, a.claim.args[i]), boxes_.of(kb, b.constraints, b.claim.args[i])))
        return true;
    return false;
  }

  const std::vector<Region>& of(const ConstrainedArgument& a) {
    std::string key = to_string(a);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
    auto v = std::make_shared<std::vector<Region>>(detail::compute_denotation(a));
    memo_.emplace(key, v);
    return *v;
  }

private:
  std::map<std::string, std::shared_ptr<std::vector<Region>>> memo_;
  BoxCache boxes_;
};

inline std::vector<Region> denotation(const ConstrainedArgument& a) { return detail::compute_denotation(a); }

inline bool common_instances(const ConstrainedArgument& a, const ConstrainedArgument& b, Denotations& den) {
  if (den.claims_apart(a, b)) return false;
  const auto& ra = den.of(a);
  const auto& rb = den.of(b);
  for (const auto& x : ra)
    for (const auto& y : rb) {
      if (!(x.key == y.key)) continue;
      for (const auto& py : detail::permutations(y))
        if (is_consistent(join(x.constraints, py))) return true;
    }
  return false;
}

inline bool common_instances(const ConstrainedArgument& a, const ConstrainedArgument& b) {
  Denotations den;
  return common_instances(a, b, den);
}

inline bool instance_disjoint(const ArgumentSet& args, Denotations& den) {
  for (size_t i = 0; i < args.size(); ++i)
    for (size_t j = i + 1; j < args.size(); ++j)
      if (common_instances(args[i], args[j], den)) return false;
  return true;
}

inline bool instance_disjoint(const ArgumentSet& args) {
  Denotations den;
  return instance_disjoint(args, den);
}

inline bool non_overlapping(const ArgumentSet& args, AttackCache& cache) {
  for (const auto& a : args)
    for (const auto& b : args)
      if (cache.kind(a, b) == AttackKind::Partial) return false;
  return true;
}

inline bool non_overlapping(const CabaFramework& f, const ArgumentSet& args) {
  AttackCache cache(f);
  return non_overlapping(args, cache);
}

struct EquivResult {
  bool equivalent = true;
  std::string witness;  // region covered by one side only
  explicit operator bool() const { return equivalent; }
};

inline EquivResult set_equiv(const ArgumentSet& g, const ArgumentSet& d, Denotations& den) {
  std::map<ShapeKey, std::vector<Region>> left, right;
  for (const auto& a : g)
    for (const auto& r : den.of(a)) left[r.key].push_back(r);
  for (const auto& a : d)
    for (const auto& r : den.of(a)) right[r.key].push_back(r);

  auto cover = [](const std::map<ShapeKey, std::vector<Region>>& x, const std::map<ShapeKey, std::vector<Region>>& y,
                  const char* side) -> EquivResult {
    for (const auto& [key, regions] : x) {
      ConstraintDNF other;
      auto it = y.find(key);
      if (it != y.end())
        for (const auto& r : it->second)
          for (auto& p : detail::permutations(r)) other.push_back(std::move(p));
      for (const auto& r : regions)
        if (!covered_by(r.constraints, other))
          return EquivResult{false, std::string(side) + " only: " + to_string(key) + " " + to_string(r.constraints)};
    }
    return EquivResult{};
  };
  EquivResult a = cover(left, right, "left");
  if (!a) return a;
  return cover(right, left, "right");
}

inline EquivResult set_equiv(const ArgumentSet& g, const ArgumentSet& d) {
  Denotations den;
  return set_equiv(g, d, den);
}

}  // namespace caba
