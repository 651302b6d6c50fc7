#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "caba/arguments.hpp"
#include "caba/attacks.hpp"
#include "caba/equivalence.hpp"
#include "caba/splitting.hpp"

namespace caba {

enum class Semantics { ConflictFree, Admissible, Stable };

inline const char* to_string(Semantics s) {
  switch (s) {
    case Semantics::ConflictFree: return "conflict-free";
    case Semantics::Admissible: return "admissible";
    case Semantics::Stable: return "stable";
  }
  return "?";
}

inline std::optional<Semantics> parse_semantics(const std::string& s) {
  if (s == "conflict-free" || s == "cf") return Semantics::ConflictFree;
  if (s == "admissible" || s == "adm") return Semantics::Admissible;
  if (s == "stable" || s == "stb") return Semantics::Stable;
  return std::nullopt;
}

namespace detail {

// Stable labellings by propagation: an in node forces its attackers and
// targets out, a node whose attackers are all out must be in, and an out
// node needs an in attacker (forced when only one candidate is left).
inline std::vector<std::vector<size_t>> stable_labellings(size_t n, const std::vector<std::vector<size_t>>& attackers,
                                                          const std::vector<std::vector<size_t>>& attacks) {
  std::vector<std::vector<size_t>> out;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> label) {
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t j = 0; j < n; ++j) {
        if (label[j] == 1) {
          for (size_t i : attackers[j]) {
            if (label[i] == 1) return;
            if (label[i] == 0) { label[i] = 2; changed = true; }
          }
          for (size_t k : attacks[j]) {
            if (label[k] == 1) return;
            if (label[k] == 0) { label[k] = 2; changed = true; }
          }
          continue;
        }
        size_t open = 0, last = n;
        bool hit = false;
        for (size_t i : attackers[j]) {
          if (label[i] == 0) { ++open; last = i; }
          if (label[i] == 1) hit = true;
        }
        if (hit) continue;
        if (label[j] == 0 && open == 0) { label[j] = 1; changed = true; }
        if (label[j] == 2 && open == 0) return;
        if (label[j] == 2 && open == 1) { label[last] = 1; changed = true; }
      }
    }
    // branch on an attacker of the neediest out node, else the first open node
    size_t pick = n, best = SIZE_MAX;
    for (size_t j = 0; j < n; ++j) {
      if (label[j] != 2) continue;
      size_t open = 0, cand = n;
      bool hit = false;
      for (size_t i : attackers[j]) {
        if (label[i] == 1) hit = true;
        if (label[i] == 0) {
          ++open;
          if (cand == n) cand = i;
        }
      }
      if (!hit && open < best) {
        best = open;
        pick = cand;
      }
    }
    for (size_t j = 0; j < n && pick == n; ++j)
      if (label[j] == 0) pick = j;
    if (pick == n) {
      std::vector<size_t> members;
      for (size_t j = 0; j < n; ++j)
        if (label[j] == 1) members.push_back(j);
      out.push_back(std::move(members));
      return;
    }
    auto in = label;
    in[pick] = 1;
    rec(std::move(in));
    label[pick] = 2;
    rec(std::move(label));
  };
  std::vector<int> start(n, 0);
  for (size_t j = 0; j < n; ++j)
    for (size_t i : attackers[j])
      if (i == j) start[j] = 2;
  rec(std::move(start));
  return out;
}

}  // namespace detail

// Extensions of an abstract graph on nodes 0..n-1 where attackers[j] lists
// the nodes attacking j. Results are sorted member lists in sorted order.
inline std::vector<std::vector<size_t>> enumerate_af(size_t n, const std::vector<std::vector<size_t>>& attackers,
                                                     Semantics sem) {
  std::vector<std::vector<size_t>> attacks(n);
  std::vector<bool> self(n, false);
  for (size_t j = 0; j < n; ++j)
    for (size_t i : attackers[j]) {
      attacks[i].push_back(j);
      if (i == j) self[j] = true;
    }
  if (sem == Semantics::Stable) {
    auto out = detail::stable_labellings(n, attackers, attacks);
    std::sort(out.begin(), out.end());
    return out;
  }
  // 0 undecided, 1 in, 2 out
  std::vector<int> label(n, 0);
  std::vector<std::vector<size_t>> out;

  auto in_attacks = [&](size_t j) {
    for (size_t i : attackers[j])
      if (label[i] == 1) return true;
    return false;
  };
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == n) {
      std::vector<size_t> members;
      for (size_t j = 0; j < n; ++j)
        if (label[j] == 1) members.push_back(j);
      if (sem == Semantics::Admissible) {
        for (size_t m : members)
          for (size_t b : attackers[m])
            if (!in_attacks(b)) return;
      }
      out.push_back(std::move(members));
      return;
    }
    bool can_in = !self[k];
    if (can_in) {
      for (size_t i : attackers[k])
        if (label[i] == 1) { can_in = false; break; }
    }
    if (can_in) {
      for (size_t j : attacks[k])
        if (label[j] == 1) { can_in = false; break; }
    }
    if (can_in) {
      label[k] = 1;
      rec(k + 1);
    }
    label[k] = 2;
    rec(k + 1);
    label[k] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct Extension {
  std::vector<std::string> members;
  Semantics semantics = Semantics::Stable;
  std::string basis;
};

inline bool is_ngcf(const ArgumentSet& sigma, AttackCache& cache) {
  for (const auto& a : sigma)
    for (const auto& b : sigma)
      if (cache.kind(a, b) != AttackKind::None) return false;
  return true;
}

inline bool is_ngcf(const CabaFramework& f, const ArgumentSet& sigma) {
  AttackCache cache(f);
  return is_ngcf(sigma, cache);
}

inline ArgumentSet fatt(const ArgumentSet& sigma, const ArgumentSet& delta, AttackCache& cache) {
  ArgumentSet out;
  for (const auto& b : delta)
    for (const auto& a : sigma)
      if (cache.kind(a, b) == AttackKind::Full) {
        out.push_back(b);
        break;
      }
  return out;
}

inline ArgumentSet fatt(const CabaFramework& f, const ArgumentSet& sigma, const ArgumentSet& delta) {
  AttackCache cache(f);
  return fatt(sigma, delta, cache);
}

// Full-attack graph over delta, attackers[j] = indices attacking j.
inline std::vector<std::vector<size_t>> full_attackers(const ArgumentSet& delta, AttackCache& cache) {
  std::vector<std::vector<size_t>> att(delta.size());
  for (size_t i = 0; i < delta.size(); ++i)
    for (size_t j = 0; j < delta.size(); ++j)
      if (cache.kind(delta[i], delta[j]) == AttackKind::Full) att[j].push_back(i);
  return att;
}

inline std::vector<Extension> enumerate_extensions(const CabaFramework& f, const ArgumentSet& delta, Semantics sem,
                                                   const std::string& basis = "delta") {
  AttackCache cache(f);
  Denotations den;
  if (!instance_disjoint(delta, den)) throw BasisNotCompliant("basis is not instance-disjoint");
  if (!non_overlapping(delta, cache)) throw BasisNotCompliant("basis is not non-overlapping");
  auto att = full_attackers(delta, cache);
  std::vector<Extension> out;
  for (const auto& ms : enumerate_af(delta.size(), att, sem)) {
    Extension e{{}, sem, basis};
    for (size_t m : ms) e.members.push_back(delta[m].id);
    std::sort(e.members.begin(), e.members.end(), id_less);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    return std::lexicographical_compare(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                                        id_less);
  });
  return out;
}

inline ArgumentSet members_of(const Extension& e, const ArgumentSet& delta) {
  ArgumentSet out;
  for (const auto& id : e.members)
    if (const auto* a = find_argument(delta, id)) out.push_back(*a);
  return out;
}

inline bool check_stable_native(const CabaFramework& f, const ArgumentSet& sigma, const ArgumentSet& delta) {
  AttackCache cache(f);
  if (!is_ngcf(sigma, cache)) return false;
  ArgumentSet cover = sigma;
  for (auto& b : fatt(sigma, delta, cache)) cover.push_back(std::move(b));
  return set_equiv(cover, delta).equivalent;
}

}  // namespace caba
