#pragma once

// Structured output. Every document carries "schema": 1 and a "kind".
// Atoms and constraints are emitted in the input syntax so that they can be
// read back with parse_atom / parse_constraint.

#include <string>
#include <vector>

#include <json.hpp>

#include "caba/arguments.hpp"
#include "caba/attacks.hpp"
#include "caba/framework.hpp"
#include "caba/ground_oracle.hpp"
#include "caba/semantics.hpp"
#include "caba/splitting.hpp"

namespace caba::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

inline Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

inline Json to_json(const Rule& r) {
  Json j;
  j["id"] = r.id;
  j["head"] = to_string(r.head);
  j["constraints"] = Json::array();
  for (const auto& c : r.constraints) j["constraints"].push_back(to_string(c));
  j["body"] = Json::array();
  for (const auto& b : r.body) j["body"].push_back(to_string(b));
  return j;
}

inline Json to_json(const CabaFramework& f) {
  Json j = document("framework");
  j["assumptions"] = Json::array();
  for (const auto& a : f.assumptions)
    j["assumptions"].push_back(Json{{"predicate", a.pred}, {"arity", a.arity}, {"contrary", a.contrary}});
  if (f.domain) j["domain"] = Json{{"lo", to_string(f.domain->lo)}, {"hi", to_string(f.domain->hi)}};
  j["rules"] = Json::array();
  for (const auto& r : f.rules) j["rules"].push_back(to_json(r));
  return j;
}

inline Json to_json(const DerivationNode& n) {
  Json j;
  j["atom"] = to_string(n.atom);
  if (!n.rule.empty()) j["rule"] = n.rule;
  if (!n.children.empty()) {
    j["children"] = Json::array();
    for (const auto& c : n.children) j["children"].push_back(to_json(c));
  }
  return j;
}

inline Json to_json(const ConstrainedArgument& a) {
  Json j;
  j["id"] = a.id;
  j["claim"] = to_string(a.claim);
  j["constraints"] = Json::array();
  for (const auto& c : a.constraints) j["constraints"].push_back(to_string(c));
  j["assumptions"] = Json::array();
  for (const auto& s : a.assumptions) j["assumptions"].push_back(to_string(s));
  j["rules"] = Json::array();
  for (const auto& r : a.rules) j["rules"].push_back(r);
  if (a.derivation) j["derivation"] = to_json(*a.derivation);
  return j;
}

inline ConstrainedArgument argument_from_json(const Json& j) {
  ConstrainedArgument a;
  a.id = j.at("id").get<std::string>();
  a.claim = parse_atom(j.at("claim").get<std::string>());
  for (const auto& c : j.at("constraints")) a.constraints.insert(parse_constraint(c.get<std::string>()));
  for (const auto& s : j.at("assumptions")) a.assumptions.insert(parse_atom(s.get<std::string>()));
  for (const auto& r : j.at("rules")) a.rules.insert(r.get<std::string>());
  return a;
}

inline Json to_json(const ArgumentSet& args, const std::string& kind = "arguments") {
  Json j = document(kind);
  j["arguments"] = Json::array();
  for (const auto& a : args) j["arguments"].push_back(to_json(a));
  return j;
}

inline ArgumentSet arguments_from_json(const Json& j) {
  ArgumentSet out;
  for (const auto& a : j.at("arguments")) out.push_back(argument_from_json(a));
  return out;
}

inline Json to_json(const std::vector<AttackEdge>& edges) {
  Json j = document("attacks");
  j["attacks"] = Json::array();
  for (const auto& e : edges)
    j["attacks"].push_back(Json{{"attacker", e.attacker},
                                {"target", e.target},
                                {"kind", to_string(e.kind)},
                                {"on", to_string(e.target_assumption)}});
  return j;
}

inline Json to_json(const SplitResult& r) {
  Json j = to_json(r.args, "split");
  j["log"] = Json::array();
  for (const auto& s : r.log)
    j["log"].push_back(Json{{"op", s.op}, {"attacker", s.attacker}, {"target", s.target}, {"pieces", s.pieces}});
  return j;
}

// `native` holds the check_stable_native outcome per extension when computed.
inline Json to_json(const std::vector<Extension>& ext, Semantics sem, const std::string& basis,
                    const std::vector<bool>& native = {}) {
  Json j = document("extensions");
  j["semantics"] = to_string(sem);
  j["basis"] = basis;
  j["extensions"] = Json::array();
  for (size_t i = 0; i < ext.size(); ++i) {
    Json e;
    e["members"] = ext[i].members;
    if (i < native.size()) e["native_check"] = static_cast<bool>(native[i]);
    j["extensions"].push_back(e);
  }
  return j;
}

inline Json to_json(const GroundAtom& a) { return to_string(a); }

inline Json to_json(const GroundAbaFramework& g) {
  Json j = document("ground");
  j["universe"] = Json::array();
  for (const auto& x : g.universe) j["universe"].push_back(to_string(x));
  j["rules"] = Json::array();
  for (const auto& r : g.rules) {
    Json b = Json::array();
    for (const auto& x : r.body) b.push_back(to_string(x));
    j["rules"].push_back(Json{{"id", r.id}, {"head", to_string(r.head)}, {"body", b}});
  }
  j["assumptions"] = Json::array();
  for (const auto& a : g.assumptions)
    j["assumptions"].push_back(Json{{"assumption", to_string(a)}, {"contrary", to_string(g.contrary.at(a))}});
  return j;
}

inline Json to_json(const Report& r) {
  Json j = document("check");
  j["mode"] = r.mode;
  j["verdict"] = to_string(r.verdict);
  j["bounded"] = r.bounded;
  j["native_count"] = r.native_count;
  j["classical_count"] = r.classical_count;
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

}  // namespace caba::json
