#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "caba/caba.hpp"

namespace fx {

inline std::string corpus_path(const std::string& name) { return std::string(CABA_CORPUS_DIR) + "/" + name; }

inline std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline caba::CabaFramework corpus(const std::string& name) { return caba::parse(read(corpus_path(name))); }

inline caba::ConstraintSet cs(const std::string& text) {
  return text.empty() ? caba::ConstraintSet{} : caba::parse_constraints(text);
}

inline caba::ConstrainedArgument arg(const std::string& id, const std::string& claim, const std::string& constraints,
                                     std::initializer_list<const char*> assumptions = {},
                                     std::initializer_list<const char*> rules = {}) {
  caba::ConstrainedArgument a;
  a.id = id;
  a.claim = caba::parse_atom(claim);
  a.constraints = cs(constraints);
  for (const char* s : assumptions) a.assumptions.insert(caba::parse_atom(s));
  for (const char* r : rules) a.rules.insert(r);
  return a;
}

inline bool equiv(const caba::ConstrainedArgument& a, const caba::ConstrainedArgument& b) {
  return caba::set_equiv({a}, {b}).equivalent;
}

// got and want have the same size and pair up one-to-one under equiv
inline bool same_pieces(const caba::ArgumentSet& got, const caba::ArgumentSet& want) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(got.size(), false);
  for (const auto& w : want) {
    bool found = false;
    for (size_t i = 0; i < got.size() && !found; ++i)
      if (!used[i] && equiv(got[i], w)) used[i] = found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace fx
