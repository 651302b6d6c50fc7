// Command-line front end: caba <command> <file> [options]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "caba/caba.hpp"
#include "caba/json_export.hpp"

namespace {

struct Options {
  std::string file;
  std::string format = "text";
  size_t max_depth = 16;
  size_t max_iters = caba::kDefaultMaxIters;
  std::string universe;
  std::string semantics = "stable";
  std::string mode = "extension";
  std::string claim;
  bool native_check = false;
};

size_t env_size(const char* name, size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (*end || x == 0) throw caba::ValidationError(std::string(name) + " must be a positive integer");
  return static_cast<size_t>(x);
}

caba::CabaFramework load(const Options& o, bool check = true) {
  std::ifstream in(o.file);
  if (!in) throw caba::ValidationError("cannot read " + o.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return check ? caba::parse(ss.str()) : caba::parse_unchecked(ss.str());
}

bool structured(const Options& o) { return o.format == "structured"; }

void emit(const caba::json::Json& j) { std::cout << j.dump(2) << "\n"; }

caba::Semantics semantics(const Options& o) {
  auto s = caba::parse_semantics(o.semantics);
  if (!s) throw caba::ValidationError("unknown semantics " + o.semantics);
  return *s;
}

caba::ArgumentSet arguments(const caba::CabaFramework& f, const Options& o) {
  return caba::build_mgcarg_strict(f, o.max_depth);
}

int cmd_parse(const Options& o) {
  auto f = load(o, false);
  auto ds = caba::validate(f);
  for (const auto& d : ds) std::cerr << o.file << ": " << d.kind << ": " << d.message << "\n";
  if (!ds.empty()) return 1;
  if (structured(o)) emit(caba::json::to_json(f));
  else std::cout << caba::serialise(f);
  return 0;
}

int cmd_arguments(const Options& o) {
  auto f = load(o);
  auto args = arguments(f, o);
  if (!o.claim.empty()) {
    caba::require_predicate(f, o.claim);
    caba::ArgumentSet kept;
    for (auto& a : args)
      if (a.claim.pred == o.claim) kept.push_back(std::move(a));
    args = std::move(kept);
  }
  if (structured(o)) emit(caba::json::to_json(args));
  else
    for (const auto& a : args) std::cout << a.id << ": " << caba::to_string(a) << "\n";
  return 0;
}

int cmd_attacks(const Options& o) {
  auto f = load(o);
  auto edges = caba::attack_graph(f, arguments(f, o));
  if (structured(o)) emit(caba::json::to_json(edges));
  else
    for (const auto& e : edges) std::cout << caba::to_string(e) << "\n";
  return 0;
}

int cmd_split(const Options& o) {
  auto f = load(o);
  auto res = caba::argument_splitting(f, arguments(f, o), o.max_iters);
  if (structured(o)) {
    emit(caba::json::to_json(res));
    return 0;
  }
  for (const auto& s : res.log) {
    std::cout << "# " << s.op << "(" << s.attacker << ", " << s.target << ") ->";
    for (const auto& p : s.pieces) std::cout << " " << p;
    std::cout << "\n";
  }
  for (const auto& a : res.args) std::cout << a.id << ": " << caba::to_string(a) << "\n";
  return 0;
}

int cmd_extensions(const Options& o) {
  auto f = load(o);
  auto sem = semantics(o);
  auto basis = caba::argument_splitting(f, arguments(f, o), o.max_iters).args;
  auto ext = caba::enumerate_extensions(f, basis, sem, "split");
  std::vector<bool> native;
  if (o.native_check)
    for (const auto& e : ext) native.push_back(caba::check_stable_native(f, caba::members_of(e, basis), basis));
  if (structured(o)) {
    emit(caba::json::to_json(ext, sem, "split", native));
    return 0;
  }
  std::cout << "# " << ext.size() << " " << caba::to_string(sem) << " extension(s) over the split basis\n";
  for (size_t i = 0; i < ext.size(); ++i) {
    std::cout << "E" << i + 1 << ": {";
    for (size_t k = 0; k < ext[i].members.size(); ++k) std::cout << (k ? ", " : "") << ext[i].members[k];
    std::cout << "}";
    if (i < native.size()) std::cout << (native[i] ? "  native-check: ok" : "  native-check: FAILED");
    std::cout << "\n";
  }
  if (o.native_check) {
    std::cout << "# basis\n";
    for (const auto& a : basis) std::cout << a.id << ": " << caba::to_string(a) << "\n";
  }
  for (bool ok : native)
    if (!ok) return 1;
  return 0;
}

caba::Universe universe(const Options& o) {
  if (o.universe.empty()) throw caba::ValidationError("--universe is required");
  return caba::parse_universe(o.universe);
}

int cmd_ground(const Options& o) {
  auto f = load(o);
  auto g = caba::ground(f, universe(o));
  if (structured(o)) {
    emit(caba::json::to_json(g));
    return 0;
  }
  std::cout << "# universe " << caba::to_string(g.universe) << "\n";
  for (const auto& a : g.assumptions)
    std::cout << "assumption " << caba::to_string(a) << " contrary " << caba::to_string(g.contrary.at(a)) << ".\n";
  for (const auto& r : g.rules) std::cout << r.id << ": " << caba::to_string(r) << "\n";
  return 0;
}

int cmd_check(const Options& o) {
  auto f = load(o);
  auto mode = caba::parse_check_mode(o.mode);
  if (!mode) throw caba::ValidationError("unknown mode " + o.mode);
  auto report = caba::cross_check(f, universe(o), *mode, semantics(o), o.max_depth, o.max_iters);
  if (structured(o)) emit(caba::json::to_json(report));
  else std::cout << caba::to_string(report) << "\n";
  return report.verdict == caba::Verdict::Mismatch ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained assumption-based argumentation solver"};
  app.require_subcommand(1);
  Options o;
  try {
    o.max_depth = env_size("CABA_MAX_DEPTH", o.max_depth);
    o.max_iters = env_size("CABA_MAX_ITERS", o.max_iters);
  } catch (const caba::Error& e) {
    std::cerr << "caba: " << e.what() << "\n";
    return 1;
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "framework file")->required();
    sub->add_option("--format", o.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--max-depth", o.max_depth, "derivation depth cap for recursive frameworks");
    sub->add_option("--max-iters", o.max_iters, "repair cap for argument splitting");
    return sub;
  };
  auto* parse = common(app.add_subcommand("parse", "validate and print a framework"));
  auto* args = common(app.add_subcommand("arguments", "most general constrained arguments"));
  args->add_option("--claim", o.claim, "only arguments for this predicate");
  auto* attacks = common(app.add_subcommand("attacks", "full and partial attacks between arguments"));
  auto* split = common(app.add_subcommand("split", "instance-disjoint, non-overlapping argument set"));
  auto* ext = common(app.add_subcommand("extensions", "extensions over the split argument set"));
  ext->add_option("--semantics", o.semantics, "conflict-free, admissible or stable");
  ext->add_flag("--native-check", o.native_check, "verify each extension symbolically");
  auto* ground = common(app.add_subcommand("ground", "ground over a finite universe"));
  ground->add_option("--universe", o.universe, "lo..hi or a comma separated list")->required();
  auto* check = common(app.add_subcommand("check", "compare with the grounded framework"));
  check->add_option("--universe", o.universe, "lo..hi or a comma separated list")->required();
  check->add_option("--mode", o.mode, "arguments, attacks or extension");
  check->add_option("--semantics", o.semantics, "conflict-free, admissible or stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (o.max_depth == 0 || o.max_iters == 0) throw caba::ValidationError("limits must be positive");
    if (*parse) return cmd_parse(o);
    if (*args) return cmd_arguments(o);
    if (*attacks) return cmd_attacks(o);
    if (*split) return cmd_split(o);
    if (*ext) return cmd_extensions(o);
    if (*ground) return cmd_ground(o);
    if (*check) return cmd_check(o);
  } catch (const caba::Error& e) {
    std::cerr << "caba: " << e.kind() << ": " << e.what() << "\n";
    return e.exit_code();
  }
  return 1;
}
