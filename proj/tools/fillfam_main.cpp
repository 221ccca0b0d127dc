// Command-line front end over the shared-library C surface.
//
// Exit codes: 0 success, 1 computation error (JSON diagnostics on stderr),
// 2 usage error.  Reports embed the effective config, seed, and library
// version; a given (config, seed) pair always produces byte-identical output.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fillfam.h"
#include "json.hpp"

using nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
};

struct FamilyHandle {
  ff_family* p = nullptr;
  ~FamilyHandle() { ff_family_close(p); }
};

struct TreeHandle {
  ff_tree* p = nullptr;
  ~TreeHandle() { ff_tree_close(p); }
};

[[noreturn]] void die_api(const std::string& cmd) {
  ordered_json err;
  err["command"] = cmd;
  err["error"] = ordered_json::parse(ff_last_error());
  std::cerr << err.dump(2) << "\n";
  throw Failure{1};
}

[[noreturn]] void die_cli(const std::string& cmd, const std::string& code,
                          const std::string& message) {
  ordered_json err;
  err["command"] = cmd;
  err["error"] = ordered_json{{"code", code}, {"message", message}};
  std::cerr << err.dump(2) << "\n";
  throw Failure{1};
}

// Runs a C call and parses the returned report, freeing the C string.  Takes
// the slot's address: the call filling the slot and the argument naming it
// appear in one expression, so the value must be read after the call returns.
ordered_json take(ff_status st, char** out, const std::string& cmd) {
  if (st != FF_OK) die_api(cmd);
  ordered_json j = ordered_json::parse(*out);
  ff_string_free(*out);
  *out = nullptr;
  return j;
}

std::string read_text(const std::string& path, const std::string& cmd) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die_cli(cmd, "parse_error", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<const char*> as_argv(const std::vector<std::string>& words) {
  std::vector<const char*> out;
  for (const std::string& w : words) out.push_back(w.c_str());
  return out;
}

// Budget precedence: flag, then FILLFAM_BUDGET, then the library default.
std::uint64_t resolve_budget(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("FILLFAM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw CLI::ValidationError("FILLFAM_BUDGET",
                                 "must be a positive integer");
    return v;
  }
  return 0;
}

// Splices --depth into a built-in spec that does not fix one; paths keep the
// depth recorded in the file.
std::string resolve_family_spec(std::string spec, std::size_t depth) {
  bool is_path = spec.find('/') != std::string::npos ||
                 (spec.size() > 5 && spec.rfind(".json") == spec.size() - 5);
  if (!is_path && depth > 0 && spec.find("depth=") == std::string::npos)
    spec += (spec.find(':') == std::string::npos ? ":depth=" : ",depth=") +
            std::to_string(depth);
  return spec;
}

ff_family* open_family(const std::string& spec, const std::string& cmd,
                       std::vector<std::string>& warnings) {
  ff_family* f = nullptr;
  if (ff_family_open(spec.c_str(), &f) != FF_OK) die_api(cmd);
  std::size_t added = ff_family_closure_added(f);
  if (added > 0) {
    std::string w =
        "hereditary closure added " + std::to_string(added) + " members";
    warnings.push_back(w);
    std::cerr << "warning: " << w << "\n";
  }
  return f;
}

// Loads a tree from a file (or inline JSON text); empty spec yields the
// identity embedding of the given depth into the given host depth.
ff_tree* load_tree(const std::string& spec, std::size_t depth,
                   std::size_t host_depth, const std::string& cmd) {
  ff_tree* t = nullptr;
  if (!spec.empty()) {
    std::string text = spec[0] == '{' ? spec : read_text(spec, cmd);
    if (ff_tree_parse(text.c_str(), &t) != FF_OK) die_api(cmd);
    return t;
  }
  if (ff_tree_identity(depth, host_depth, &t) != FF_OK) die_api(cmd);
  return t;
}

std::string normalize_type(const std::string& s) {
  if (!s.empty() && s[0] != '[') return "[" + s + "]";
  return s;
}

void emit_envelope(const std::string& cmd, std::uint64_t seed, bool check,
                   ordered_json config, std::vector<std::string> warnings,
                   ordered_json report) {
  ordered_json e;
  e["command"] = cmd;
  e["version"] = ff_version();
  e["seed"] = seed;
  e["config"] = std::move(config);
  e["check"] = check;
  e["warnings"] = warnings;
  e["report"] = std::move(report);
  std::cout << e.dump(2) << "\n";
}

void emit_csv(const std::string& cmd, std::uint64_t seed,
              const ordered_json& config, const std::string& header,
              const std::vector<std::string>& rows) {
  std::cout << "# command: " << cmd << "\n";
  std::cout << "# version: " << ff_version() << "\n";
  std::cout << "# seed: " << seed << "\n";
  std::cout << "# config: " << config.dump() << "\n";
  std::cout << header << "\n";
  for (const std::string& row : rows) std::cout << row << "\n";
}

std::string plain(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// The three independent checkers behind --check.
void check_increasing_words(const std::vector<std::string>& words,
                            const std::string& cmd, const std::string& what) {
  std::vector<const char*> argv = as_argv(words);
  int inc = 0;
  if (ff_check_increasing(argv.data(), argv.size(), &inc) != FF_OK)
    die_api(cmd);
  if (inc != 1) die_cli(cmd, "check_failed", what + " is not increasing");
}

void check_type_of_words(const std::vector<std::string>& words,
                         const std::string& type_json, const std::string& cmd,
                         const std::string& what) {
  std::vector<const char*> argv = as_argv(words);
  char* out = nullptr;
  ordered_json j =
      take(ff_type_of_json(argv.data(), argv.size(), &out), &out, cmd);
  if (j["type"] != ordered_json::parse(type_json))
    die_cli(cmd, "check_failed", what + " does not realize the stated type");
}

void check_membership_words(ff_family* f, const std::vector<std::string>& words,
                            const std::string& cmd, const std::string& what) {
  std::vector<const char*> argv = as_argv(words);
  int member = 0;
  if (ff_family_member(f, argv.data(), argv.size(), &member) != FF_OK)
    die_api(cmd);
  if (member != 1) die_cli(cmd, "check_failed", what + " is not a member");
}

void check_membership_nat(ff_family* f, const std::vector<std::int64_t>& elems,
                          const std::string& cmd, const std::string& what) {
  int member = 0;
  if (ff_family_member_nat(f, elems.data(), elems.size(), &member) != FF_OK)
    die_api(cmd);
  if (member != 1) die_cli(cmd, "check_failed", what + " is not a member");
}

std::vector<std::string> words_of(const ordered_json& arr) {
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite filling-family laboratory"};
  app.require_subcommand(1);

  // Shared option storage; each subcommand binds the slots it uses.
  std::string family, ground, eps, format = "json", tree_spec, out_path;
  std::string type_str, points_str, g_points_str, roots_str, sizes_str;
  std::string vector_spec;
  std::size_t depth = 0, n = 0, k = 0, m = 0, levels = 0, host_depth = 0;
  std::size_t tree_depth = 0, max_level = 0, resolution = 1, samples = 200;
  std::uint64_t seed = 1, budget = 0, i_max = 0;
  bool check = false, sampled = false;

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", family, "built-in family spec or file path")
        ->required();
    sub->add_option("--depth", depth, "ground depth for built-in families");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_check = [&](CLI::App* sub) {
    sub->add_flag("--check", check, "re-verify emitted witnesses");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget,
                    "search budget (overrides FILLFAM_BUDGET)");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_flag("--sampled", sampled, "sample configurations");
    sub->add_option("--samples", samples, "sample count per level");
    sub->add_option("--seed", seed, "random seed");
  };

  CLI::App* c_types = app.add_subcommand("types", "enumerate position types");
  c_types->add_option("--k", k, "points per configuration")->required();
  add_check(c_types);

  CLI::App* c_density =
      app.add_subcommand("density", "minimal largest-member sweep");
  add_family(c_density);
  c_density->add_option("--ground", ground, "ground spec");
  c_density->add_option("--n", n, "largest configuration size")->required();
  add_sampling(c_density);
  add_format(c_density);
  add_check(c_density);

  CLI::App* c_filling =
      app.add_subcommand("filling-check", "density against eps * n");
  add_family(c_filling);
  c_filling->add_option("--ground", ground, "ground spec");
  c_filling->add_option("--eps", eps, "threshold p/q")->required();
  c_filling->add_option("--n", n, "largest configuration size")->required();
  add_sampling(c_filling);
  add_format(c_filling);
  add_check(c_filling);

  CLI::App* c_fremlin =
      app.add_subcommand("fremlin", "capacity schedule and certified bounds");
  add_family(c_fremlin);
  c_fremlin->add_option("--n", n, "bound horizon")->required();
  add_format(c_fremlin);
  add_check(c_fremlin);

  CLI::App* c_exinc = app.add_subcommand("extract-increasing",
                                         "pull an increasing subconfiguration");
  c_exinc->add_option("--points", points_str, "comma-separated words of F")
      ->required();
  c_exinc->add_option("--g-points", g_points_str,
                      "comma-separated words of G (defaults to F)");
  c_exinc->add_option("--k", k, "target exponent: |H| = 2^k")->required();
  add_check(c_exinc);

  CLI::App* c_extype =
      app.add_subcommand("extract-type", "realize a type inside an "
                                         "increasing configuration");
  c_extype->add_option("--points", points_str, "comma-separated words of H")
      ->required();
  c_extype->add_option("--type", type_str, "type vector, e.g. [0,1]")
      ->required();
  add_check(c_extype);

  CLI::App* c_typed =
      app.add_subcommand("typed-member", "search a member of a given type");
  add_family(c_typed);
  c_typed->add_option("--ground", ground, "ground spec");
  c_typed->add_option("--k", k, "member size")->required();
  c_typed->add_option("--type", type_str, "type vector, e.g. [0,1]")
      ->required();
  c_typed->add_option("--n", n, "staircase exponent")->required();
  add_budget(c_typed);
  add_check(c_typed);

  CLI::App* c_dtree =
      app.add_subcommand("decide-tree", "build or audit deciding embeddings");
  c_dtree->require_subcommand(1);
  CLI::App* c_dbuild =
      c_dtree->add_subcommand("build", "grow a deciding embedding");
  add_family(c_dbuild);
  c_dbuild->add_option("--levels", levels, "levels to decide")->required();
  c_dbuild->add_option("--host-depth", host_depth,
                       "host depth (defaults to the family depth)");
  c_dbuild->add_option("--out", out_path, "write the tree JSON here");
  add_budget(c_dbuild);
  add_check(c_dbuild);
  CLI::App* c_dcheck =
      c_dtree->add_subcommand("check", "audit decisions level by level");
  add_family(c_dcheck);
  c_dcheck->add_option("--tree", tree_spec, "tree JSON file")->required();
  c_dcheck->add_option("--n", n, "level to audit")->required();
  add_budget(c_dcheck);
  add_check(c_dcheck);

  CLI::App* c_trapped =
      app.add_subcommand("trapped", "level antichain trapped by the family");
  add_family(c_trapped);
  c_trapped->add_option("--tree", tree_spec,
                        "tree JSON file (defaults to the identity embedding)");
  c_trapped->add_option("--tree-depth", tree_depth,
                        "identity tree depth (defaults to the family depth)");
  c_trapped->add_option("--eps", eps, "mass threshold p/q")->required();
  c_trapped->add_option("--n", n, "level")->required();
  add_budget(c_trapped);
  add_check(c_trapped);

  CLI::App* c_measure =
      app.add_subcommand("measure", "mass of a cylinder union under a tree");
  c_measure->add_option("--tree", tree_spec,
                        "tree JSON file (defaults to the identity embedding)");
  c_measure->add_option("--tree-depth", tree_depth, "identity tree depth");
  c_measure->add_option("--host-depth", host_depth,
                        "identity host depth (defaults to the tree depth)");
  c_measure->add_option("--roots", roots_str, "comma-separated cylinder roots")
      ->required();
  add_check(c_measure);

  CLI::App* c_limit =
      app.add_subcommand("limit-set", "stable high-mass cylinder core");
  add_family(c_limit);
  c_limit->add_option("--tree", tree_spec,
                      "tree JSON file (defaults to the identity embedding)");
  c_limit->add_option("--eps", eps, "mass threshold p/q")->required();
  c_limit->add_option("--max-level", max_level, "deepest level to probe")
      ->required();
  c_limit->add_option("--resolution", resolution, "levels per refinement");
  add_budget(c_limit);
  add_check(c_limit);

  CLI::App* c_graded =
      app.add_subcommand("graded-tree", "embedding honoring size caps");
  add_family(c_graded);
  c_graded->add_option("--sizes", sizes_str, "comma-separated caps per level")
      ->required();
  c_graded->add_option("--levels", levels, "graded levels")->required();
  c_graded->add_option("--host-depth", host_depth,
                       "host depth (defaults to the family depth)");
  c_graded->add_option("--out", out_path, "write the tree JSON here");
  add_budget(c_graded);
  add_check(c_graded);

  CLI::App* c_norm = app.add_subcommand("norm", "family-supremum norm");
  add_family(c_norm);
  c_norm->add_option("--vector", vector_spec,
                     "coefficient vector JSON (file path or inline)")
      ->required();
  add_budget(c_norm);
  add_check(c_norm);

  CLI::App* c_cesaro =
      app.add_subcommand("cesaro", "averaged norms along branch points");
  add_family(c_cesaro);
  c_cesaro->add_option("--tree", tree_spec,
                       "tree JSON file (defaults to the identity embedding)");
  c_cesaro->add_option("--i-max", i_max, "last branch-point index")
      ->required();
  add_budget(c_cesaro);
  add_format(c_cesaro);
  add_check(c_cesaro);

  CLI::App* c_star =
      app.add_subcommand("star-probe", "log-scaled density growth probe");
  add_family(c_star);
  c_star->add_option("--ground", ground, "ground spec");
  c_star->add_option("--n", n, "largest exponent probed")->required();
  add_sampling(c_star);
  add_format(c_star);
  add_check(c_star);

  CLI::App* c_half =
      app.add_subcommand("half-filling", "subset half-trapped by the family");
  add_family(c_half);
  c_half->add_option("--ground", ground, "ground spec");
  c_half->add_option("--m", m, "subset size")->required();
  add_budget(c_half);
  add_check(c_half);

  // types
  c_types->callback([&] {
    const std::string cmd = "types";
    char* out = nullptr;
    ordered_json rep = take(ff_types_json(k, &out), &out, cmd);
    if (check && rep["verified"] != true)
      die_cli(cmd, "check_failed", "round-trip verification missing");
    ordered_json cfg{{"k", k}};
    emit_envelope(cmd, seed, check, cfg, {}, rep);
  });

  // density
  c_density->callback([&] {
    const std::string cmd = "density";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep = take(ff_density_json(f.p, ground.c_str(), n,
                                            sampled ? 1 : 0, samples, seed,
                                            &out),
                            &out, cmd);
    if (check) {
      for (const auto& row : rep["values"]) {
        if (std::size_t(row["value"]) != row["member"].size())
          die_cli(cmd, "check_failed", "member size disagrees with the value");
        if (ff_family_kind(f.p) == 0) {
          check_membership_words(f.p, words_of(row["member"]), cmd,
                                 "density minimizer member");
        } else {
          std::vector<std::int64_t> elems;
          for (const auto& v : row["member"])
            elems.push_back(v.get<std::int64_t>());
          check_membership_nat(f.p, elems, cmd, "density minimizer member");
        }
      }
    }
    ordered_json cfg{{"family", spec}, {"ground", ground},   {"n", n},
                     {"sampled", sampled}, {"samples", samples}};
    if (format == "csv") {
      std::vector<std::string> rows;
      for (const auto& row : rep["values"])
        rows.push_back(plain(row["n"]) + "," + plain(row["value"]) + "," +
                       plain(row["mode"]));
      emit_csv(cmd, seed, cfg, "n,value,mode", rows);
    } else {
      emit_envelope(cmd, seed, check, cfg, warnings, rep);
    }
  });

  // filling-check
  c_filling->callback([&] {
    const std::string cmd = "filling-check";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep = take(ff_filling_json(f.p, ground.c_str(), eps.c_str(),
                                            n, sampled ? 1 : 0, samples, seed,
                                            &out),
                            &out, cmd);
    ordered_json cfg{{"family", spec}, {"ground", ground},
                     {"eps", eps},     {"n", n},
                     {"sampled", sampled}, {"samples", samples}};
    if (format == "csv") {
      std::vector<std::string> rows;
      for (const auto& row : rep["points"])
        rows.push_back(plain(row["n"]) + "," + plain(row["value"]) + "," +
                       plain(row["ratio"]) + "," + plain(row["mode"]) + "," +
                       plain(row["ok"]));
      emit_csv(cmd, seed, cfg, "n,value,ratio,mode,ok", rows);
    } else {
      emit_envelope(cmd, seed, check, cfg, warnings, rep);
    }
  });

  // fremlin
  c_fremlin->callback([&] {
    const std::string cmd = "fremlin";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep = take(ff_fremlin_json(f.p, n, &out), &out, cmd);
    ordered_json cfg{{"family", spec}, {"n", n}};
    if (format == "csv") {
      std::vector<std::string> rows;
      for (const auto& row : rep["bounds"])
        rows.push_back(plain(row["n"]) + "," + plain(row["bound"]));
      emit_csv(cmd, seed, cfg, "n,bound", rows);
    } else {
      emit_envelope(cmd, seed, check, cfg, warnings, rep);
    }
  });

  // extract-increasing
  c_exinc->callback([&] {
    const std::string cmd = "extract-increasing";
    std::vector<std::string> fw = split_list(points_str);
    std::vector<std::string> gw =
        g_points_str.empty() ? fw : split_list(g_points_str);
    std::vector<const char*> fa = as_argv(fw), ga = as_argv(gw);
    char* out = nullptr;
    ordered_json rep =
        take(ff_extract_increasing_json(fa.data(), fa.size(), ga.data(),
                                        ga.size(), k, &out),
             &out, cmd);
    if (check) {
      std::vector<std::string> h = words_of(rep["H"]);
      check_increasing_words(h, cmd, "extracted configuration");
      for (const std::string& w : h) {
        bool found = false;
        for (const std::string& g : gw) found = found || g == w;
        if (!found)
          die_cli(cmd, "check_failed",
                  "extracted point " + w + " is outside G");
      }
    }
    ordered_json cfg{{"points", fw}, {"gPoints", gw}, {"k", k}};
    emit_envelope(cmd, seed, check, cfg, {}, rep);
  });

  // extract-type
  c_extype->callback([&] {
    const std::string cmd = "extract-type";
    std::string tau = normalize_type(type_str);
    std::vector<std::string> hw = split_list(points_str);
    std::vector<const char*> ha = as_argv(hw);
    char* out = nullptr;
    ordered_json rep = take(
        ff_extract_type_json(ha.data(), ha.size(), tau.c_str(), &out), &out,
        cmd);
    if (check)
      check_type_of_words(words_of(rep["I"]), tau, cmd, "extracted witness");
    ordered_json cfg{{"points", hw}, {"type", ordered_json::parse(tau)}};
    emit_envelope(cmd, seed, check, cfg, {}, rep);
  });

  // typed-member
  c_typed->callback([&] {
    const std::string cmd = "typed-member";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::string tau = normalize_type(type_str);
    std::uint64_t b = resolve_budget(c_typed->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep = take(ff_typed_member_json(f.p, ground.c_str(), k,
                                                 tau.c_str(), n, b, &out),
                            &out, cmd);
    if (check) {
      std::vector<std::string> mw = words_of(rep["member"]);
      check_type_of_words(mw, tau, cmd, "typed member");
      check_membership_words(f.p, mw, cmd, "typed member");
    }
    ordered_json cfg{{"family", spec},
                     {"ground", ground},
                     {"k", k},
                     {"type", ordered_json::parse(tau)},
                     {"n", n},
                     {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // decide-tree build
  c_dbuild->callback([&] {
    const std::string cmd = "decide-tree build";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_dbuild->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    std::size_t host = host_depth ? host_depth : ff_family_depth(f.p);
    TreeHandle t;
    if (ff_tree_build(f.p, levels, host, b, &t.p) != FF_OK) die_api(cmd);
    if (check) {
      int valid = 0;
      if (ff_tree_validate(t.p, &valid) != FF_OK) die_api(cmd);
      if (valid != 1)
        die_cli(cmd, "check_failed", "built tree is not a regular embedding");
    }
    char* out = nullptr;
    if (ff_tree_json(t.p, &out) != FF_OK) die_api(cmd);
    std::string text(out);
    ff_string_free(out);
    ordered_json rep;
    rep["tree"] = ordered_json::parse(text);
    if (!out_path.empty()) {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) die_cli(cmd, "internal", "cannot write " + out_path);
      file << text;
      rep["written"] = out_path;
    }
    ordered_json cfg{{"family", spec},
                     {"levels", levels},
                     {"hostDepth", host},
                     {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // decide-tree check
  c_dcheck->callback([&] {
    const std::string cmd = "decide-tree check";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_dcheck->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    TreeHandle t{load_tree(tree_spec, 0, 0, cmd)};
    char* out = nullptr;
    ordered_json rep = take(ff_decides_json(t.p, f.p, n, b, &out), &out, cmd);
    ordered_json cfg{
        {"family", spec}, {"tree", tree_spec}, {"n", n}, {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // trapped
  c_trapped->callback([&] {
    const std::string cmd = "trapped";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_trapped->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    std::size_t fam_depth = ff_family_depth(f.p);
    std::size_t td = tree_depth ? tree_depth : fam_depth;
    TreeHandle t{load_tree(tree_spec, td, fam_depth, cmd)};
    char* out = nullptr;
    ordered_json rep =
        take(ff_trapped_json(t.p, f.p, eps.c_str(), n, b, &out), &out, cmd);
    if (check && rep["indices"].size() != std::size_t(rep["size"]))
      die_cli(cmd, "check_failed", "antichain size disagrees with its length");
    ordered_json cfg{{"family", spec}, {"tree", tree_spec},
                     {"treeDepth", td}, {"eps", eps},
                     {"n", n},          {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // measure
  c_measure->callback([&] {
    const std::string cmd = "measure";
    if (tree_spec.empty() && tree_depth == 0)
      throw CLI::ValidationError("--tree", "need a tree file or --tree-depth");
    std::size_t host = host_depth ? host_depth : tree_depth;
    TreeHandle t{load_tree(tree_spec, tree_depth, host, cmd)};
    std::vector<std::string> roots = split_list(roots_str);
    std::vector<const char*> ra = as_argv(roots);
    char* out = nullptr;
    ordered_json rep =
        take(ff_measure_json(t.p, ra.data(), ra.size(), &out), &out, cmd);
    ordered_json cfg{{"tree", tree_spec}, {"roots", roots}};
    emit_envelope(cmd, seed, check, cfg, {}, rep);
  });

  // limit-set
  c_limit->callback([&] {
    const std::string cmd = "limit-set";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_limit->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    std::size_t fam_depth = ff_family_depth(f.p);
    TreeHandle t{load_tree(tree_spec, fam_depth, fam_depth, cmd)};
    char* out = nullptr;
    ordered_json rep = take(ff_limit_set_json(t.p, f.p, eps.c_str(), max_level,
                                              resolution, b, &out),
                            &out, cmd);
    ordered_json cfg{{"family", spec},        {"tree", tree_spec},
                     {"eps", eps},            {"maxLevel", max_level},
                     {"resolution", resolution}, {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // graded-tree
  c_graded->callback([&] {
    const std::string cmd = "graded-tree";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_graded->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    std::size_t host = host_depth ? host_depth : ff_family_depth(f.p);
    std::vector<std::size_t> sizes;
    for (const std::string& s : split_list(sizes_str)) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s.c_str(), &end, 10);
      if (end == s.c_str() || *end != '\0')
        throw CLI::ValidationError("--sizes", "must be comma-separated sizes");
      sizes.push_back(v);
    }
    TreeHandle t;
    if (ff_tree_graded(f.p, sizes.data(), sizes.size(), levels, host, b,
                       &t.p) != FF_OK)
      die_api(cmd);
    if (check) {
      int valid = 0;
      if (ff_tree_validate(t.p, &valid) != FF_OK) die_api(cmd);
      if (valid != 1)
        die_cli(cmd, "check_failed", "graded tree is not a regular embedding");
    }
    char* out = nullptr;
    if (ff_tree_json(t.p, &out) != FF_OK) die_api(cmd);
    std::string text(out);
    ff_string_free(out);
    ordered_json rep;
    rep["tree"] = ordered_json::parse(text);
    if (!out_path.empty()) {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) die_cli(cmd, "internal", "cannot write " + out_path);
      file << text;
      rep["written"] = out_path;
    }
    ordered_json cfg{{"family", spec},
                     {"sizes", sizes},
                     {"levels", levels},
                     {"hostDepth", host},
                     {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // norm
  c_norm->callback([&] {
    const std::string cmd = "norm";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_norm->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    std::string text = !vector_spec.empty() && vector_spec[0] == '{'
                           ? vector_spec
                           : read_text(vector_spec, cmd);
    char* out = nullptr;
    ordered_json rep = take(ff_norm_json(f.p, text.c_str(), b, &out), &out,
                            cmd);
    if (check && rep["witness"].size() > 0)
      check_membership_words(f.p, words_of(rep["witness"]), cmd,
                             "norm witness");
    ordered_json cfg{{"family", spec}, {"vector", vector_spec}, {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  // cesaro
  c_cesaro->callback([&] {
    const std::string cmd = "cesaro";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_cesaro->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    TreeHandle t;
    if (!tree_spec.empty()) t.p = load_tree(tree_spec, 0, 0, cmd);
    char* out = nullptr;
    ordered_json rep =
        take(ff_cesaro_json(f.p, t.p, i_max, b, &out), &out, cmd);
    ordered_json cfg{{"family", spec},
                     {"tree", tree_spec},
                     {"iMax", i_max},
                     {"budget", b}};
    if (format == "csv") {
      std::vector<std::string> rows;
      for (const auto& row : rep["rows"])
        rows.push_back(plain(row["i"]) + "," + plain(row["value"]) + "," +
                       plain(row["bound"]));
      emit_csv(cmd, seed, cfg, "i,norm,bound", rows);
    } else {
      emit_envelope(cmd, seed, check, cfg, warnings, rep);
    }
  });

  // star-probe
  c_star->callback([&] {
    const std::string cmd = "star-probe";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep = take(ff_star_probe_json(f.p, ground.c_str(), n,
                                               sampled ? 1 : 0, samples, seed,
                                               &out),
                            &out, cmd);
    ordered_json cfg{{"family", spec}, {"ground", ground},   {"n", n},
                     {"sampled", sampled}, {"samples", samples}};
    if (format == "csv") {
      std::vector<std::string> rows;
      for (const auto& row : rep["points"])
        rows.push_back(plain(row["n"]) + "," + plain(row["density"]) + "," +
                       plain(row["mode"]) + "," + plain(row["value"]));
      emit_csv(cmd, seed, cfg, "n,density,mode,value", rows);
    } else {
      emit_envelope(cmd, seed, check, cfg, warnings, rep);
    }
  });

  // half-filling
  c_half->callback([&] {
    const std::string cmd = "half-filling";
    std::vector<std::string> warnings;
    std::string spec = resolve_family_spec(family, depth);
    std::uint64_t b = resolve_budget(c_half->count("--budget") > 0, budget);
    FamilyHandle f{open_family(spec, cmd, warnings)};
    char* out = nullptr;
    ordered_json rep =
        take(ff_half_filling_json(f.p, ground.c_str(), m, b, &out), &out, cmd);
    if (check && rep["found"] == true && rep["subset"].size() != m)
      die_cli(cmd, "check_failed", "subset size disagrees with m");
    ordered_json cfg{
        {"family", spec}, {"ground", ground}, {"m", m}, {"budget", b}};
    emit_envelope(cmd, seed, check, cfg, warnings, rep);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
