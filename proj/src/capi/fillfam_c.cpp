#include "fillfam.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fillfam/builtin_families.hpp"
#include "fillfam/density.hpp"
#include "fillfam/dyadic.hpp"
#include "fillfam/errors.hpp"
#include "fillfam/extraction.hpp"
#include "fillfam/json_io.hpp"
#include "fillfam/norms.hpp"
#include "fillfam/search.hpp"
#include "fillfam/type_signature.hpp"
#include "fillfam/version.hpp"

using nlohmann::ordered_json;
using namespace fillfam;

extern "C" {
struct ff_family {
  std::unique_ptr<Family> fam;
  std::string name;
};

struct ff_tree {
  RegularDyadicTree t;
};
}

namespace {

thread_local std::string t_error = "{}";

ff_status errc_to_status(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return FF_INVALID_ARGUMENT;
    case Errc::comparable_nodes: return FF_COMPARABLE_NODES;
    case Errc::not_downward_closed: return FF_NOT_DOWNWARD_CLOSED;
    case Errc::not_skew: return FF_NOT_SKEW;
    case Errc::not_increasing: return FF_NOT_INCREASING;
    case Errc::precondition: return FF_PRECONDITION;
    case Errc::budget_exceeded: return FF_BUDGET_EXCEEDED;
    case Errc::unattainable: return FF_UNATTAINABLE;
    case Errc::search_failed: return FF_SEARCH_FAILED;
    case Errc::parse_error: return FF_PARSE_ERROR;
    case Errc::internal: return FF_INTERNAL;
  }
  return FF_UNKNOWN;
}

template <typename Fn>
ff_status guarded(Fn&& fn) {
  try {
    fn();
    t_error = "{}";
    return FF_OK;
  } catch (const Error& e) {
    ordered_json j;
    j["code"] = errc_name(e.code());
    j["message"] = e.what();
    ordered_json d = ordered_json::parse(e.detail(), nullptr, false);
    j["detail"] = d.is_discarded() ? ordered_json(e.detail()) : d;
    t_error = j.dump();
    return errc_to_status(e.code());
  } catch (const std::exception& e) {
    ordered_json j;
    j["code"] = "unknown";
    j["message"] = e.what();
    j["detail"] = ordered_json::object();
    t_error = j.dump();
    return FF_UNKNOWN;
  }
}

void emit(const ordered_json& j, char** out) {
  std::string text = j.dump();
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) fail(Errc::internal, "out of memory");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
}

void need(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

std::vector<BitNode> to_nodes(const char* const* words, size_t count) {
  need(words != nullptr || count == 0, "null word list");
  std::vector<BitNode> pts;
  pts.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    need(words[i] != nullptr, "null word in list");
    pts.emplace_back(std::string(words[i]));
  }
  return pts;
}

PointConfig to_config(const char* const* words, size_t count) {
  std::vector<BitNode> pts = to_nodes(words, count);
  need(!pts.empty(), "empty point list");
  std::size_t depth = pts.front().length();
  return PointConfig::make(depth, std::move(pts));
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail(Errc::invalid_argument, "not an integer: " + s);
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
}

// "" -> default ground; "lo..hi" -> natural range; "a,b,c" -> point list
Ground parse_ground(const Family& fam, const char* spec,
                    std::size_t horizon) {
  std::string s = spec ? spec : "";
  if (fam.kind() == GroundKind::nat) {
    if (s.empty())
      return Ground(NatSet::range(0, 2 * std::int64_t(horizon)));
    std::size_t dots = s.find("..");
    if (dots != std::string::npos)
      return Ground(NatSet::range(parse_int(s.substr(0, dots)),
                                  parse_int(s.substr(dots + 2))));
    std::vector<std::int64_t> v;
    for (const std::string& part : split_commas(s)) v.push_back(parse_int(part));
    return Ground(NatSet::make(std::move(v)));
  }
  if (s.empty()) return Ground(PointConfig::full_cube(fam.ground_depth()));
  std::vector<BitNode> pts;
  for (const std::string& part : split_commas(s)) pts.emplace_back(part);
  return Ground(PointConfig::make(fam.ground_depth(), std::move(pts)));
}

SearchBudget to_budget(uint64_t budget) {
  return budget ? SearchBudget{budget} : SearchBudget{};
}

ordered_json nodes_json(const std::vector<BitNode>& pts) {
  ordered_json a = ordered_json::array();
  for (const BitNode& p : pts) a.push_back(p.str());
  return a;
}

ordered_json ground_json(const Ground& g) {
  if (std::holds_alternative<PointConfig>(g))
    return nodes_json(std::get<PointConfig>(g).points);
  ordered_json a = ordered_json::array();
  for (std::int64_t e : std::get<NatSet>(g).elems) a.push_back(e);
  return a;
}

TypeSignature type_from_json(const char* text) {
  need(text != nullptr, "null type");
  ordered_json j = ordered_json::parse(std::string(text), nullptr, false);
  if (j.is_discarded() || !j.is_array())
    fail(Errc::parse_error, "type must be a JSON array of integers");
  TypeSignature tau;
  tau.k = j.size() + 1;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      fail(Errc::parse_error, "type must be a JSON array of integers");
    tau.values.push_back(v.get<int>());
  }
  tau.validate();
  return tau;
}

ordered_json type_json(const TypeSignature& tau) {
  ordered_json a = ordered_json::array();
  for (int v : tau.values) a.push_back(v);
  return a;
}

ordered_json density_options_echo(const DensityOptions& opt) {
  ordered_json j;
  j["mode"] = opt.sampled ? "sampled" : "exact";
  if (opt.sampled) {
    j["samples"] = opt.samples;
    j["seed"] = opt.seed;
  }
  return j;
}

DensityOptions to_density_options(int sampled, size_t samples, uint64_t seed) {
  DensityOptions opt;
  opt.sampled = sampled != 0;
  if (samples) opt.samples = samples;
  opt.seed = seed;
  return opt;
}

const Family& deref(const ff_family* f) {
  need(f != nullptr && f->fam != nullptr, "null family handle");
  return *f->fam;
}

const RegularDyadicTree& deref(const ff_tree* t) {
  need(t != nullptr, "null tree handle");
  return t->t;
}

}  // namespace

extern "C" {

const char* ff_version(void) { return library_version; }

const char* ff_last_error(void) { return t_error.c_str(); }

void ff_string_free(char* s) { std::free(s); }

ff_status ff_family_open(const char* spec, ff_family** out) {
  return guarded([&] {
    need(spec != nullptr && out != nullptr, "null argument");
    auto handle = std::make_unique<ff_family>();
    handle->fam = make_family(spec);
    handle->name = handle->fam->name();
    *out = handle.release();
  });
}

void ff_family_close(ff_family* f) { delete f; }

const char* ff_family_name(const ff_family* f) {
  return f ? f->name.c_str() : "";
}

int ff_family_kind(const ff_family* f) {
  if (!f || !f->fam) return -1;
  return f->fam->kind() == GroundKind::bits ? 0 : 1;
}

size_t ff_family_depth(const ff_family* f) {
  if (!f || !f->fam) return 0;
  return f->fam->ground_depth();
}

size_t ff_family_closure_added(const ff_family* f) {
  if (!f || !f->fam) return 0;
  auto* exp = dynamic_cast<const ExplicitFamily*>(f->fam.get());
  return exp ? exp->added_by_closure() : 0;
}

ff_status ff_family_member(const ff_family* f, const char* const* words,
                           size_t count, int* out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    std::vector<BitNode> pts = to_nodes(words, count);
    std::size_t depth = pts.empty() ? fam.ground_depth() : pts[0].length();
    PointConfig cfg = PointConfig::make(depth, std::move(pts));
    *out = fam.member(cfg) ? 1 : 0;
  });
}

ff_status ff_family_member_nat(const ff_family* f, const int64_t* elems,
                               size_t count, int* out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    need(elems != nullptr || count == 0, "null element list");
    std::vector<std::int64_t> v(elems, elems + count);
    *out = fam.member(NatSet::make(std::move(v))) ? 1 : 0;
  });
}

ff_status ff_tree_identity(size_t depth, size_t host_depth, ff_tree** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    auto handle = std::make_unique<ff_tree>();
    handle->t = RegularDyadicTree::identity(depth, host_depth);
    *out = handle.release();
  });
}

ff_status ff_tree_parse(const char* json_text, ff_tree** out) {
  return guarded([&] {
    need(json_text != nullptr && out != nullptr, "null argument");
    auto handle = std::make_unique<ff_tree>();
    handle->t = tree_from_json(json_text);
    *out = handle.release();
  });
}

ff_status ff_tree_build(ff_family* f, size_t levels, size_t host_depth,
                        uint64_t budget, ff_tree** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    auto handle = std::make_unique<ff_tree>();
    handle->t = build_deciding_tree(fam, levels, host_depth,
                                    to_budget(budget));
    *out = handle.release();
  });
}

ff_status ff_tree_graded(ff_family* f, const size_t* sizes, size_t count,
                         size_t levels, size_t host_depth, uint64_t budget,
                         ff_tree** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    need(sizes != nullptr || count == 0, "null size list");
    std::vector<std::size_t> g(sizes, sizes + count);
    auto handle = std::make_unique<ff_tree>();
    handle->t =
        graded_filling_tree(fam, g, levels, host_depth, to_budget(budget));
    *out = handle.release();
  });
}

void ff_tree_close(ff_tree* t) { delete t; }

ff_status ff_tree_json(const ff_tree* t, char** out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    need(out != nullptr, "null output");
    ordered_json j = ordered_json::parse(tree_to_json(tree));
    emit(j, out);
  });
}

ff_status ff_tree_validate(const ff_tree* t, int* out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    need(out != nullptr, "null output");
    *out = validate_regular(tree) ? 1 : 0;
  });
}

ff_status ff_types_json(size_t k, char** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    std::vector<TypeSignature> all = enumerate_types(k);
    for (const TypeSignature& tau : all) {
      PointConfig realized = realize_type(tau, k);
      if (!(type_of(realized) == tau))
        fail(Errc::internal, "type did not survive the round trip");
    }
    ordered_json j;
    j["k"] = k;
    j["count"] = all.size();
    ordered_json types = ordered_json::array();
    for (const TypeSignature& tau : all) types.push_back(type_json(tau));
    j["types"] = std::move(types);
    j["verified"] = true;
    emit(j, out);
  });
}

ff_status ff_type_of_json(const char* const* words, size_t count,
                          char** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    PointConfig cfg = to_config(words, count);
    TypeSignature tau = type_of(cfg);
    ordered_json j;
    j["k"] = tau.k;
    j["type"] = type_json(tau);
    emit(j, out);
  });
}

ff_status ff_check_increasing(const char* const* words, size_t count,
                              int* out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    PointConfig cfg = to_config(words, count);
    *out = is_increasing_config(cfg).has_value() ? 1 : 0;
  });
}

ff_status ff_density_json(ff_family* f, const char* ground, size_t n_max,
                          int sampled, size_t samples, uint64_t seed,
                          char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    need(n_max >= 1, "n_max must be at least 1");
    Ground g = parse_ground(fam, ground, n_max);
    DensityOptions opt = to_density_options(sampled, samples, seed);
    ordered_json j;
    j["family"] = fam.name();
    j["ground"] = ground_json(g);
    j["options"] = density_options_echo(opt);
    ordered_json values = ordered_json::array();
    for (std::size_t n = 1; n <= n_max; ++n) {
      DensityValue v = density(fam, g, n, opt);
      ordered_json row;
      row["n"] = v.n;
      row["value"] = v.value;
      row["mode"] = density_mode_name(v.mode);
      row["minimizer"] = ground_json(v.minimizer);
      row["member"] = ground_json(v.minimizer_member);
      values.push_back(std::move(row));
    }
    j["values"] = std::move(values);
    emit(j, out);
  });
}

ff_status ff_filling_json(ff_family* f, const char* ground, const char* eps,
                          size_t n_max, int sampled, size_t samples,
                          uint64_t seed, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr && eps != nullptr, "null argument");
    Ground g = parse_ground(fam, ground, n_max);
    DensityOptions opt = to_density_options(sampled, samples, seed);
    FillingReport rep =
        eps_filling_check(fam, g, Rat::parse(eps), n_max, opt);
    ordered_json j;
    j["family"] = fam.name();
    j["eps"] = rep.eps.str();
    j["filling"] = rep.filling;
    j["heredityChecked"] = rep.heredity_sampled;
    ordered_json points = ordered_json::array();
    for (const FillingPoint& p : rep.points) {
      ordered_json row;
      row["n"] = p.n;
      row["value"] = p.value;
      row["ratio"] = p.ratio.str();
      row["mode"] = density_mode_name(p.mode);
      row["ok"] = p.ok;
      points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    emit(j, out);
  });
}

ff_status ff_star_probe_json(ff_family* f, const char* ground, size_t n_max,
                             int sampled, size_t samples, uint64_t seed,
                             char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    Ground g = parse_ground(fam, ground, std::size_t(1) << n_max);
    DensityOptions opt = to_density_options(sampled, samples, seed);
    std::vector<StarProbePoint> pts = density_star_probe(fam, g, n_max, opt);
    ordered_json j;
    j["family"] = fam.name();
    ordered_json rows = ordered_json::array();
    for (const StarProbePoint& p : pts) {
      ordered_json row;
      row["n"] = p.n;
      row["density"] = p.density;
      row["mode"] = density_mode_name(p.mode);
      row["value"] = p.value;
      rows.push_back(std::move(row));
    }
    j["points"] = std::move(rows);
    emit(j, out);
  });
}

ff_status ff_half_filling_json(ff_family* f, const char* ground, size_t m,
                               uint64_t budget, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    Ground g = parse_ground(fam, ground, m);
    auto found = half_filling_subset(fam, g, m, 8, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["m"] = m;
    j["found"] = found.has_value();
    if (found) j["subset"] = ground_json(*found);
    emit(j, out);
  });
}

ff_status ff_fremlin_json(ff_family* f, size_t n_max, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    auto* fre = dynamic_cast<const FremlinFamily*>(&fam);
    if (!fre)
      fail(Errc::invalid_argument,
           "family " + fam.name() + " is not a fremlin construction");
    ordered_json j;
    j["family"] = fre->name();
    j["levels"] = fre->levels();
    ordered_json caps = ordered_json::array();
    for (std::int64_t c : fre->caps()) caps.push_back(c);
    j["caps"] = std::move(caps);
    ordered_json max_caps = ordered_json::array();
    for (std::int64_t c : fre->max_caps()) max_caps.push_back(c);
    j["maxCaps"] = std::move(max_caps);
    ordered_json bounds = ordered_json::array();
    for (std::size_t n = 1; n <= n_max; ++n) {
      ordered_json row;
      row["n"] = n;
      row["bound"] = fre->certified_density_bound(std::int64_t(n));
      bounds.push_back(std::move(row));
    }
    j["bounds"] = std::move(bounds);
    emit(j, out);
  });
}

ff_status ff_extract_increasing_json(const char* const* f_words,
                                     size_t f_count,
                                     const char* const* g_words,
                                     size_t g_count, size_t k, char** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    PointConfig fcfg = to_config(f_words, f_count);
    PointConfig gcfg = to_config(g_words, g_count);
    ExtractionChain chain;
    PointConfig h = extract_increasing(fcfg, gcfg, k, &chain);
    ordered_json j;
    j["k"] = k;
    j["H"] = nodes_json(h.points);
    ordered_json levels = ordered_json::array();
    for (std::size_t l : chain.levels) levels.push_back(l);
    j["levels"] = std::move(levels);
    ordered_json sets = ordered_json::array();
    for (const auto& s : chain.sets) sets.push_back(nodes_json(s));
    j["sets"] = std::move(sets);
    ordered_json subtree = ordered_json::object();
    for (const auto& [s, lab] : chain.subtree) subtree[s] = lab.str();
    j["subtree"] = std::move(subtree);
    emit(j, out);
  });
}

ff_status ff_extract_type_json(const char* const* h_words, size_t h_count,
                               const char* type_json_text, char** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    PointConfig h = to_config(h_words, h_count);
    TypeSignature tau = type_from_json(type_json_text);
    PointConfig i = extract_type(h, tau);
    ordered_json j;
    j["type"] = type_json(tau);
    j["I"] = nodes_json(i.points);
    j["typeOf"] = type_json(type_of(i));
    emit(j, out);
  });
}

ff_status ff_typed_member_json(ff_family* f, const char* ground, size_t k,
                               const char* type_json_text, size_t n,
                               uint64_t budget, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    Ground g = parse_ground(fam, ground, n);
    if (!std::holds_alternative<PointConfig>(g))
      fail(Errc::invalid_argument, "typed members need a word ground");
    TypeSignature tau = type_from_json(type_json_text);
    PointConfig member = find_typed_member(fam, std::get<PointConfig>(g), k,
                                           tau, n, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["k"] = k;
    j["n"] = n;
    j["type"] = type_json(tau);
    j["member"] = nodes_json(member.points);
    j["typeOf"] = type_json(type_of(member));
    emit(j, out);
  });
}

ff_status ff_decides_json(const ff_tree* t, ff_family* f, size_t n,
                          uint64_t budget, char** out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    TrappedReport rep = decides_at(tree, fam, n, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["level"] = n;
    j["complete"] = rep.complete;
    j["maxTrapped"] = rep.max_trapped_size;
    j["queries"] = rep.queries;
    ordered_json verdicts = ordered_json::array();
    std::size_t mixed = 0;
    for (const auto& [words, verdict] : rep.verdicts) {
      ordered_json row;
      ordered_json antichain = ordered_json::array();
      for (const std::string& w : words) antichain.push_back(w);
      row["antichain"] = std::move(antichain);
      row["verdict"] = verdict_name(verdict);
      if (verdict == Verdict::mixed) ++mixed;
      verdicts.push_back(std::move(row));
    }
    j["mixed"] = mixed;
    j["verdicts"] = std::move(verdicts);
    ordered_json undecided = ordered_json::array();
    for (const auto& words : rep.undecided) {
      ordered_json antichain = ordered_json::array();
      for (const std::string& w : words) antichain.push_back(w);
      undecided.push_back(std::move(antichain));
    }
    j["undecided"] = std::move(undecided);
    emit(j, out);
  });
}

ff_status ff_trapped_json(const ff_tree* t, ff_family* f, const char* eps,
                          size_t n, uint64_t budget, char** out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    const Family& fam = deref(f);
    need(out != nullptr && eps != nullptr, "null argument");
    std::vector<BitNode> indices =
        trapped_lower_bound(tree, fam, Rat::parse(eps), n, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["level"] = n;
    j["eps"] = Rat::parse(eps).str();
    j["size"] = indices.size();
    j["indices"] = nodes_json(indices);
    emit(j, out);
  });
}

ff_status ff_measure_json(const ff_tree* t, const char* const* roots,
                          size_t count, char** out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    need(out != nullptr, "null output");
    CylinderSet c = CylinderSet::make(tree.host_depth, to_nodes(roots, count));
    Rat mass = measure(tree, c);
    ordered_json j;
    j["roots"] = nodes_json(c.roots);
    j["count"] = c.count();
    j["measure"] = mass.str();
    emit(j, out);
  });
}

ff_status ff_limit_set_json(const ff_tree* t, ff_family* f, const char* eps,
                            size_t max_level, size_t resolution,
                            uint64_t budget, char** out) {
  return guarded([&] {
    const RegularDyadicTree& tree = deref(t);
    const Family& fam = deref(f);
    need(out != nullptr && eps != nullptr, "null argument");
    CylinderSet c = limit_closed_set(tree, fam, Rat::parse(eps), max_level,
                                     resolution, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["eps"] = Rat::parse(eps).str();
    j["resolution"] = resolution;
    j["maxLevel"] = max_level;
    j["hostDepth"] = c.host_depth;
    j["roots"] = nodes_json(c.roots);
    j["count"] = c.count();
    j["measure"] = measure(tree, c).str();
    emit(j, out);
  });
}

ff_status ff_norm_json(ff_family* f, const char* vector_json, uint64_t budget,
                       char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr && vector_json != nullptr, "null argument");
    SupportedVector v = vector_from_json(vector_json);
    NormResult r = norm_f(fam, v, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["support"] = v.entries.size();
    j["lower"] = r.lower.str();
    j["upper"] = r.upper.str();
    j["exact"] = r.exact;
    j["witness"] = nodes_json(r.witness);
    j["queries"] = r.queries;
    emit(j, out);
  });
}

ff_status ff_cesaro_json(ff_family* f, const ff_tree* t, uint64_t i_max,
                         uint64_t budget, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    RegularDyadicTree fallback;
    const RegularDyadicTree* tree = t ? &t->t : nullptr;
    if (!tree) {
      fallback = RegularDyadicTree::identity(fam.ground_depth(),
                                             fam.ground_depth());
      tree = &fallback;
    }
    CesaroReport rep = cesaro_experiment(fam, *tree, i_max, to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    j["iMax"] = i_max;
    ordered_json thresholds = ordered_json::object();
    for (const auto& [n, m] : rep.thresholds)
      thresholds[std::to_string(n)] = m;
    j["thresholds"] = std::move(thresholds);
    ordered_json rows = ordered_json::array();
    for (const CesaroRow& row : rep.rows) {
      ordered_json r;
      r["i"] = row.index;
      r["value"] = row.value.str();
      r["level"] = row.level;
      r["bound"] = row.bound.str();
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["queries"] = rep.queries;
    emit(j, out);
  });
}

ff_status ff_non_summability_json(ff_family* f, const char* const* words,
                                  size_t count, uint64_t i_max,
                                  uint64_t budget, char** out) {
  return guarded([&] {
    const Family& fam = deref(f);
    need(out != nullptr, "null output");
    PointConfig points = to_config(words, count);
    NonSummabilityReport rep = non_summability_witness(
        fam, points, std::size_t(i_max), to_budget(budget));
    ordered_json j;
    j["family"] = fam.name();
    ordered_json indices = ordered_json::array();
    for (std::size_t i : rep.indices) indices.push_back(i);
    j["indices"] = std::move(indices);
    j["subset"] = nodes_json(rep.subset.points);
    j["tested"] = rep.tested;
    j["exhaustive"] = rep.exhaustive;
    j["minAverage"] = rep.min_average.str();
    ordered_json norms = ordered_json::array();
    for (const Rat& r : rep.prefix_norms) norms.push_back(r.str());
    j["prefixNorms"] = std::move(norms);
    j["queries"] = rep.queries;
    emit(j, out);
  });
}

}  // extern "C"
