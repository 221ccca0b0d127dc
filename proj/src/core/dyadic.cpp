#include "fillfam/dyadic.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

std::vector<std::string> level_words(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(std::size_t(1) << n);
  for (std::size_t v = 0; v < (std::size_t(1) << n); ++v) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
      if (v >> (n - 1 - i) & 1) s[i] = '1';
    out.push_back(std::move(s));
  }
  return out;
}

// Every nonempty antichain of one level, sized then lexicographic.
std::vector<std::vector<std::string>> level_antichains(std::size_t n) {
  std::vector<std::string> words = level_words(n);
  std::size_t m = words.size();
  std::vector<std::vector<std::string>> out;
  out.reserve((std::size_t(1) << m) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << m); ++mask) {
    std::vector<std::string> pick;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) pick.push_back(words[i]);
    out.push_back(std::move(pick));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::string word_list_json(const std::vector<std::string>& words) {
  std::string s = "[";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s += ',';
    s += '"';
    s += words[i];
    s += '"';
  }
  s += ']';
  return s;
}

struct VerdictOutcome {
  Verdict v = Verdict::mixed;
  bool decided = false;
};

// Surveys transversals of the product of cylinders below `roots`.  When the
// family is determined at or above every root, one transversal settles it
// (all transversals share a truncation multiset); otherwise the product is
// walked with an odometer until homogeneity is proven, mixture appears, or
// the budget dies.
VerdictOutcome product_verdict(const Family& fam, std::size_t host_depth,
                               const std::vector<BitNode>& roots,
                               std::uint64_t& remaining) {
  auto dd = fam.determination_depth();
  std::size_t min_len = host_depth;
  for (const BitNode& r : roots) min_len = std::min(min_len, r.length());
  if (dd && *dd <= min_len) {
    if (remaining == 0) return {};
    --remaining;
    std::vector<BitNode> pts;
    pts.reserve(roots.size());
    for (const BitNode& r : roots)
      pts.push_back(r.extended(host_depth - r.length()));
    bool in = fam.member(PointConfig::make(host_depth, std::move(pts)));
    return {in ? Verdict::trapped : Verdict::disjoint, true};
  }

  std::size_t d = roots.size();
  std::vector<std::uint64_t> counter(d, 0), limit(d);
  for (std::size_t i = 0; i < d; ++i)
    limit[i] = std::uint64_t(1) << (host_depth - roots[i].length());
  bool seen_in = false, seen_out = false;
  while (true) {
    if (remaining == 0) {
      if (seen_in && seen_out) return {Verdict::mixed, true};
      return {};
    }
    --remaining;
    std::vector<BitNode> pts;
    pts.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t pad = host_depth - roots[i].length();
      std::string w = roots[i].str();
      for (std::size_t b = pad; b-- > 0;) w += char('0' + (counter[i] >> b & 1));
      pts.emplace_back(std::move(w));
    }
    (fam.member(PointConfig::make(host_depth, std::move(pts))) ? seen_in
                                                               : seen_out) = true;
    if (seen_in && seen_out) return {Verdict::mixed, true};
    bool done = false;
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++counter[i] < limit[i]) break;
      counter[i] = 0;
      if (i == 0) done = true;
    }
    if (done)
      return {seen_in ? Verdict::trapped : Verdict::disjoint, true};
  }
}

}  // namespace

RegularDyadicTree RegularDyadicTree::identity(std::size_t depth,
                                              std::size_t host_depth) {
  if (depth == 0)
    fail(Errc::invalid_argument, "tree needs at least the root level");
  if (host_depth < depth)
    fail(Errc::invalid_argument,
         "host depth too small for identity labels of depth " +
             std::to_string(depth));
  RegularDyadicTree t;
  t.depth = depth;
  t.host_depth = host_depth;
  for (std::size_t n = 0; n < depth; ++n)
    for (const std::string& s : level_words(n)) t.labels[s] = BitNode(s);
  return t;
}

const BitNode& RegularDyadicTree::label(const std::string& s) const {
  auto it = labels.find(s);
  if (it == labels.end())
    fail(Errc::invalid_argument, "no label at index '" + s + "'");
  return it->second;
}

std::size_t RegularDyadicTree::level_length(std::size_t level) const {
  if (level >= depth)
    fail(Errc::invalid_argument, "level beyond tree depth");
  return label(std::string(level, '0')).length();
}

bool validate_regular(const RegularDyadicTree& t) {
  if (t.depth == 0) return false;
  if (t.labels.size() != (std::size_t(1) << t.depth) - 1) return false;
  std::vector<std::pair<BitNode, BitNode>> items;
  for (std::size_t n = 0; n < t.depth; ++n)
    for (const std::string& s : level_words(n)) {
      auto it = t.labels.find(s);
      if (it == t.labels.end()) return false;
      if (it->second.length() >= t.host_depth) return false;
      items.emplace_back(BitNode(s), it->second);
    }
  for (const auto& [s1, u1] : items)
    for (const auto& [s2, u2] : items) {
      if (s1 == s2) continue;
      bool sp = s1.is_prefix_of(s2);
      if (sp != u1.is_prefix_of(u2)) return false;
      if (!sp && !s2.is_prefix_of(s1)) {
        if (u1.comparable(u2)) return false;
        if (precedes(s1, s2) != precedes(u1, u2)) return false;
      }
      if ((s1.length() == s2.length()) != (u1.length() == u2.length()))
        return false;
    }
  return true;
}

CylinderSet CylinderSet::make(std::size_t host_depth,
                              std::vector<BitNode> roots) {
  for (const BitNode& r : roots)
    if (r.length() > host_depth)
      fail(Errc::invalid_argument,
           "cylinder root " + r.str() + " outlives the host depth");
  std::sort(roots.begin(), roots.end(),
            [](const BitNode& a, const BitNode& b) { return a.str() < b.str(); });
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (roots[i] == roots[i + 1])
      fail(Errc::invalid_argument, "duplicate cylinder root " + roots[i].str());
    // string order makes any prefix relation adjacent
    if (roots[i].is_prefix_of(roots[i + 1]))
      fail(Errc::comparable_nodes, "cylinder roots " + roots[i].str() +
                                       " and " + roots[i + 1].str() +
                                       " share a branch");
  }
  CylinderSet c;
  c.host_depth = host_depth;
  c.roots = std::move(roots);
  return c;
}

std::uint64_t CylinderSet::count() const {
  std::uint64_t total = 0;
  for (const BitNode& r : roots)
    total += std::uint64_t(1) << (host_depth - r.length());
  return total;
}

PointConfig CylinderSet::materialize(std::uint64_t max_points) const {
  if (count() > max_points)
    fail(Errc::budget_exceeded, "materializing " + std::to_string(count()) +
                                    " cylinder points exceeds the cap");
  std::vector<BitNode> pts;
  pts.reserve(count());
  for (const BitNode& r : roots) {
    std::size_t pad = host_depth - r.length();
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << pad); ++v) {
      std::string w = r.str();
      for (std::size_t b = pad; b-- > 0;) w += char('0' + (v >> b & 1));
      pts.emplace_back(std::move(w));
    }
  }
  return PointConfig::make(host_depth, std::move(pts));
}

CylinderSet cylinder(const RegularDyadicTree& t, const std::string& s) {
  return CylinderSet::make(t.host_depth, {t.label(s)});
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::trapped: return "trapped";
    case Verdict::disjoint: return "disjoint";
    case Verdict::mixed: return "mixed";
  }
  return "?";
}

TrappedReport decides_at(const RegularDyadicTree& t, const Family& fam,
                         std::size_t n, const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "cylinder verdicts need a word family");
  if (n >= t.depth) fail(Errc::invalid_argument, "level beyond tree depth");
  if (n > 4)
    fail(Errc::precondition,
         "antichain enumeration is capped at level 4 (2^16 antichains)");

  TrappedReport rep;
  rep.level = n;
  std::uint64_t remaining = budget.max_queries;
  bool starved = false;
  for (const auto& words : level_antichains(n)) {
    if (starved) {
      rep.undecided.push_back(words);
      continue;
    }
    std::vector<BitNode> roots;
    roots.reserve(words.size());
    for (const auto& s : words) roots.push_back(t.label(s));
    VerdictOutcome out = product_verdict(fam, t.host_depth, roots, remaining);
    if (!out.decided) {
      starved = true;
      rep.undecided.push_back(words);
      continue;
    }
    rep.verdicts[words] = out.v;
    if (out.v == Verdict::trapped)
      rep.max_trapped_size = std::max(rep.max_trapped_size, words.size());
  }
  rep.queries = budget.max_queries - remaining;
  rep.complete = rep.undecided.empty();

  // dropping one index from a trapped antichain must stay trapped
  if (rep.complete)
    for (const auto& [words, v] : rep.verdicts)
      if (v == Verdict::trapped && words.size() > 1)
        for (std::size_t i = 0; i < words.size(); ++i) {
          std::vector<std::string> sub = words;
          sub.erase(sub.begin() + std::ptrdiff_t(i));
          if (rep.verdicts.at(sub) != Verdict::trapped)
            fail(Errc::internal, "subset of a trapped antichain not trapped");
        }
  return rep;
}

namespace {

// Shared level-growing skeleton of the two tree builders.  check(level,
// candidate labels) returns true to commit; on false it must set its own
// blocking note.  Lengths start at the family's determination depth when
// that is known and fits, since shallower labels only cost budget.
template <typename Check>
RegularDyadicTree grow_tree(const Family& fam, std::size_t levels,
                            std::size_t host_depth, Check&& check) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "tree construction needs a word family");
  if (host_depth < levels + 1)
    fail(Errc::precondition,
         "host depth " + std::to_string(host_depth) + " cannot hold " +
             std::to_string(levels + 1) + " strictly deeper label levels");
  auto dd = fam.determination_depth();
  RegularDyadicTree t;
  t.depth = levels + 1;
  t.host_depth = host_depth;
  std::size_t prev_len = 0;
  bool have_prev = false;
  for (std::size_t k = 0; k <= levels; ++k) {
    std::size_t start = have_prev ? prev_len + 1 : 0;
    std::size_t cap = host_depth - 1 - (levels - k);
    if (dd && *dd <= cap) start = std::max(start, *dd);
    std::vector<std::string> words = level_words(k);
    bool placed = false;
    for (std::size_t len = start; len <= cap && !placed; ++len) {
      std::map<std::string, BitNode> cand;
      for (const std::string& s : words) {
        std::string base;
        if (k > 0) base = t.labels.at(s.substr(0, k - 1)).str() + s.back();
        base.resize(len, '0');
        cand[s] = BitNode(base);
      }
      if (check(k, len, cand)) {
        for (auto& [s, b] : cand) t.labels[s] = std::move(b);
        prev_len = len;
        have_prev = true;
        placed = true;
      }
    }
    if (!placed)
      fail(Errc::search_failed,
           "no label length up to " + std::to_string(cap) +
               " works at level " + std::to_string(k));
  }
  if (!validate_regular(t))
    fail(Errc::internal, "constructed tree failed validation");
  return t;
}

}  // namespace

RegularDyadicTree build_deciding_tree(const Family& fam,
                                      std::size_t target_levels,
                                      std::size_t host_depth,
                                      const SearchBudget& budget) {
  if (target_levels > 4)
    fail(Errc::precondition,
         "antichain enumeration is capped at 4 levels (2^16 antichains)");
  auto dd = fam.determination_depth();
  std::uint64_t remaining = budget.max_queries;
  std::vector<std::string> blocking;
  try {
    return grow_tree(
        fam, target_levels, host_depth,
        [&](std::size_t k, std::size_t len,
            const std::map<std::string, BitNode>& cand) {
          if (dd && *dd <= len) return true;  // nothing at this level can mix
          for (const auto& words : level_antichains(k)) {
            std::vector<BitNode> roots;
            roots.reserve(words.size());
            for (const auto& s : words) roots.push_back(cand.at(s));
            VerdictOutcome out =
                product_verdict(fam, host_depth, roots, remaining);
            if (!out.decided)
              fail(Errc::budget_exceeded,
                   "query budget died homogenizing level " + std::to_string(k),
                   "{\"antichain\":" + word_list_json(words) + "}");
            if (out.v == Verdict::mixed) {
              blocking = words;
              return false;
            }
          }
          return true;
        });
  } catch (const Error& e) {
    if (e.code() == Errc::search_failed && !blocking.empty())
      fail(Errc::search_failed,
           std::string(e.what()) + "; last mixed antichain recorded",
           "{\"antichain\":" + word_list_json(blocking) + "}");
    throw;
  }
}

std::vector<BitNode> trapped_lower_bound(const RegularDyadicTree& t,
                                         const Family& fam, const Rat& eps,
                                         std::size_t n,
                                         const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "cylinder verdicts need a word family");
  if (n >= t.depth) fail(Errc::invalid_argument, "level beyond tree depth");
  if (!(Rat(0) < eps) || Rat(1) < eps)
    fail(Errc::invalid_argument, "eps must lie in (0, 1]");

  // leftmost transversal: one zero-padded point per level-n cylinder
  std::vector<std::string> words = level_words(n);
  std::map<std::string, std::string> word_of_point;
  std::vector<BitNode> pts;
  pts.reserve(words.size());
  for (const auto& s : words) {
    const BitNode& r = t.label(s);
    BitNode p = r.extended(t.host_depth - r.length());
    word_of_point[p.str()] = s;
    pts.push_back(p);
  }
  PointConfig x = PointConfig::make(t.host_depth, std::move(pts));

  MaxMemberResult mm = max_member_within(fam, x, budget);
  if (!mm.exact)
    fail(Errc::budget_exceeded, "largest-member search ran out of budget",
         "{\"queries\":" + std::to_string(mm.queries) + "}");
  Rat frac(std::int64_t(mm.witness.size()), std::int64_t(1) << n);
  if (frac < eps) {
    std::string detail = "{\"config\":[";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) detail += ',';
      detail += '"' + x.points[i].str() + '"';
    }
    detail += "],\"memberSize\":" + std::to_string(mm.witness.size()) +
              ",\"eps\":\"" + eps.str() + "\"}";
    fail(Errc::precondition,
         "family reaches only " + std::to_string(mm.witness.size()) + " of " +
             std::to_string(x.size()) + " transversal points, below eps",
         detail);
  }

  std::vector<std::string> kept;
  std::vector<BitNode> roots, out;
  for (const BitNode& p : mm.witness.points) {
    const std::string& s = word_of_point.at(p.str());
    kept.push_back(s);
    roots.push_back(t.label(s));
    out.emplace_back(s);
  }
  std::uint64_t remaining = budget.max_queries;
  VerdictOutcome v = product_verdict(fam, t.host_depth, roots, remaining);
  if (!v.decided)
    fail(Errc::budget_exceeded, "query budget died verifying the antichain");
  if (v.v != Verdict::trapped)
    fail(Errc::precondition,
         "tree does not decide: the selected antichain is " +
             std::string(verdict_name(v.v)),
         "{\"antichain\":" + word_list_json(kept) + "}");
  return out;
}

bool domination_transfer(const RegularDyadicTree& t, const Family& fam,
                         const std::vector<BitNode>& upper,
                         const std::vector<BitNode>& lower,
                         const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "cylinder verdicts need a word family");
  if (upper.empty() || lower.empty())
    fail(Errc::invalid_argument, "antichains must be nonempty");
  std::size_t n = upper.front().length(), k = lower.front().length();
  auto check_level = [&t](const std::vector<BitNode>& ws, std::size_t len) {
    std::set<std::string> seen;
    for (const BitNode& w : ws) {
      if (w.length() != len)
        fail(Errc::invalid_argument, "antichain words must share one level");
      if (!seen.insert(w.str()).second)
        fail(Errc::invalid_argument, "duplicate antichain word " + w.str());
    }
    if (len >= t.depth)
      fail(Errc::invalid_argument, "level beyond tree depth");
  };
  check_level(upper, n);
  check_level(lower, k);
  if (k > n)
    fail(Errc::precondition, "dominated words must sit at or above the level");
  for (const BitNode& w : lower) {
    bool dom = false;
    for (const BitNode& s : upper)
      if (w.is_prefix_of(s)) {
        dom = true;
        break;
      }
    if (!dom)
      fail(Errc::precondition,
           "word " + w.str() + " has no extension in the upper antichain");
  }

  std::uint64_t remaining = budget.max_queries;
  auto verdict = [&](const std::vector<BitNode>& ws) {
    std::vector<BitNode> roots;
    roots.reserve(ws.size());
    for (const BitNode& w : ws) roots.push_back(t.label(w.str()));
    VerdictOutcome out = product_verdict(fam, t.host_depth, roots, remaining);
    if (!out.decided)
      fail(Errc::budget_exceeded, "query budget died on a verdict");
    return out.v;
  };
  Verdict vu = verdict(upper);
  Verdict vl = verdict(lower);
  if (vu == Verdict::mixed || vl == Verdict::mixed)
    fail(Errc::precondition, "tree does not decide the touched antichains");
  if (vu == Verdict::trapped && vl != Verdict::trapped)
    fail(Errc::precondition,
         "domination transfer failed: upper antichain trapped, lower not");
  return vl == Verdict::trapped;
}

Rat measure(const RegularDyadicTree& t, const CylinderSet& c) {
  if (c.host_depth != t.host_depth)
    fail(Errc::invalid_argument, "cylinder set lives in a different host");
  std::map<std::string, std::size_t> level_by_label;
  for (const auto& [s, u] : t.labels) level_by_label[u.str()] = s.size();
  Rat total(0);
  for (const BitNode& r : c.roots) {
    auto it = level_by_label.find(r.str());
    if (it == level_by_label.end())
      fail(Errc::invalid_argument, "root " + r.str() + " is not a tree label");
    total = total + Rat(1, std::int64_t(1) << it->second);
  }
  return total;
}

CylinderSet limit_closed_set(const RegularDyadicTree& t, const Family& fam,
                             const Rat& eps, std::size_t max_level,
                             std::size_t resolution,
                             const SearchBudget& budget) {
  if (max_level >= t.depth)
    fail(Errc::invalid_argument, "max level beyond tree depth");
  if (max_level < resolution + 1)
    fail(Errc::invalid_argument,
         "need at least two levels from the resolution up");

  std::vector<std::vector<BitNode>> trapped;
  std::vector<std::vector<std::string>> projections;
  for (std::size_t n = resolution; n <= max_level; ++n) {
    trapped.push_back(trapped_lower_bound(t, fam, eps, n, budget));
    std::set<std::string> prefixes;
    for (const BitNode& s : trapped.back())
      prefixes.insert(s.str().substr(0, resolution));
    projections.emplace_back(prefixes.begin(), prefixes.end());
  }

  // most frequent projection wins; first occurrence breaks ties
  std::size_t best = 0, best_count = 0;
  for (std::size_t i = 0; i < projections.size(); ++i) {
    std::size_t cnt = 0;
    for (const auto& p : projections) cnt += (p == projections[i]);
    if (cnt > best_count) {
      best = i;
      best_count = cnt;
    }
  }
  if (best_count < 2)
    fail(Errc::search_failed,
         "no projected antichain recurs across the levels");

  const std::vector<std::string>& core = projections[best];
  std::vector<BitNode> lower;
  lower.reserve(core.size());
  for (const std::string& s : core) lower.emplace_back(s);
  if (!domination_transfer(t, fam, trapped[best], lower, budget))
    fail(Errc::internal, "stable projection escaped trapping");

  std::vector<BitNode> roots;
  roots.reserve(core.size());
  for (const std::string& s : core) roots.push_back(t.label(s));
  CylinderSet out = CylinderSet::make(t.host_depth, std::move(roots));
  if (measure(t, out) < eps)
    fail(Errc::internal, "stable projection lost mass");
  return out;
}

namespace {

// All configurations of at most gmax cylinder points belong to the family.
// A root at the determination depth needs one probe per size; otherwise
// subsets are enumerated smallest first, stopping at the first failure.
bool cylinder_certifies(const Family& fam, const BitNode& root,
                        std::size_t host_depth, std::size_t gmax,
                        std::uint64_t& remaining, std::size_t level) {
  auto dd = fam.determination_depth();
  PointConfig cyl =
      CylinderSet::make(host_depth, {root}).materialize();
  std::size_t top = std::min<std::size_t>(gmax, cyl.size());
  auto probe = [&](const std::vector<std::size_t>& idx) {
    if (remaining == 0)
      fail(Errc::budget_exceeded,
           "query budget died certifying level " + std::to_string(level),
           "{\"index\":\"" + root.str() + "\"}");
    --remaining;
    return fam.member(cyl.subset_by_indices(idx));
  };
  if (dd && *dd <= root.length()) {
    std::vector<std::size_t> idx;
    for (std::size_t sz = 1; sz <= top; ++sz) {
      idx.push_back(sz - 1);
      if (!probe(idx)) return false;
    }
    return true;
  }
  for (std::size_t sz = 1; sz <= top; ++sz) {
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      if (!probe(idx)) return false;
      std::size_t i = sz;
      bool rolled = false;
      while (i > 0) {
        --i;
        if (idx[i] + (sz - i) < cyl.size()) {
          ++idx[i];
          for (std::size_t j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) rolled = true;
      }
      if (rolled) break;
    }
  }
  return true;
}

}  // namespace

RegularDyadicTree graded_filling_tree(const Family& fam,
                                      const std::vector<std::size_t>& g,
                                      std::size_t levels,
                                      std::size_t host_depth,
                                      const SearchBudget& budget) {
  if (g.size() < levels + 1)
    fail(Errc::invalid_argument,
         "need a subset bound for every level 0.." + std::to_string(levels));
  std::uint64_t remaining = budget.max_queries;
  std::string blocking;
  std::size_t blocking_level = 0;
  bool have_blocking = false;
  try {
    return grow_tree(fam, levels, host_depth,
                     [&](std::size_t k, std::size_t,
                         const std::map<std::string, BitNode>& cand) {
                       for (const auto& [s, root] : cand)
                         if (!cylinder_certifies(fam, root, host_depth, g[k],
                                                 remaining, k)) {
                           blocking = s;
                           blocking_level = k;
                           have_blocking = true;
                           return false;
                         }
                       return true;
                     });
  } catch (const Error& e) {
    if (e.code() == Errc::search_failed && have_blocking)
      fail(Errc::search_failed,
           std::string(e.what()) + "; subset bound " +
               std::to_string(g[blocking_level]) + " fails below index '" +
               blocking + "'",
           "{\"level\":" + std::to_string(blocking_level) + ",\"index\":\"" +
               blocking + "\"}");
    throw;
  }
}

}  // namespace fillfam
