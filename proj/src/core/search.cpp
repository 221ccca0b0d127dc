#include "fillfam/search.hpp"

#include <algorithm>
#include <map>

#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

struct Counters {
  std::uint64_t cap;
  std::uint64_t used = 0;
  bool exhausted = false;

  bool tick() {
    if (used >= cap) {
      exhausted = true;
      return false;
    }
    ++used;
    return true;
  }
};

// Depth-first include/exclude walk over points in the given order.  Only
// descends while the included set stays a member, which loses nothing for
// hereditary families: every member is reachable through member prefixes.
// With stop_at > 0 the walk ends as soon as a member that large appears.
template <class P, class Member>
struct PlainSearch {
  const std::vector<P>& pts;
  const Member& member;
  Counters& tk;
  std::size_t stop_at;

  std::vector<P> cur, best;
  bool reached = false;

  void dfs(std::size_t i) {
    if (reached || tk.exhausted) return;
    if (cur.size() + (pts.size() - i) <= best.size()) return;
    if (i == pts.size()) return;
    cur.push_back(pts[i]);
    if (tk.tick() && member(cur)) {
      if (cur.size() > best.size()) {
        best = cur;
        if (stop_at > 0 && best.size() >= stop_at) reached = true;
      }
      dfs(i + 1);
    }
    cur.pop_back();
    if (reached || tk.exhausted) return;
    dfs(i + 1);
  }
};

// Search over count vectors per truncation class, for families whose
// membership is a function of the multiset of truncations.  Counts run
// high to low, so the first maximum found materializes to the least point
// list.  The materialized set of a count prefix is a subset of every
// completion, so a non-member prefix prunes the whole branch.
struct ClassedSearch {
  const Family& fam;
  std::size_t depth;
  const std::vector<std::vector<BitNode>>& cls;
  Counters& tk;
  std::size_t stop_at;

  std::vector<std::size_t> counts, best_counts;
  std::vector<std::size_t> suffix_avail;
  std::size_t total = 0, best_total = 0;
  bool reached = false;

  void run() {
    counts.assign(cls.size(), 0);
    best_counts = counts;
    suffix_avail.assign(cls.size() + 1, 0);
    for (std::size_t j = cls.size(); j-- > 0;)
      suffix_avail[j] = suffix_avail[j + 1] + cls[j].size();
    dfs(0);
  }

  std::vector<BitNode> materialize(const std::vector<std::size_t>& cnt,
                                   std::size_t upto) const {
    std::vector<BitNode> out;
    for (std::size_t x = 0; x < upto; ++x)
      out.insert(out.end(), cls[x].begin(), cls[x].begin() + cnt[x]);
    return out;
  }

  void dfs(std::size_t j) {
    if (reached || tk.exhausted) return;
    if (total + suffix_avail[j] <= best_total) return;
    if (j == cls.size()) return;
    for (std::size_t c = cls[j].size() + 1; c-- > 0;) {
      counts[j] = c;
      total += c;
      bool ok = true;
      if (c > 0)
        ok = tk.tick() && fam.member_points(depth, materialize(counts, j + 1));
      if (ok) {
        if (total > best_total) {
          best_total = total;
          best_counts = counts;
          if (stop_at > 0 && best_total >= stop_at) reached = true;
        }
        dfs(j + 1);
      }
      total -= c;
      counts[j] = 0;
      if (reached || tk.exhausted) return;
    }
  }
};

// Longest subset whose consecutive meets strictly increase (or strictly
// decrease), by dynamic programming over (start point, previous meet
// length).  The meet of two chosen points is the minimum consecutive meet
// between them, so a table per direction suffices.  Reconstruction always
// takes the smallest feasible next index, giving the least point list; the
// two directions' witnesses are compared at the end.
std::vector<BitNode> monotone_max_chain(const std::vector<BitNode>& pts) {
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  const std::size_t d = pts[0].length();

  std::vector<std::size_t> c(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    c[i] = meet_length(pts[i], pts[i + 1]);

  // finc[j][l+1]: chain length starting at j when every later meet must
  // exceed l.  fdec[j][l]: the same with meets below l; l = d allows all.
  std::vector<std::vector<int>> finc(n, std::vector<int>(d + 1, 1));
  std::vector<std::vector<int>> fdec(n, std::vector<int>(d + 1, 1));

  std::vector<int> tmp_inc(d + 1), tmp_dec(d + 1);
  for (std::size_t j = n; j-- > 0;) {
    std::fill(tmp_inc.begin(), tmp_inc.end(), 0);
    std::fill(tmp_dec.begin(), tmp_dec.end(), 0);
    std::size_t r = d;  // running min of c[j..j'-1]
    for (std::size_t jp = j + 1; jp < n; ++jp) {
      r = std::min(r, c[jp - 1]);
      tmp_inc[r] = std::max(tmp_inc[r], finc[jp][r + 1]);
      tmp_dec[r] = std::max(tmp_dec[r], fdec[jp][r]);
    }
    // finc[j][l+1] = 1 + max over meets r > l; suffix maxima over r
    int run = 0;
    for (std::size_t t = d + 1; t-- > 0;) {
      finc[j][t] = 1 + run;  // t = l + 1, so r >= t means r > l
      if (t > 0) run = std::max(run, tmp_inc[t - 1]);
    }
    run = 0;
    for (std::size_t l = 0; l <= d; ++l) {
      fdec[j][l] = 1 + run;  // meets r < l
      if (l < d) run = std::max(run, tmp_dec[l]);
    }
  }

  int best = 0;
  for (std::size_t j = 0; j < n; ++j)
    best = std::max({best, finc[j][0], fdec[j][d]});

  auto rebuild = [&](bool inc) -> std::vector<std::size_t> {
    const auto& f = inc ? finc : fdec;
    std::size_t start_idx = inc ? 0 : d;
    std::size_t j = n;
    for (std::size_t cand = 0; cand < n; ++cand)
      if (f[cand][start_idx] == best) {
        j = cand;
        break;
      }
    if (j == n) return {};
    std::vector<std::size_t> chain = {j};
    // meet constraint carried as a table index
    std::size_t bound = start_idx;
    int rem = best;
    while (rem > 1) {
      std::size_t r = d;
      bool stepped = false;
      for (std::size_t jp = j + 1; jp < n && !stepped; ++jp) {
        r = std::min(r, c[jp - 1]);
        bool allowed = inc ? (r + 1 > bound) : (r < bound);
        std::size_t next_bound = inc ? r + 1 : r;
        if (allowed && f[jp][next_bound] == rem - 1) {
          chain.push_back(jp);
          j = jp;
          bound = next_bound;
          rem -= 1;
          stepped = true;
        }
      }
      if (!stepped) fail(Errc::internal, "chain table reconstruction stuck");
    }
    return chain;
  };

  std::vector<BitNode> out;
  for (bool inc : {true, false}) {
    std::vector<std::size_t> chain = rebuild(inc);
    if (static_cast<int>(chain.size()) != best) continue;
    std::vector<BitNode> w;
    for (std::size_t idx : chain) w.push_back(pts[idx]);
    if (out.empty() || w < out) out = w;
  }
  if (static_cast<int>(out.size()) != best)
    fail(Errc::internal, "chain table produced no witness");
  return out;
}

struct BitsRun {
  std::vector<BitNode> best;
  bool exact;
  bool reached;
  std::uint64_t queries;
};

BitsRun run_bits(const Family& fam, const PointConfig& cfg, std::size_t stop_at,
                 const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument,
         "family '" + fam.name() + "' does not take word configurations");
  Counters tk{budget.max_queries};

  if (fam.has_monotone_meets()) {
    std::vector<BitNode> w = monotone_max_chain(cfg.points);
    return {w, true, stop_at > 0 && w.size() >= stop_at, 0};
  }

  std::optional<std::size_t> dd = fam.determination_depth();
  if (dd && *dd < cfg.depth) {
    std::map<std::string, std::vector<BitNode>> by_class;
    for (const BitNode& p : cfg.points)
      by_class[p.str().substr(0, *dd)].push_back(p);
    std::vector<std::vector<BitNode>> cls;
    for (auto& [key, members] : by_class) cls.push_back(std::move(members));
    ClassedSearch cs{fam, cfg.depth, cls, tk, stop_at, {}, {}, {}, 0, 0, false};
    cs.run();
    return {cs.materialize(cs.best_counts, cls.size()), !tk.exhausted,
            cs.reached, tk.used};
  }

  if (stop_at == 0) {
    auto member = [&](const std::vector<BitNode>& s) {
      return fam.member_points(cfg.depth, s);
    };
    PlainSearch<BitNode, decltype(member)> ps{cfg.points, member, tk, 0,
                                              {}, {}, false};
    ps.dfs(0);
    return {ps.best, !tk.exhausted, false, tk.used};
  }
  // existence probe: walk from the top of the order
  std::vector<BitNode> rev(cfg.points.rbegin(), cfg.points.rend());
  auto member = [&](const std::vector<BitNode>& s) {
    std::vector<BitNode> fwd(s.rbegin(), s.rend());
    return fam.member_points(cfg.depth, fwd);
  };
  PlainSearch<BitNode, decltype(member)> ps{rev, member, tk, stop_at,
                                            {}, {}, false};
  ps.dfs(0);
  std::vector<BitNode> fwd(ps.best.rbegin(), ps.best.rend());
  return {fwd, !tk.exhausted, ps.reached, tk.used};
}

struct NatRun {
  std::vector<std::int64_t> best;
  bool exact;
  bool reached;
  std::uint64_t queries;
};

NatRun run_nat(const Family& fam, const NatSet& cfg, std::size_t stop_at,
               const SearchBudget& budget) {
  if (fam.kind() != GroundKind::nat)
    fail(Errc::invalid_argument,
         "family '" + fam.name() + "' does not take integer configurations");
  Counters tk{budget.max_queries};
  if (stop_at == 0) {
    auto member = [&](const std::vector<std::int64_t>& s) {
      return fam.member_nat(s);
    };
    PlainSearch<std::int64_t, decltype(member)> ps{cfg.elems, member, tk, 0,
                                                   {}, {}, false};
    ps.dfs(0);
    return {ps.best, !tk.exhausted, false, tk.used};
  }
  std::vector<std::int64_t> rev(cfg.elems.rbegin(), cfg.elems.rend());
  auto member = [&](const std::vector<std::int64_t>& s) {
    std::vector<std::int64_t> fwd(s.rbegin(), s.rend());
    return fam.member_nat(fwd);
  };
  PlainSearch<std::int64_t, decltype(member)> ps{rev, member, tk, stop_at,
                                                 {}, {}, false};
  ps.dfs(0);
  std::vector<std::int64_t> fwd(ps.best.rbegin(), ps.best.rend());
  return {fwd, !tk.exhausted, ps.reached, tk.used};
}

}  // namespace

MaxMemberResult max_member_within(const Family& fam, const PointConfig& cfg,
                                  const SearchBudget& budget) {
  BitsRun r = run_bits(fam, cfg, 0, budget);
  return {PointConfig::make(cfg.depth, r.best), r.exact, r.queries};
}

MaxMemberNatResult max_member_within(const Family& fam, const NatSet& cfg,
                                     const SearchBudget& budget) {
  NatRun r = run_nat(fam, cfg, 0, budget);
  return {NatSet::make(r.best), r.exact, r.queries};
}

bool has_member_at_least(const Family& fam, const PointConfig& cfg,
                         std::size_t t, const SearchBudget& budget) {
  if (t == 0) return true;
  BitsRun r = run_bits(fam, cfg, t, budget);
  if (r.reached) return true;
  if (!r.exact)
    fail(Errc::budget_exceeded, "membership search budget exhausted",
         R"({"queries":)" + std::to_string(r.queries) + "}");
  return false;
}

bool has_member_at_least(const Family& fam, const NatSet& cfg, std::size_t t,
                         const SearchBudget& budget) {
  if (t == 0) return true;
  NatRun r = run_nat(fam, cfg, t, budget);
  if (r.reached) return true;
  if (!r.exact)
    fail(Errc::budget_exceeded, "membership search budget exhausted",
         R"({"queries":)" + std::to_string(r.queries) + "}");
  return false;
}

// Exposed for density sweeps: one run that either certifies a member of
// size >= stop_at exists (reached), or exhausts the space and reports the
// true maximum.
MaxMemberResult max_member_or_reach(const Family& fam, const PointConfig& cfg,
                                    std::size_t stop_at,
                                    const SearchBudget& budget, bool* reached) {
  BitsRun r = run_bits(fam, cfg, stop_at, budget);
  if (reached) *reached = r.reached;
  return {PointConfig::make(cfg.depth, r.best), r.exact, r.queries};
}

MaxMemberNatResult max_member_or_reach(const Family& fam, const NatSet& cfg,
                                       std::size_t stop_at,
                                       const SearchBudget& budget,
                                       bool* reached) {
  NatRun r = run_nat(fam, cfg, stop_at, budget);
  if (reached) *reached = r.reached;
  return {NatSet::make(r.best), r.exact, r.queries};
}

}  // namespace fillfam
