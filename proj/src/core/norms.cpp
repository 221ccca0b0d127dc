#include "fillfam/norms.hpp"

#include <algorithm>
#include <string>

#include "fillfam/density.hpp"
#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

Rat rat_abs(const Rat& x) { return x < Rat(0) ? -x : x; }

bool point_less(const BitNode& a, const BitNode& b) {
  return a.str() < b.str();
}

}  // namespace

SupportedVector SupportedVector::make(
    std::size_t depth, std::vector<std::pair<BitNode, Rat>> entries) {
  std::vector<std::pair<BitNode, Rat>> kept;
  for (auto& [p, a] : entries) {
    if (p.length() != depth)
      fail(Errc::invalid_argument, "support point " + p.str() +
                                       " does not have depth " +
                                       std::to_string(depth));
    if (a != Rat(0)) kept.emplace_back(p, a);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    return point_less(x.first, y.first);
  });
  for (std::size_t i = 0; i + 1 < kept.size(); ++i)
    if (kept[i].first == kept[i + 1].first)
      fail(Errc::invalid_argument,
           "duplicate support point " + kept[i].first.str());
  SupportedVector v;
  v.depth = depth;
  v.entries = std::move(kept);
  return v;
}

SupportedVector SupportedVector::indicator(const PointConfig& g) {
  std::vector<std::pair<BitNode, Rat>> e;
  e.reserve(g.size());
  for (const BitNode& p : g.points) e.emplace_back(p, Rat(1));
  return make(g.depth, std::move(e));
}

NormResult norm_f(const Family& fam, const SupportedVector& v,
                  const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "norms need a word family");
  NormResult res;
  res.lower = Rat(0);
  res.upper = Rat(0);
  if (v.entries.empty()) return res;

  std::uint64_t remaining = budget.max_queries;
  Rat mass(0);
  for (const auto& [p, a] : v.entries) mass = mass + rat_abs(a);

  // the norm formula needs every singleton of the support in the family
  for (const auto& [p, a] : v.entries) {
    if (remaining == 0) {
      res.exact = false;
      res.upper = mass;
      return res;
    }
    --remaining;
    ++res.queries;
    if (!fam.member_points(v.depth, {p}))
      fail(Errc::precondition, "family misses the singleton " + p.str(),
           "{\"point\":\"" + p.str() + "\"}");
  }

  std::vector<std::pair<Rat, BitNode>> items;
  items.reserve(v.entries.size());
  for (const auto& [p, a] : v.entries) items.emplace_back(rat_abs(a), p);
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& x, const auto& y) { return y.first < x.first; });
  const std::size_t m = items.size();
  std::vector<Rat> suffix(m + 1, Rat(0));
  for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + items[i].first;

  Rat best(0), open(0);
  std::vector<BitNode> best_set, chosen;
  bool died = false;

  auto dfs = [&](auto&& self, std::size_t pos, Rat sum) -> void {
    if (died) {
      Rat b = sum + suffix[pos];
      if (open < b) open = b;
      return;
    }
    if (best < sum) {
      best = sum;
      best_set = chosen;
    }
    if (pos == m) return;
    if (!(best < sum + suffix[pos])) return;  // nothing strictly better left
    chosen.push_back(items[pos].second);
    if (remaining == 0) {
      died = true;
      Rat b = sum + suffix[pos];
      if (open < b) open = b;
      chosen.pop_back();
      return;
    }
    --remaining;
    ++res.queries;
    std::vector<BitNode> sorted = chosen;
    std::sort(sorted.begin(), sorted.end(), point_less);
    if (fam.member_points(v.depth, sorted))
      self(self, pos + 1, sum + items[pos].first);
    chosen.pop_back();
    self(self, pos + 1, sum);
  };
  dfs(dfs, 0, Rat(0));

  std::sort(best_set.begin(), best_set.end(), point_less);
  res.lower = best;
  res.witness = std::move(best_set);
  res.exact = !died;
  res.upper = died ? (open < best ? best : open) : best;
  return res;
}

BitNode dyadic_enum(std::uint64_t i, std::size_t m) {
  if (m >= 64) fail(Errc::invalid_argument, "prefix length capped at 63");
  if ((i >> m) != 0)
    fail(Errc::invalid_argument, "prefix of length " + std::to_string(m) +
                                     " cannot encode index " +
                                     std::to_string(i));
  std::string w(m, '0');
  for (std::size_t k = 0; k < m; ++k)
    if (i >> k & 1) w[k] = '1';
  return BitNode(w);
}

BitNode branch_point(const RegularDyadicTree& t, std::uint64_t i) {
  const std::size_t top = t.depth - 1;
  if (top >= 64 || (i >> top) != 0)
    fail(Errc::invalid_argument, "branch index " + std::to_string(i) +
                                     " needs a tree of more than " +
                                     std::to_string(t.depth) + " levels");
  const BitNode& deep = t.label(dyadic_enum(i, top).str());
  return deep.extended(t.host_depth - deep.length());
}

CesaroReport cesaro_experiment(const Family& fam, const RegularDyadicTree& t,
                               std::uint64_t i_max,
                               const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "the experiment needs a word family");
  const std::size_t top = t.depth - 1;
  if (top >= 64 || (i_max >> top) != 0)
    fail(Errc::invalid_argument,
         "i_max must stay below 2^" + std::to_string(top));

  CesaroReport rep;
  std::uint64_t remaining = budget.max_queries;
  auto spend = [&](std::uint64_t q) {
    rep.queries += q;
    remaining = q >= remaining ? 0 : remaining - q;
  };

  std::vector<BitNode> xs;
  xs.reserve(i_max + 1);
  for (std::uint64_t i = 0; i <= i_max; ++i) xs.push_back(branch_point(t, i));

  for (const BitNode& x : xs) {
    if (remaining == 0)
      fail(Errc::budget_exceeded, "query budget died on the singleton check");
    --remaining;
    ++rep.queries;
    if (!fam.member_points(t.host_depth, {x}))
      fail(Errc::precondition,
           "family misses the singleton branch point " + x.str());
  }

  std::size_t n_max = 0;
  while (n_max < top && (std::uint64_t(1) << n_max) <= i_max) ++n_max;

  auto dd = fam.determination_depth();
  for (std::size_t n = 1; n <= n_max; ++n) {
    // leftmost transversal of level n: every label padded with zeros
    std::vector<BitNode> pts;
    pts.reserve(std::size_t(1) << n);
    for (std::size_t v = 0; v < (std::size_t(1) << n); ++v) {
      std::string s(n, '0');
      for (std::size_t b = 0; b < n; ++b)
        if (v >> (n - 1 - b) & 1) s[b] = '1';
      const BitNode& lab = t.label(s);
      pts.push_back(lab.extended(t.host_depth - lab.length()));
    }
    PointConfig trans = PointConfig::make(t.host_depth, std::move(pts));

    std::size_t mn = 0;
    if (dd && *dd <= t.level_length(n)) {
      // labels reach the determination depth: verdicts cannot mix, and the
      // trapped maximum equals the largest member of one transversal
      MaxMemberResult mm =
          max_member_within(fam, trans, SearchBudget{remaining});
      spend(mm.queries);
      if (!mm.exact)
        fail(Errc::budget_exceeded,
             "query budget died sizing level " + std::to_string(n));
      mn = mm.witness.size();
    } else if (n <= 4) {
      TrappedReport r = decides_at(t, fam, n, SearchBudget{remaining});
      spend(r.queries);
      if (!r.complete)
        fail(Errc::budget_exceeded,
             "query budget died classifying level " + std::to_string(n));
      for (const auto& [words, verdict] : r.verdicts)
        if (verdict == Verdict::mixed)
          fail(Errc::precondition,
               "tree does not decide at level " + std::to_string(n));
      mn = r.max_trapped_size;
      MaxMemberResult mm =
          max_member_within(fam, trans, SearchBudget{remaining});
      spend(mm.queries);
      if (mm.exact && mm.witness.size() != mn)
        fail(Errc::internal,
             "trapped maximum disagrees with the transversal search");
    } else {
      fail(Errc::precondition,
           "cannot verify the tree decides at level " + std::to_string(n) +
               ": enumeration infeasible and labels stay above the "
               "determination depth");
    }
    rep.thresholds[n] = mn;
  }

  std::size_t prev = 0;
  std::vector<BitNode> prefix;
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    prefix.push_back(xs[i]);
    PointConfig cfg = PointConfig::make(t.host_depth, prefix);
    MaxMemberResult mm = max_member_within(fam, cfg, SearchBudget{remaining});
    spend(mm.queries);
    if (!mm.exact)
      fail(Errc::budget_exceeded,
           "query budget died at index " + std::to_string(i));
    std::size_t cur = mm.witness.size();
    if (cur < prev)
      fail(Errc::internal, "largest member shrank as points were added");
    prev = cur;

    CesaroRow row;
    row.index = i;
    row.value = Rat(std::int64_t(cur), std::int64_t(i) + 1);
    if (i == 0) {
      row.level = 0;
      row.bound = Rat(1);
    } else {
      std::size_t n = 0;
      while ((std::uint64_t(1) << n) <= i) ++n;
      row.level = n;
      row.bound = Rat(std::int64_t(rep.thresholds.at(n)),
                      std::int64_t(1) << (n - 1));
    }
    if (row.bound < row.value)
      fail(Errc::internal, "average norm exceeded the trapped bound");
    rep.rows.push_back(row);
  }
  return rep;
}

NonSummabilityReport non_summability_witness(const Family& fam,
                                             const PointConfig& points,
                                             std::size_t i_max,
                                             const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "the witness needs a word family");
  if (points.empty()) fail(Errc::invalid_argument, "no points given");
  if (i_max >= points.size())
    fail(Errc::invalid_argument, "i_max runs past the point list");

  std::vector<BitNode> first(points.points.begin(),
                             points.points.begin() + std::ptrdiff_t(i_max) + 1);
  PointConfig ground = PointConfig::make(points.depth, std::move(first));

  std::optional<Ground> found;
  for (std::size_t m = std::min<std::size_t>(8, ground.size());
       m >= 3 && !found; --m)
    found = half_filling_subset(fam, Ground{ground}, m, 8, budget);
  if (!found)
    fail(Errc::search_failed,
         "no half-filling subset of size at least 3 within the first " +
             std::to_string(i_max + 1) + " points");

  NonSummabilityReport rep;
  rep.subset = std::get<PointConfig>(*found);
  for (const BitNode& p : rep.subset.points) {
    auto it = std::lower_bound(points.points.begin(), points.points.end(), p,
                               point_less);
    rep.indices.push_back(std::size_t(it - points.points.begin()));
  }

  const std::size_t b = rep.subset.size();
  bool have_min = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << b); ++mask) {
    std::vector<std::pair<BitNode, Rat>> ent;
    std::size_t fsz = 0;
    for (std::size_t j = 0; j < b; ++j)
      if (mask >> j & 1) {
        ent.emplace_back(rep.subset.points[j], Rat(1));
        ++fsz;
      }
    NormResult nr =
        norm_f(fam, SupportedVector::make(points.depth, std::move(ent)),
               budget);
    rep.queries += nr.queries;
    if (!nr.exact)
      fail(Errc::budget_exceeded, "norm bracket did not close on a subset");
    Rat avg = nr.lower / Rat(std::int64_t(fsz));
    if (!have_min || avg < rep.min_average) {
      rep.min_average = avg;
      have_min = true;
    }
    if (nr.lower + nr.lower < Rat(std::int64_t(fsz)))
      fail(Errc::internal, "half-filling subset broke the norm floor");
    ++rep.tested;
  }
  rep.exhaustive = true;

  for (std::size_t j = 1; j <= b; ++j) {
    std::vector<BitNode> pref(rep.subset.points.begin(),
                              rep.subset.points.begin() + std::ptrdiff_t(j));
    NormResult nr = norm_f(
        fam,
        SupportedVector::indicator(PointConfig::make(points.depth, pref)),
        budget);
    rep.queries += nr.queries;
    if (!nr.exact)
      fail(Errc::budget_exceeded, "norm bracket did not close on a prefix");
    rep.prefix_norms.push_back(nr.lower);
  }
  return rep;
}

}  // namespace fillfam
