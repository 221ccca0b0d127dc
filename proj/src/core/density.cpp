#include "fillfam/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fillfam/errors.hpp"
#include "fillfam/rng.hpp"

namespace fillfam {

std::size_t ground_size(const Ground& g) {
  return std::visit([](const auto& x) { return x.size(); }, g);
}

const char* density_mode_name(DensityMode m) {
  return m == DensityMode::exact ? "exact" : "upper-bound";
}

namespace {

void check_kind(const Family& fam, const Ground& g) {
  bool bits = std::holds_alternative<PointConfig>(g);
  if (bits != (fam.kind() == GroundKind::bits))
    fail(Errc::invalid_argument, "ground kind does not match family '" +
                                     fam.name() + "' (" +
                                     ground_kind_name(fam.kind()) + ")");
}

std::uint64_t comb_clamped(std::size_t m, std::size_t n, std::uint64_t clamp) {
  if (n > m) return 0;
  n = std::min(n, m - n);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    r = r * (m - n + i) / i;
    if (r > clamp) return clamp + 1;
  }
  return static_cast<std::uint64_t>(r);
}

// n-combinations of [0, m) in lexicographic order; f returns false to stop.
template <class F>
void for_each_comb(std::size_t m, std::size_t n, F f) {
  std::vector<std::size_t> ix(n);
  for (std::size_t i = 0; i < n; ++i) ix[i] = i;
  while (true) {
    if (!f(ix)) return;
    if (n == 0) return;
    std::size_t i = n;
    while (i-- > 0) {
      if (ix[i] != i + m - n) {
        ++ix[i];
        for (std::size_t j = i + 1; j < n; ++j) ix[j] = ix[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

// Count vectors over per-class capacities summing to n, highest counts on
// the earliest classes first, so the materialized configurations come up
// in ascending point order.
template <class F>
bool for_each_count_vector(const std::vector<std::size_t>& avail,
                           std::size_t n, F f) {
  std::vector<std::size_t> suffix(avail.size() + 1, 0);
  for (std::size_t j = avail.size(); j-- > 0;)
    suffix[j] = suffix[j + 1] + avail[j];
  if (suffix[0] < n) return true;
  std::vector<std::size_t> counts(avail.size(), 0);

  auto rec = [&](auto&& self, std::size_t j, std::size_t rem) -> bool {
    if (j == avail.size()) return rem > 0 || f(counts);
    std::size_t hi = std::min(avail[j], rem);
    std::size_t lo = rem > suffix[j + 1] ? rem - suffix[j + 1] : 0;
    for (std::size_t c = hi + 1; c-- > lo;) {
      counts[j] = c;
      if (!self(self, j + 1, rem - c)) return false;
      counts[j] = 0;
      if (c == lo) break;
    }
    return true;
  };
  return rec(rec, 0, n);
}

template <class Cfg, class Res>
bool scan_config(const Family& fam, const Cfg& sub, std::size_t& dmin,
                 std::optional<Cfg>& minimizer, const SearchBudget& budget) {
  bool reached = false;
  Res res = max_member_or_reach(fam, sub, dmin, budget, &reached);
  if (reached) return true;
  if (!res.exact)
    fail(Errc::budget_exceeded,
         "per-configuration member search ran out of budget");
  std::size_t m = res.witness.size();
  if (m < dmin) {
    dmin = m;
    minimizer = sub;
  }
  return true;
}

PointConfig materialize_counts(const std::vector<std::vector<BitNode>>& cls,
                               const std::vector<std::size_t>& counts,
                               std::size_t depth) {
  std::vector<BitNode> pts;
  for (std::size_t j = 0; j < cls.size(); ++j)
    pts.insert(pts.end(), cls[j].begin(), cls[j].begin() + counts[j]);
  return PointConfig::make(depth, std::move(pts));
}

std::vector<std::vector<BitNode>> ground_classes(const PointConfig& ground,
                                                 std::size_t dd) {
  std::map<std::string, std::vector<BitNode>> by_class;
  for (const BitNode& p : ground.points)
    by_class[p.str().substr(0, dd)].push_back(p);
  std::vector<std::vector<BitNode>> cls;
  for (auto& [key, members] : by_class) cls.push_back(std::move(members));
  return cls;
}

template <class Cfg, class Res>
DensityValue density_scan(const Family& fam, const Cfg& ground, std::size_t n,
                          const DensityOptions& opt) {
  std::size_t dmin = n + 1;
  std::optional<Cfg> minimizer;

  if (opt.sampled) {
    Rng rng(opt.seed);
    for (std::size_t r = 0; r < opt.samples; ++r) {
      Cfg sub =
          ground.subset_by_indices(rng.sample_indices(ground.size(), n));
      scan_config<Cfg, Res>(fam, sub, dmin, minimizer, opt.budget);
    }
  } else {
    bool classed_done = false;
    if constexpr (std::is_same_v<Cfg, PointConfig>) {
      std::optional<std::size_t> dd = fam.determination_depth();
      if (dd && *dd < ground.depth) {
        std::vector<std::vector<BitNode>> cls = ground_classes(ground, *dd);
        std::vector<std::size_t> avail;
        for (const auto& c : cls) avail.push_back(c.size());
        std::uint64_t seen = 0;
        bool within = for_each_count_vector(
            avail, n, [&](const std::vector<std::size_t>& counts) {
              if (++seen > opt.max_configs) return false;
              PointConfig sub = materialize_counts(cls, counts, ground.depth);
              return scan_config<Cfg, Res>(fam, sub, dmin, minimizer,
                                           opt.budget);
            });
        if (!within)
          fail(Errc::budget_exceeded,
               "class enumeration exceeds the configuration cap " +
                   std::to_string(opt.max_configs));
        classed_done = true;
      }
    }
    if (!classed_done) {
      std::uint64_t total = comb_clamped(ground.size(), n, opt.max_configs);
      if (total > opt.max_configs)
        fail(Errc::budget_exceeded,
             "exact density over C(" + std::to_string(ground.size()) + ", " +
                 std::to_string(n) + ") configurations exceeds the cap " +
                 std::to_string(opt.max_configs) + "; use sampled mode");
      for_each_comb(ground.size(), n, [&](const std::vector<std::size_t>& ix) {
        Cfg sub = ground.subset_by_indices(ix);
        return scan_config<Cfg, Res>(fam, sub, dmin, minimizer, opt.budget);
      });
    }
  }

  if (!minimizer) {
    // every configuration held a member of full size
    dmin = n;
    if (opt.sampled) {
      Rng rng(opt.seed);
      minimizer =
          ground.subset_by_indices(rng.sample_indices(ground.size(), n));
    } else {
      std::vector<std::size_t> ix(n);
      for (std::size_t i = 0; i < n; ++i) ix[i] = i;
      minimizer = ground.subset_by_indices(ix);
    }
  }

  DensityValue out;
  out.n = n;
  out.value = static_cast<std::int64_t>(dmin);
  out.mode = opt.sampled ? DensityMode::upper_bound : DensityMode::exact;
  out.minimizer = *minimizer;
  auto res = max_member_within(fam, *minimizer, opt.budget);
  if (!res.exact)
    fail(Errc::budget_exceeded, "witness recomputation ran out of budget");
  out.minimizer_member = res.witness;
  return out;
}

}  // namespace

DensityValue density(const Family& fam, const Ground& ground, std::size_t n,
                     const DensityOptions& opt) {
  check_kind(fam, ground);
  if (n == 0) fail(Errc::invalid_argument, "density needs n >= 1");
  if (n > ground_size(ground))
    fail(Errc::invalid_argument,
         "configuration size " + std::to_string(n) + " exceeds the ground (" +
             std::to_string(ground_size(ground)) + " points)");
  if (const auto* pc = std::get_if<PointConfig>(&ground))
    return density_scan<PointConfig, MaxMemberResult>(fam, *pc, n, opt);
  return density_scan<NatSet, MaxMemberNatResult>(fam, std::get<NatSet>(ground),
                                                  n, opt);
}

namespace {

template <class Cfg>
bool heredity_spot_check(const Family& fam, const Cfg& ground,
                         std::uint64_t seed, const SearchBudget& budget) {
  Rng rng(seed ^ 0x9e1a2f3dULL);
  std::size_t trials = 40;
  std::size_t csize = std::min<std::size_t>(6, ground.size());
  if (csize == 0) return true;
  for (std::size_t t = 0; t < trials; ++t) {
    Cfg sub = ground.subset_by_indices(rng.sample_indices(ground.size(), csize));
    auto res = max_member_within(fam, sub, budget);
    const Cfg& w = res.witness;
    std::size_t m = w.size();
    if (m == 0) continue;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) idx.push_back(i);
      if (!fam.member(w.subset_by_indices(idx))) return false;
    }
  }
  return true;
}

}  // namespace

FillingReport eps_filling_check(const Family& fam, const Ground& ground,
                                const Rat& eps, std::size_t n_max,
                                const DensityOptions& opt) {
  check_kind(fam, ground);
  if (eps.num < 0) fail(Errc::invalid_argument, "negative filling ratio");
  FillingReport rep;
  rep.eps = eps;
  rep.heredity_sampled = std::visit(
      [&](const auto& g) {
        return heredity_spot_check(fam, g, opt.seed, opt.budget);
      },
      ground);
  for (std::size_t n = 1; n <= n_max; ++n) {
    DensityValue dv = density(fam, ground, n, opt);
    FillingPoint pt;
    pt.n = n;
    pt.value = dv.value;
    pt.mode = dv.mode;
    pt.ratio = Rat(dv.value, static_cast<std::int64_t>(n));
    pt.ok = !(pt.ratio < eps);
    rep.points.push_back(pt);
    if (!pt.ok) rep.filling = false;
  }
  rep.filling = rep.filling && rep.heredity_sampled;
  return rep;
}

namespace {

template <class Cfg>
TargetReport target_check_impl(const Family& fam, const Cfg& ground,
                               const std::vector<std::int64_t>& targets,
                               const DensityOptions& opt) {
  TargetReport rep;
  for (std::size_t n = 1; n <= targets.size(); ++n) {
    TargetPoint pt;
    pt.n = n;
    pt.target = targets[n - 1];
    pt.ok = true;
    if (n > ground.size()) break;
    std::size_t t =
        pt.target <= 0 ? 0 : static_cast<std::size_t>(pt.target);
    std::uint64_t total = comb_clamped(ground.size(), n, opt.max_configs);
    pt.exhaustive = total <= opt.max_configs;
    auto consider = [&](const Cfg& sub) {
      if (!has_member_at_least(fam, sub, t, opt.budget)) {
        pt.ok = false;
        pt.counterexample = Ground(sub);
        return false;
      }
      return true;
    };
    if (pt.exhaustive) {
      for_each_comb(ground.size(), n, [&](const std::vector<std::size_t>& ix) {
        return consider(ground.subset_by_indices(ix));
      });
    } else {
      Rng rng(opt.seed + n);
      for (std::size_t r = 0; r < opt.samples; ++r)
        if (!consider(
                ground.subset_by_indices(rng.sample_indices(ground.size(), n))))
          break;
    }
    if (!pt.ok) rep.ok = false;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace

TargetReport target_filling_check(const Family& fam, const Ground& ground,
                                  const std::vector<std::int64_t>& targets,
                                  const DensityOptions& opt) {
  check_kind(fam, ground);
  if (const auto* pc = std::get_if<PointConfig>(&ground))
    return target_check_impl(fam, *pc, targets, opt);
  return target_check_impl(fam, std::get<NatSet>(ground), targets, opt);
}

std::vector<StarProbePoint> density_star_probe(const Family& fam,
                                               const Ground& ground,
                                               std::size_t n_max,
                                               const DensityOptions& opt) {
  check_kind(fam, ground);
  if (n_max < 2)
    fail(Errc::invalid_argument, "the probe starts at n = 2");
  std::vector<StarProbePoint> out;
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (n >= 63) break;
    std::size_t size = std::size_t(1) << n;
    if (size > ground_size(ground)) break;
    DensityValue dv;
    if (opt.sampled) {
      dv = density(fam, ground, size, opt);
    } else {
      try {
        dv = density(fam, ground, size, opt);
      } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        DensityOptions fallback = opt;
        fallback.sampled = true;
        dv = density(fam, ground, size, fallback);
      }
    }
    StarProbePoint pt;
    pt.n = n;
    pt.density = dv.value;
    pt.mode = dv.mode;
    pt.value = dv.value > 0 ? std::log2(static_cast<double>(dv.value)) /
                                  std::log2(static_cast<double>(n))
                            : -std::numeric_limits<double>::infinity();
    out.push_back(pt);
  }
  return out;
}

namespace {

template <class Cfg>
std::optional<Ground> half_filling_impl(const Family& fam, const Cfg& ground,
                                        std::size_t m,
                                        const SearchBudget& budget) {
  constexpr std::uint64_t kCandidateCap = 10'000'000;
  std::uint64_t total = comb_clamped(ground.size(), m, kCandidateCap);
  if (total > kCandidateCap)
    fail(Errc::budget_exceeded,
         "candidate enumeration C(" + std::to_string(ground.size()) + ", " +
             std::to_string(m) + ") exceeds the cap");
  std::optional<Ground> found;
  for_each_comb(ground.size(), m, [&](const std::vector<std::size_t>& ix) {
    Cfg b = ground.subset_by_indices(ix);
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) idx.push_back(i);
      std::size_t n = idx.size();
      std::size_t need = (n + 1) / 2;
      if (!has_member_at_least(fam, b.subset_by_indices(idx), need, budget))
        return true;  // next candidate
    }
    found = Ground(b);
    return false;
  });
  return found;
}

}  // namespace

std::optional<Ground> half_filling_subset(const Family& fam,
                                          const Ground& ground, std::size_t m,
                                          std::size_t max_m,
                                          const SearchBudget& budget) {
  check_kind(fam, ground);
  if (m == 0) fail(Errc::invalid_argument, "subset size must be positive");
  if (m > max_m)
    fail(Errc::precondition,
         "subset size " + std::to_string(m) +
             " beyond the brute-force bound " + std::to_string(max_m));
  if (m > ground_size(ground))
    fail(Errc::invalid_argument, "subset size exceeds the ground");
  if (const auto* pc = std::get_if<PointConfig>(&ground))
    return half_filling_impl(fam, *pc, m, budget);
  return half_filling_impl(fam, std::get<NatSet>(ground), m, budget);
}

}  // namespace fillfam
