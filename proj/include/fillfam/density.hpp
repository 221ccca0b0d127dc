#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fillfam/family.hpp"
#include "fillfam/rational.hpp"
#include "fillfam/search.hpp"

namespace fillfam {

// Either ground kind; the active alternative must match the family's kind.
using Ground = std::variant<PointConfig, NatSet>;

std::size_t ground_size(const Ground& g);

enum class DensityMode { exact, upper_bound };

const char* density_mode_name(DensityMode m);

struct DensityOptions {
  bool sampled = false;          // sampled mode yields an upper bound
  std::size_t samples = 200;     // configs drawn in sampled mode
  std::uint64_t seed = 1;
  std::uint64_t max_configs = 20'000'000;  // exact-mode enumeration cap
  SearchBudget budget;           // per-config search budget
};

struct DensityValue {
  std::size_t n = 0;
  std::int64_t value = 0;
  DensityMode mode = DensityMode::exact;
  // A configuration attaining the reported minimum, with its largest member.
  Ground minimizer;
  Ground minimizer_member;
};

// min over n-subsets of the ground of the largest member size.  Exact mode
// enumerates all subsets (through truncation classes when the family is
// determined at a small depth) and errors with budget_exceeded when the
// enumeration would not fit; sampled mode draws seeded subsets and reports
// an upper bound.
DensityValue density(const Family& fam, const Ground& ground, std::size_t n,
                     const DensityOptions& opt = {});

struct FillingPoint {
  std::size_t n;
  std::int64_t value;
  DensityMode mode;
  Rat ratio;  // value / n
  bool ok;
};

struct FillingReport {
  Rat eps;
  std::vector<FillingPoint> points;
  bool filling = true;           // all per-n verdicts hold
  bool heredity_sampled = true;  // random members stayed closed under subsets
};

// Per-n check of density(n)/n >= eps for 1 <= n <= N, plus a seeded
// heredity spot-check of the family.
FillingReport eps_filling_check(const Family& fam, const Ground& ground,
                                const Rat& eps, std::size_t n_max,
                                const DensityOptions& opt = {});

struct TargetPoint {
  std::size_t n;
  std::int64_t target;   // required member size
  bool exhaustive;       // all n-subsets checked, or only samples
  bool ok;
  // Set when ok is false: a subset with no member of the target size.
  std::optional<Ground> counterexample;
};

struct TargetReport {
  std::vector<TargetPoint> points;
  bool ok = true;
};

// For each n <= N verifies every (or, beyond the enumeration cap, a sampled
// set of) n-subsets of the ground contains a member of size >= target(n).
TargetReport target_filling_check(const Family& fam, const Ground& ground,
                                  const std::vector<std::int64_t>& targets,
                                  const DensityOptions& opt = {});

struct StarProbePoint {
  std::size_t n;            // probe index, config size is 2^n
  std::int64_t density;     // d(2^n), exact or upper bound per mode
  DensityMode mode;
  double value;             // log2(density) / log2(n)
};

// The growth probe log2 d(2^n) / log2 n for 2 <= n <= n_max.  Sizes whose
// exact enumeration does not fit fall back to sampling when allowed.
std::vector<StarProbePoint> density_star_probe(const Family& fam,
                                               const Ground& ground,
                                               std::size_t n_max,
                                               const DensityOptions& opt = {});

// First size-m subset B of the ground, in lexicographic order, such that
// every sub-configuration of B of any size n has a member of size at least
// ceil(n/2); nullopt when none exists.  m is capped by `max_m`.
std::optional<Ground> half_filling_subset(const Family& fam,
                                          const Ground& ground, std::size_t m,
                                          std::size_t max_m = 8,
                                          const SearchBudget& budget = {});

}  // namespace fillfam
