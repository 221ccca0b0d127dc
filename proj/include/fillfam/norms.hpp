#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fillfam/bitnode.hpp"
#include "fillfam/dyadic.hpp"
#include "fillfam/family.hpp"
#include "fillfam/point_config.hpp"
#include "fillfam/rational.hpp"
#include "fillfam/search.hpp"

namespace fillfam {

// A finitely supported vector over cube points: sorted support of one
// depth, exact rational coefficients, no stored zeros.
struct SupportedVector {
  std::size_t depth = 0;
  std::vector<std::pair<BitNode, Rat>> entries;  // sorted by point

  // drops zero coefficients, sorts, rejects duplicates and wrong lengths
  static SupportedVector make(std::size_t depth,
                              std::vector<std::pair<BitNode, Rat>> entries);
  static SupportedVector indicator(const PointConfig& g);
  std::size_t support_size() const { return entries.size(); }
  bool zero() const { return entries.empty(); }
};

struct NormResult {
  Rat lower;                     // attained by `witness`
  Rat upper;                     // == lower when exact
  bool exact = true;
  std::vector<BitNode> witness;  // member subset of the support worth `lower`
  std::uint64_t queries = 0;
};

// The supremum over family members G inside the support of the coefficient
// mass sum_{x in G} |a_x|.  Branch and bound over points in descending
// coefficient mass: heredity prunes non-member prefixes and the remaining
// mass bounds every extension.  Every support singleton must belong to the
// family (precondition) unless the vector is zero.  When the query budget
// dies the result is an honest bracket [lower, upper] with exact false.
NormResult norm_f(const Family& fam, const SupportedVector& v,
                  const SearchBudget& budget = {});

// Length-m prefix of the binary digits of i, least significant bit first,
// zero padded.  Errors when i does not fit m bits.
BitNode dyadic_enum(std::uint64_t i, std::size_t m);

// The host point reached by following the labels along dyadic_enum(i): the
// deepest label t_{z_i | depth-1}, padded with zeros to the host depth.
// Indices below 2^(depth-1) give pairwise distinct points whose prefixes
// at the level-n label length are already distinct for i < 2^n.
BitNode branch_point(const RegularDyadicTree& t, std::uint64_t i);

struct CesaroRow {
  std::uint64_t index = 0;  // i
  Rat value;                // norm of the average of e_{x_0} .. e_{x_i}
  std::size_t level = 0;    // n with 2^{n-1} <= i < 2^n (0 for i = 0)
  Rat bound;                // M_level / 2^(level-1); trivially 1 at i = 0
};

struct CesaroReport {
  std::vector<CesaroRow> rows;                    // i = 0 .. i_max
  std::map<std::size_t, std::size_t> thresholds;  // n -> M_n
  std::uint64_t queries = 0;
};

// Averages along the branch points: value(i) is the size of the largest
// member among {x_0..x_i} over i+1, which equals the norm of the running
// average of basis vectors.  Each touched level must be decided by the
// tree: levels whose label length reaches the family's determination depth
// are decided by construction, levels up to 4 are verified by full
// antichain classification (with the trapped maximum cross-checked), and
// deeper unverifiable levels are refused.  M_n is the size of the largest
// trapped level-n antichain; every value(i) is checked against the bound
// M_n / 2^(n-1).  The budget is shared across all internal searches.
CesaroReport cesaro_experiment(const Family& fam, const RegularDyadicTree& t,
                               std::uint64_t i_max,
                               const SearchBudget& budget = {});

struct NonSummabilityReport {
  std::vector<std::size_t> indices;  // positions of the kept points
  PointConfig subset;                // the half-filling subset B
  std::size_t tested = 0;            // nonempty subsets of B verified
  bool exhaustive = true;
  Rat min_average;                   // min over tested F of norm(F) / |F|
  std::vector<Rat> prefix_norms;     // norms of the first j kept points
  std::uint64_t queries = 0;
};

// Finds a subset B of the first i_max+1 points over which the family is
// half filling (largest size tried first, capped at 8), then verifies on
// every nonempty F inside B that the indicator norm is at least |F|/2 --
// so averages along any subsequence of B stay at or above one half.
// Errors with search_failed when no such B of size >= 3 exists.
NonSummabilityReport non_summability_witness(const Family& fam,
                                             const PointConfig& points,
                                             std::size_t i_max,
                                             const SearchBudget& budget = {});

}  // namespace fillfam
