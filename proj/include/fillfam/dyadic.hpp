#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fillfam/bitnode.hpp"
#include "fillfam/family.hpp"
#include "fillfam/point_config.hpp"
#include "fillfam/rational.hpp"
#include "fillfam/search.hpp"

namespace fillfam {

// An embedded copy of the binary tree: index words s of length < depth map
// to host nodes t_s of length < host_depth such that prefix and precedence
// order carry over exactly and labels sit on one host length per level.
struct RegularDyadicTree {
  std::size_t depth = 0;
  std::size_t host_depth = 0;
  std::map<std::string, BitNode> labels;

  static RegularDyadicTree identity(std::size_t depth, std::size_t host_depth);
  const BitNode& label(const std::string& s) const;
  std::size_t level_length(std::size_t level) const;
};

// True iff the label map is complete over 2^{<depth}, fits the host depth,
// and satisfies both regularity conditions (order isomorphism, one label
// length per level).
bool validate_regular(const RegularDyadicTree& t);

// A finite union of cylinders: all host-depth points extending some root.
struct CylinderSet {
  std::size_t host_depth = 0;
  std::vector<BitNode> roots;  // pairwise incomparable, precedence sorted

  static CylinderSet make(std::size_t host_depth, std::vector<BitNode> roots);
  std::uint64_t count() const;
  PointConfig materialize(std::uint64_t max_points = 1u << 20) const;
};

// The cylinder below the label t_s, materialized over the host depth.
CylinderSet cylinder(const RegularDyadicTree& t, const std::string& s);

// Classification of a product of same-level cylinders against a family:
// every transversal belongs, none does, or both kinds occur.
enum class Verdict { trapped, disjoint, mixed };

const char* verdict_name(Verdict v);

struct TrappedReport {
  std::size_t level = 0;
  // key: the antichain as sorted level-n index words
  std::map<std::vector<std::string>, Verdict> verdicts;
  // antichains the query budget could not settle, in processing order
  std::vector<std::vector<std::string>> undecided;
  std::size_t max_trapped_size = 0;
  bool complete = true;
  std::uint64_t queries = 0;
};

// Classifies every nonempty antichain of level-n index words.  When the
// family is determined at a depth no larger than the level's label length,
// one representative per cylinder settles a verdict; otherwise transversals
// are enumerated against the query budget and unsettled antichains are
// listed as undecided with the report marked incomplete.  Levels are capped
// at 4 (65535 antichains).
TrappedReport decides_at(const RegularDyadicTree& t, const Family& fam,
                         std::size_t n, const SearchBudget& budget = {});

// Builds a tree with no mixed verdict on any level <= target_levels: labels
// are grown level by level with the smallest workable uniform length,
// zero-padded below the parent's child, re-trying one length deeper while
// some antichain stays mixed.  When the family is determined at a depth
// that fits the level, lengths start there (shallower labels cannot beat
// enumeration).  Fails naming the blocking antichain.
RegularDyadicTree build_deciding_tree(const Family& fam,
                                      std::size_t target_levels,
                                      std::size_t host_depth,
                                      const SearchBudget& budget = {});

// A trapped antichain F of level-n index words with |F| >= eps * 2^n: take
// the leftmost point of each level-n cylinder, keep a largest family member
// among them, and map the kept points back to their indices.  Errors when
// the family is too sparse on the transversal or the result is not trapped.
std::vector<BitNode> trapped_lower_bound(const RegularDyadicTree& t,
                                         const Family& fam, const Rat& eps,
                                         std::size_t n,
                                         const SearchBudget& budget = {});

// Given antichains upper <= 2^n and lower <= 2^k with k <= n and every
// lower word prefixing some upper word: checks that a trapped upper forces
// a trapped lower, and returns whether lower is trapped.
bool domination_transfer(const RegularDyadicTree& t, const Family& fam,
                         const std::vector<BitNode>& upper,
                         const std::vector<BitNode>& lower,
                         const SearchBudget& budget = {});

// Mass of a cylinder set under the uniform tree measure: each root that
// labels tree level n weighs 2^-n.  Roots must be labels.
Rat measure(const RegularDyadicTree& t, const CylinderSet& c);

// Stable core of the trapped antichains: project each trapped F_n
// (resolution <= n <= max_level) to its length-`resolution` prefixes, take
// the most frequently attained projection (first-seen on ties; it must
// recur), and return its cylinders.  The result keeps measure >= eps and
// every one-per-cylinder configuration inside it belongs to the family.
CylinderSet limit_closed_set(const RegularDyadicTree& t, const Family& fam,
                             const Rat& eps, std::size_t max_level,
                             std::size_t resolution,
                             const SearchBudget& budget = {});

// A tree whose level-k cylinders certify g(k): every subset of at most g(k)
// points of any level-k cylinder belongs to the family.  Roots at the
// family's determination depth need one probe per subset size (equal-size
// subsets share a truncation multiset); other roots are checked subset by
// subset.  Labels grow like build_deciding_tree, pushing one length deeper
// while a cylinder fails.  g needs an entry for each level 0..levels.
RegularDyadicTree graded_filling_tree(const Family& fam,
                                      const std::vector<std::size_t>& g,
                                      std::size_t levels,
                                      std::size_t host_depth,
                                      const SearchBudget& budget = {});

}  // namespace fillfam
