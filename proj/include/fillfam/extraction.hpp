#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fillfam/family.hpp"
#include "fillfam/point_config.hpp"
#include "fillfam/search.hpp"
#include "fillfam/type_signature.hpp"

namespace fillfam {

// Certifies that a 2^n-point configuration is increasing: its splitting
// nodes, indexed by the words s of length < n, form a tree where prefix and
// precedence order of the labels mirror the index words, labels on one
// level grow strictly left to right, and deeper levels only hold strictly
// longer labels.
struct IncreasingWitness {
  std::size_t n = 0;
  std::map<std::string, BitNode> labels;  // index word s -> splitting node
  PointConfig source;
};

// Checks the definition and labels the splitting nodes, or returns nullopt
// when the configuration is not 2^n-increasing.  The size must be a power
// of two; singletons pass trivially.
std::optional<IncreasingWitness> is_increasing_config(const PointConfig& f);

// The minimal deterministic 2^n-increasing configuration at the given
// depth: splitting lengths 0, 1, ..., 2^n - 2 in level-major order, every
// pad bit zero.  Needs depth >= 2^n.
PointConfig canonical_increasing(std::size_t n, std::size_t depth);

// The level-picking trail behind extract_increasing, for audit: levels[m]
// is the level of the source tree that the m-th antichain was read from,
// sets[m] the antichain itself (precedence sorted), and subtree the final
// k-level labeling.  The antichains satisfy: every node of sets[m] has
// descendants in sets[m-1] through both children; within one antichain,
// precedence-later nodes are strictly longer; all of sets[m] is strictly
// longer than all of sets[m+1].
struct ExtractionChain {
  std::vector<std::size_t> levels;
  std::vector<std::vector<BitNode>> sets;
  std::map<std::string, BitNode> subtree;
};

// Given a 2^n-increasing F (n >= 2) and G <= F with |G| >= n^k points,
// 2^n >= n^k, k >= 1: returns a 2^k-increasing H <= G of size 2^k.  Walks
// levels of F's splitting tree by repeated pigeonhole, always taking the
// smallest qualifying level and the leftmost qualifying nodes.
PointConfig extract_increasing(const PointConfig& f, const PointConfig& g,
                               std::size_t k,
                               ExtractionChain* chain = nullptr);

// Given a 2^k-increasing H and a (k+1)-point type signature, returns the
// subset I <= H of exactly that type: recursively solve on the even-indexed
// half, then adjoin the odd successor picked by the last signature value.
PointConfig extract_type(const PointConfig& h, const TypeSignature& tau);

// Member of the family with a prescribed type: build the canonical
// 2^n-increasing configuration inside the ground, take the largest member
// of the family inside it (which must reach n^{k-1} points), extract a
// 2^{k-1}-increasing subset and from it the typed k-subset.  Requires
// k, n >= 2 and tau on k points.
PointConfig find_typed_member(const Family& fam, const PointConfig& ground,
                              std::size_t k, const TypeSignature& tau,
                              std::size_t n, const SearchBudget& budget = {});

}  // namespace fillfam
