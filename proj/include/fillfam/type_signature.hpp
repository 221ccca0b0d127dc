#pragma once

#include <cstddef>
#include <vector>

#include "fillfam/finite_tree.hpp"
#include "fillfam/point_config.hpp"

namespace fillfam {

// Branching pattern of a skew k-point configuration.  values[n-1] records,
// for the step at which the prefix tree first has n+1 nodes on a level,
// which of the n precedence-ordered nodes of the previous level carries the
// split (0-based).  So values has length k-1, values[0] == 0 and
// 0 <= values[n-1] <= n-1.
struct TypeSignature {
  std::size_t k = 0;
  std::vector<int> values;

  void validate() const;

  friend bool operator==(const TypeSignature& a, const TypeSignature& b) {
    return a.k == b.k && a.values == b.values;
  }
  friend bool operator<(const TypeSignature& a, const TypeSignature& b) {
    if (a.k != b.k) return a.k < b.k;
    return a.values < b.values;
  }
};

// Reads the signature off a configuration.  Requires |F| >= 2 and a skew
// prefix tree.
TypeSignature type_of(const PointConfig& f);

// All signatures on k points, lexicographically ordered by value vector.
// There are (k-1)! of them.  Requires k >= 2.
std::vector<TypeSignature> enumerate_types(std::size_t k);

// Canonical configuration with the given signature: grow one branch list,
// splitting the prescribed branch at each step, then pad every branch with
// zeros.  Deterministic; requires depth >= k - 1.
PointConfig realize_type(const TypeSignature& tau, std::size_t depth);

}  // namespace fillfam
