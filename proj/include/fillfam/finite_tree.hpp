#pragma once

#include <cstddef>
#include <vector>

#include "fillfam/bitnode.hpp"
#include "fillfam/point_config.hpp"

namespace fillfam {

// A finite set of dyadic-tree nodes, sorted shortlex.  Trees produced by
// tree_of / downward_closure are downward closed by construction; raw node
// sets can be wrapped and queried.
class FiniteTree {
 public:
  FiniteTree() = default;

  static FiniteTree from_nodes(std::vector<BitNode> nodes);

  const std::vector<BitNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(const BitNode& s) const;
  bool is_downward_closed() const;

  // Nodes of length m, in precedence order.
  std::vector<BitNode> level(std::size_t m) const;
  std::size_t height() const;  // max node length, 0 for empty

  // Immediate successors within the node set (s^0 / s^1 membership); only
  // meaningful on downward-closed trees.
  std::size_t child_count(const BitNode& s) const;

 private:
  std::vector<BitNode> nodes_;  // sorted shortlex, distinct
};

// Prefix tree T_F of a configuration: every prefix of every point.
// Errors on the empty config.
FiniteTree tree_of(const PointConfig& f);

// Downward closure of an arbitrary node set (adds all prefixes).
FiniteTree downward_closure(const std::vector<BitNode>& nodes);

// Nodes with two immediate successors in T.  Requires a downward-closed
// tree; for T = tree_of(F) the count is always |F| - 1.
std::vector<BitNode> splitting_nodes(const FiniteTree& t);

// At most one splitting node per level.  Requires a downward-closed tree.
bool is_skew(const FiniteTree& t);

}  // namespace fillfam
