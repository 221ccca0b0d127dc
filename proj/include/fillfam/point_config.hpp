#pragma once

#include <cstddef>
#include <vector>

#include "fillfam/bitnode.hpp"

namespace fillfam {

// A finite point configuration: distinct words of one common depth, kept
// sorted in precedence (= lexicographic) order.
struct PointConfig {
  std::size_t depth = 0;
  std::vector<BitNode> points;  // strictly increasing

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  // Sorts, rejects duplicates and wrong-length points.
  static PointConfig make(std::size_t depth, std::vector<BitNode> pts);

  // All 2^depth points, in order.
  static PointConfig full_cube(std::size_t depth);

  bool contains(const BitNode& p) const;
  bool contains_all(const PointConfig& sub) const;

  // Length of the longest word every point extends; `depth` for singletons,
  // error on the empty config.
  std::size_t common_prefix_length() const;

  PointConfig subset_by_indices(const std::vector<std::size_t>& idx) const;

  friend bool operator==(const PointConfig& a, const PointConfig& b) {
    return a.depth == b.depth && a.points == b.points;
  }
};

}  // namespace fillfam
