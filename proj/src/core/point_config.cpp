#include "fillfam/point_config.hpp"

#include <algorithm>

namespace fillfam {

PointConfig PointConfig::make(std::size_t depth, std::vector<BitNode> pts) {
  for (const BitNode& p : pts)
    if (p.length() != depth)
      fail(Errc::invalid_argument,
           "point '" + p.str() + "' does not have depth " +
               std::to_string(depth));
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1])
      fail(Errc::invalid_argument, "duplicate point '" + pts[i].str() + "'");
  PointConfig c;
  c.depth = depth;
  c.points = std::move(pts);
  return c;
}

PointConfig PointConfig::full_cube(std::size_t depth) {
  if (depth > 24)
    fail(Errc::invalid_argument, "full cube of depth > 24 refused");
  std::vector<BitNode> pts;
  pts.reserve(std::size_t(1) << depth);
  std::string word(depth, '0');
  for (std::size_t v = 0; v < (std::size_t(1) << depth); ++v) {
    for (std::size_t i = 0; i < depth; ++i)
      word[i] = (v >> (depth - 1 - i)) & 1 ? '1' : '0';
    pts.emplace_back(word);
  }
  PointConfig c;
  c.depth = depth;
  c.points = std::move(pts);
  return c;
}

bool PointConfig::contains(const BitNode& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

bool PointConfig::contains_all(const PointConfig& sub) const {
  for (const BitNode& p : sub.points)
    if (!contains(p)) return false;
  return true;
}

std::size_t PointConfig::common_prefix_length() const {
  if (points.empty())
    fail(Errc::invalid_argument, "common prefix of an empty config");
  // Sorted order makes first/last the extreme branches.
  return meet_length(points.front(), points.back());
}

PointConfig PointConfig::subset_by_indices(
    const std::vector<std::size_t>& idx) const {
  PointConfig c;
  c.depth = depth;
  for (std::size_t i : idx) c.points.push_back(points.at(i));
  return c;
}

}  // namespace fillfam
