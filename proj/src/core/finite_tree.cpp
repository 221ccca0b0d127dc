#include "fillfam/finite_tree.hpp"

#include <algorithm>
#include <map>

namespace fillfam {

FiniteTree FiniteTree::from_nodes(std::vector<BitNode> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  FiniteTree t;
  t.nodes_ = std::move(nodes);
  return t;
}

bool FiniteTree::contains(const BitNode& s) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), s);
}

bool FiniteTree::is_downward_closed() const {
  for (const BitNode& s : nodes_)
    if (!s.is_root() && !contains(s.parent())) return false;
  return true;
}

std::vector<BitNode> FiniteTree::level(std::size_t m) const {
  std::vector<BitNode> out;
  for (const BitNode& s : nodes_)
    if (s.length() == m) out.push_back(s);
  return out;  // shortlex-sorted input => lex-sorted level
}

std::size_t FiniteTree::height() const {
  return nodes_.empty() ? 0 : nodes_.back().length();
}

std::size_t FiniteTree::child_count(const BitNode& s) const {
  return (contains(s.child(0)) ? 1u : 0u) + (contains(s.child(1)) ? 1u : 0u);
}

FiniteTree tree_of(const PointConfig& f) {
  if (f.empty())
    fail(Errc::invalid_argument, "prefix tree of an empty config");
  std::vector<BitNode> nodes;
  for (const BitNode& p : f.points)
    for (std::size_t l = 0; l <= p.length(); ++l)
      nodes.push_back(p.prefix(l));
  return FiniteTree::from_nodes(std::move(nodes));
}

FiniteTree downward_closure(const std::vector<BitNode>& in) {
  std::vector<BitNode> nodes;
  for (const BitNode& s : in)
    for (std::size_t l = 0; l <= s.length(); ++l) nodes.push_back(s.prefix(l));
  return FiniteTree::from_nodes(std::move(nodes));
}

static void require_closed(const FiniteTree& t, const char* op) {
  if (!t.is_downward_closed())
    fail(Errc::not_downward_closed,
         std::string(op) + " requires a downward-closed tree");
}

std::vector<BitNode> splitting_nodes(const FiniteTree& t) {
  require_closed(t, "splitting_nodes");
  std::vector<BitNode> out;
  for (const BitNode& s : t.nodes())
    if (t.child_count(s) == 2) out.push_back(s);
  return out;
}

bool is_skew(const FiniteTree& t) {
  require_closed(t, "is_skew");
  std::map<std::size_t, int> per_level;
  for (const BitNode& s : splitting_nodes(t))
    if (++per_level[s.length()] > 1) return false;
  return true;
}

}  // namespace fillfam
