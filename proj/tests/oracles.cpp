#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace oracle {

std::set<std::string> prefix_closure(const std::vector<std::string>& words) {
  std::set<std::string> out;
  for (const std::string& w : words)
    for (std::size_t l = 0; l <= w.size(); ++l) out.insert(w.substr(0, l));
  return out;
}

std::vector<std::string> splitting_of(const std::set<std::string>& tree) {
  std::vector<std::string> out;
  for (const std::string& s : tree)
    if (tree.count(s + '0') && tree.count(s + '1')) out.push_back(s);
  return out;
}

bool skew(const std::vector<std::string>& points) {
  auto tree = prefix_closure(points);
  std::map<std::size_t, int> per_level;
  for (const std::string& s : splitting_of(tree))
    if (++per_level[s.size()] > 1) return false;
  return true;
}

std::vector<int> type_values(const std::vector<std::string>& points) {
  if (points.size() < 2 || !skew(points)) return {};
  auto tree = prefix_closure(points);
  auto level_of = [&](std::size_t m) {
    std::set<std::string> lv;
    for (const std::string& p : points) lv.insert(p.substr(0, m));
    return std::vector<std::string>(lv.begin(), lv.end());
  };
  std::vector<int> tau;
  for (std::size_t n = 1; n < points.size(); ++n) {
    std::size_t m = 0;
    while (level_of(m).size() != n + 1) ++m;
    auto prev = level_of(m - 1);
    for (std::size_t i = 0; i < prev.size(); ++i)
      if (tree.count(prev[i] + '0') && tree.count(prev[i] + '1')) {
        tau.push_back(static_cast<int>(i));
        break;
      }
  }
  return tau;
}

bool for_each_combination(
    std::size_t m, std::size_t n,
    const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (n > m) return true;
  std::vector<std::size_t> ix(n);
  for (std::size_t i = 0; i < n; ++i) ix[i] = i;
  for (;;) {
    if (!f(ix)) return false;
    // advance
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (ix[i] != i + m - n) {
        ++ix[i];
        for (std::size_t j = i + 1; j < n; ++j) ix[j] = ix[j - 1] + 1;
        break;
      }
      if (i == 0) return true;
    }
    if (n == 0) return true;
  }
}

}  // namespace oracle
