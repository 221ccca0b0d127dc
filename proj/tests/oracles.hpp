#pragma once

// Independent reference implementations used to fix expected values before
// the library existed and to cross-check it afterwards.  Everything here is
// deliberately naive: raw strings, full enumeration, no pruning, no sharing
// of code with the library's search paths.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fillfam/rational.hpp"

namespace oracle {

std::set<std::string> prefix_closure(const std::vector<std::string>& words);

// Nodes of a prefix-closed set with both children present.
std::vector<std::string> splitting_of(const std::set<std::string>& tree);

// Skew check straight off the strings.
bool skew(const std::vector<std::string>& points);

// Branching signature of a skew configuration (empty result if |F| < 2).
std::vector<int> type_values(const std::vector<std::string>& points);

// Calls f with each strictly increasing index tuple of length n out of
// [0, m); stops early if f returns false.  Returns false iff stopped.
bool for_each_combination(
    std::size_t m, std::size_t n,
    const std::function<bool(const std::vector<std::size_t>&)>& f);

template <class P>
using MemberFn = std::function<bool(const std::vector<P>&)>;

// Largest member inside cfg by full subset sweep; among equals the
// lexicographically least element list.  cfg must be sorted.
template <class P>
std::vector<P> max_member(const MemberFn<P>& member, const std::vector<P>& cfg) {
  std::vector<P> best;  // empty set is always a member
  const std::size_t n = cfg.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<P> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) sub.push_back(cfg[i]);
    if (!member(sub)) continue;
    if (sub.size() > best.size() || (sub.size() == best.size() && sub < best))
      best = sub;
  }
  return best;
}

template <class P>
long density(const MemberFn<P>& member, const std::vector<P>& ground,
             std::size_t n) {
  long dmin = -1;
  for_each_combination(ground.size(), n, [&](const std::vector<std::size_t>& ix) {
    std::vector<P> cfg;
    for (std::size_t i : ix) cfg.push_back(ground[i]);
    long m = static_cast<long>(max_member<P>(member, cfg).size());
    if (dmin < 0 || m < dmin) dmin = m;
    return true;
  });
  return dmin;
}

template <class P>
fillfam::Rat norm(const MemberFn<P>& member, const std::vector<P>& pts,
                  const std::vector<fillfam::Rat>& coeffs) {
  fillfam::Rat best(0);
  const std::size_t n = pts.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<P> sub;
    fillfam::Rat sum(0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        sub.push_back(pts[i]);
        sum = sum + coeffs[i].abs();
      }
    if (member(sub) && best < sum) best = sum;
  }
  return best;
}

}  // namespace oracle
