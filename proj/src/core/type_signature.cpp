#include "fillfam/type_signature.hpp"

#include <algorithm>

namespace fillfam {

void TypeSignature::validate() const {
  if (k < 2) fail(Errc::invalid_argument, "type signature needs k >= 2");
  if (values.size() != k - 1)
    fail(Errc::invalid_argument,
         "type signature for k = " + std::to_string(k) + " needs " +
             std::to_string(k - 1) + " values, got " +
             std::to_string(values.size()));
  for (std::size_t n = 1; n < k; ++n) {
    int v = values[n - 1];
    if (v < 0 || v > static_cast<int>(n) - 1)
      fail(Errc::invalid_argument,
           "type value at position " + std::to_string(n) + " out of range");
  }
}

TypeSignature type_of(const PointConfig& f) {
  if (f.size() < 2)
    fail(Errc::invalid_argument, "type defined only for configs of size >= 2");
  FiniteTree t = tree_of(f);
  if (!is_skew(t))
    fail(Errc::not_skew, "config has two splits on one level; no type");
  std::vector<BitNode> spl = splitting_nodes(t);

  TypeSignature tau;
  tau.k = f.size();
  std::size_t m = 0;  // least level whose size is about to be checked
  for (std::size_t n = 1; n < f.size(); ++n) {
    while (t.level(m).size() != n + 1) {
      ++m;
      if (m > t.height())
        fail(Errc::internal, "level growth exhausted before reaching size " +
                                 std::to_string(n + 1));
    }
    std::vector<BitNode> prev = t.level(m - 1);
    int index = -1;
    for (std::size_t i = 0; i < prev.size(); ++i)
      if (std::find(spl.begin(), spl.end(), prev[i]) != spl.end() &&
          t.child_count(prev[i]) == 2) {
        if (index >= 0) fail(Errc::internal, "two splits on one skew level");
        index = static_cast<int>(i);
      }
    if (index < 0) fail(Errc::internal, "no splitting node under a growth level");
    tau.values.push_back(index);
  }
  tau.validate();
  return tau;
}

std::vector<TypeSignature> enumerate_types(std::size_t k) {
  if (k < 2) fail(Errc::invalid_argument, "type enumeration needs k >= 2");
  std::vector<TypeSignature> out;
  std::vector<int> v(k - 1, 0);
  for (;;) {
    TypeSignature tau;
    tau.k = k;
    tau.values = v;
    out.push_back(std::move(tau));
    // Odometer with the last position fastest keeps the list lexicographic;
    // position i counts up to i.
    int pos = static_cast<int>(v.size()) - 1;
    while (pos >= 0 && v[pos] == pos) v[pos--] = 0;
    if (pos < 0) break;
    ++v[pos];
  }
  return out;
}

PointConfig realize_type(const TypeSignature& tau, std::size_t depth) {
  tau.validate();
  if (depth + 1 < tau.k)
    fail(Errc::precondition,
         "depth " + std::to_string(depth) + " too small to realize a type on " +
             std::to_string(tau.k) + " points (need >= k - 1)");
  std::vector<std::string> branches{""};
  for (std::size_t n = 1; n < tau.k; ++n) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (i == static_cast<std::size_t>(tau.values[n - 1])) {
        next.push_back(branches[i] + '0');
        next.push_back(branches[i] + '1');
      } else {
        next.push_back(branches[i] + '0');
      }
    }
    branches = std::move(next);
  }
  std::vector<BitNode> pts;
  for (std::string& b : branches) {
    b.resize(depth, '0');
    pts.emplace_back(b);
  }
  return PointConfig::make(depth, std::move(pts));
}

}  // namespace fillfam
