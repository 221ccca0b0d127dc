#include "fillfam/family.hpp"

#include <algorithm>

#include "fillfam/errors.hpp"

namespace fillfam {

const char* ground_kind_name(GroundKind k) {
  return k == GroundKind::bits ? "bits" : "nat";
}

NatSet NatSet::make(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0)
      fail(Errc::invalid_argument,
           "negative integer point " + std::to_string(v[i]));
    if (i > 0 && v[i] == v[i - 1])
      fail(Errc::invalid_argument,
           "duplicate integer point " + std::to_string(v[i]));
  }
  NatSet s;
  s.elems = std::move(v);
  return s;
}

NatSet NatSet::range(std::int64_t lo, std::int64_t hi) {
  if (lo < 0 || hi < lo - 1)
    fail(Errc::invalid_argument, "bad integer range");
  NatSet s;
  s.elems.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t v = lo; v <= hi; ++v) s.elems.push_back(v);
  return s;
}

NatSet NatSet::subset_by_indices(const std::vector<std::size_t>& idx) const {
  std::vector<std::int64_t> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= elems.size()) fail(Errc::invalid_argument, "index out of range");
    out.push_back(elems[i]);
  }
  return make(std::move(out));
}

bool Family::member_points(std::size_t, const std::vector<BitNode>&) const {
  fail(Errc::invalid_argument,
       "family '" + name() + "' takes integer sets, not word sets");
}

bool Family::member_nat(const std::vector<std::int64_t>&) const {
  fail(Errc::invalid_argument,
       "family '" + name() + "' takes word sets, not integer sets");
}

std::size_t Family::ground_depth() const {
  fail(Errc::invalid_argument,
       "family '" + name() + "' has integer ground, no cube depth");
}

}  // namespace fillfam
