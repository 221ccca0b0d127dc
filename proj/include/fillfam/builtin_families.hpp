#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fillfam/family.hpp"

namespace fillfam {

// Integer sets that are no larger than their least element plus one.
class SchreierFamily final : public Family {
 public:
  std::string name() const override { return "schreier"; }
  GroundKind kind() const override { return GroundKind::nat; }
  bool member_nat(const std::vector<std::int64_t>& pts) const override;
};

// Every finite set.
class AllFamily final : public Family {
 public:
  AllFamily(GroundKind kind, std::size_t depth) : kind_(kind), depth_(depth) {}
  std::string name() const override;
  GroundKind kind() const override { return kind_; }
  bool member_points(std::size_t, const std::vector<BitNode>&) const override;
  bool member_nat(const std::vector<std::int64_t>&) const override;
  std::size_t ground_depth() const override;
  std::optional<std::size_t> determination_depth() const override;

 private:
  GroundKind kind_;
  std::size_t depth_;
};

// Sets of at most `cap` elements.
class SizeCapFamily final : public Family {
 public:
  SizeCapFamily(std::size_t cap, GroundKind kind, std::size_t depth);
  std::string name() const override;
  GroundKind kind() const override { return kind_; }
  bool member_points(std::size_t, const std::vector<BitNode>&) const override;
  bool member_nat(const std::vector<std::int64_t>&) const override;
  std::size_t ground_depth() const override;
  std::optional<std::size_t> determination_depth() const override;
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
  GroundKind kind_;
  std::size_t depth_;
};

// Size functions selectable for the threshold construction below.
enum class SlowFunc { one, sqrt_ceil, log2_ceil };

std::int64_t slow_func_value(SlowFunc f, std::int64_t i);
const char* slow_func_name(SlowFunc f);
SlowFunc slow_func_parse(const std::string& s);

// How the tail condition sup_{i>=n_k} f(i)/i <= 2^-k was established.
enum class ThresholdCert {
  monotone_declared,  // caller asserted the ratio never rises after dipping
  horizon,            // scanned up to the horizon only; tail unverified
  envelope,           // a non-increasing envelope of the ratio covers the tail
};

const char* threshold_cert_name(ThresholdCert c);

// 1 = n_0 < n_1 < ... < n_K with f(i)/i <= 2^-k for all i >= n_k.
struct ThresholdSequence {
  SlowFunc func;
  std::vector<std::int64_t> values;  // size K + 1, values[0] == 1
  ThresholdCert cert;
  std::int64_t horizon;  // rightmost scanned index
};

// Minimal such sequence.  With `monotone_ratio` the scan stops at the first
// index whose ratio fits the bound; otherwise every index up to a horizon is
// checked and n_k sits past the last violator.  The default horizon of 0
// asks for a self-chosen one large enough that a provably non-increasing
// envelope of f(i)/i certifies the tail, making the result exact; a positive
// horizon is used as given and the result may be flagged horizon-only.
ThresholdSequence slow_thresholds(SlowFunc f, std::size_t count,
                                  std::int64_t horizon = 0,
                                  bool monotone_ratio = false);

// Re-derives the sequence and compares; returns false on any mismatch.
bool verify_thresholds(const ThresholdSequence& t);

// Word sets trapped in a shared cylinder: G is a member when some k <= levels
// and some length-k word t have every point of G extending t and
// |G| <= ceil(n_{k+1} / 2^k).  Equivalently |G| <= cap*(min(levels, L)) for
// L the common prefix length of G and cap* the running maximum of the
// per-level caps; dropping points only lengthens the common prefix, so the
// family is hereditary.
class FremlinFamily final : public Family {
 public:
  FremlinFamily(SlowFunc f, std::size_t depth, std::size_t levels,
                bool monotone_ratio = false);
  std::string name() const override;
  GroundKind kind() const override { return GroundKind::bits; }
  bool member_points(std::size_t depth,
                     const std::vector<BitNode>& pts) const override;
  std::size_t ground_depth() const override { return depth_; }
  std::optional<std::size_t> determination_depth() const override {
    return levels_;
  }

  std::size_t levels() const { return levels_; }
  const ThresholdSequence& thresholds() const { return thresholds_; }
  // ceil(n_{k+1} / 2^k) for k = 0..levels
  const std::vector<std::int64_t>& caps() const { return caps_; }
  // running maximum of caps
  const std::vector<std::int64_t>& max_caps() const { return max_caps_; }

  // Lower bound for the density at n, valid while n < n_{levels+1}: some
  // level-k cylinder holds ceil(n/2^k) of any n points, and that many points
  // of one cylinder always form a member.  The bound dominates f(n).
  std::int64_t certified_density_bound(std::int64_t n) const;

 private:
  std::size_t depth_;
  std::size_t levels_;
  ThresholdSequence thresholds_;
  std::vector<std::int64_t> caps_;
  std::vector<std::int64_t> max_caps_;
};

// Members are the singletons plus every set lying entirely in the '0'
// half of the cube.
class HalfSpaceFamily final : public Family {
 public:
  explicit HalfSpaceFamily(std::size_t depth) : depth_(depth) {}
  std::string name() const override;
  GroundKind kind() const override { return GroundKind::bits; }
  bool member_points(std::size_t, const std::vector<BitNode>&) const override;
  std::size_t ground_depth() const override { return depth_; }
  std::optional<std::size_t> determination_depth() const override { return 1; }

 private:
  std::size_t depth_;
};

// Members are the sets whose consecutive meet lengths are strictly
// monotone: increasing left to right, or decreasing (sets of size <= 2
// qualify trivially).  Subsets inherit either pattern because their
// consecutive meets are range minima of the original sequence.
class StronglyMonotoneFamily final : public Family {
 public:
  explicit StronglyMonotoneFamily(std::size_t depth) : depth_(depth) {}
  std::string name() const override;
  GroundKind kind() const override { return GroundKind::bits; }
  bool member_points(std::size_t, const std::vector<BitNode>&) const override;
  std::size_t ground_depth() const override { return depth_; }
  bool has_monotone_meets() const override { return true; }

 private:
  std::size_t depth_;
};

// Finite family given by an explicit member list over a fixed depth.
// Closed downward on construction; queries of deeper configurations are
// answered on the truncated point set.
class ExplicitFamily final : public Family {
 public:
  // `members` need not be closed; closure is taken and `added_by_closure`
  // reports how many sets that introduced.
  ExplicitFamily(std::size_t depth, const std::vector<PointConfig>& members,
                 std::string label);
  std::string name() const override { return label_; }
  GroundKind kind() const override { return GroundKind::bits; }
  bool member_points(std::size_t depth,
                     const std::vector<BitNode>& pts) const override;
  std::size_t ground_depth() const override { return depth_; }
  std::optional<std::size_t> determination_depth() const override {
    return depth_;
  }

  std::size_t member_count() const { return members_.size(); }  // incl. empty
  std::size_t added_by_closure() const { return added_by_closure_; }
  std::vector<PointConfig> members_sorted() const;

 private:
  std::size_t depth_;
  std::string label_;
  std::set<std::vector<std::string>> members_;
  std::size_t added_by_closure_ = 0;
};

}  // namespace fillfam
