#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fillfam/point_config.hpp"

namespace fillfam {

// Two ground sets are supported: words of a fixed depth ("bits") and
// nonnegative integers ("nat").
enum class GroundKind { bits, nat };

const char* ground_kind_name(GroundKind k);

// Sorted set of nonnegative integers, the nat-side analogue of PointConfig.
struct NatSet {
  std::vector<std::int64_t> elems;  // strictly increasing

  std::size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }

  static NatSet make(std::vector<std::int64_t> v);  // sorts, rejects dups/negatives
  static NatSet range(std::int64_t lo, std::int64_t hi);  // {lo, ..., hi}
  NatSet subset_by_indices(const std::vector<std::size_t>& idx) const;

  friend bool operator==(const NatSet& a, const NatSet& b) {
    return a.elems == b.elems;
  }
};

// A hereditary family of finite sets: every subset of a member is a member,
// and the empty set always belongs.  Implementations answer membership for
// sorted, duplicate-free queries of their ground kind; the wrong-kind query
// is a usage error.
class Family {
 public:
  virtual ~Family() = default;

  // Canonical spec string; make_family(name()) reproduces the family.
  virtual std::string name() const = 0;
  virtual GroundKind kind() const = 0;

  bool member(const PointConfig& g) const {
    return member_points(g.depth, g.points);
  }
  bool member(const NatSet& g) const { return member_nat(g.elems); }

  // `pts` must be sorted, distinct, all of length `depth`.
  virtual bool member_points(std::size_t depth,
                             const std::vector<BitNode>& pts) const;
  // `pts` must be sorted, distinct, nonnegative.
  virtual bool member_nat(const std::vector<std::int64_t>& pts) const;

  // Default host cube depth for bits families (errors on nat kind).
  virtual std::size_t ground_depth() const;

  // If set to d: membership is a function of the multiset of length-d
  // truncations of the points.  Lets searches work per truncation class.
  virtual std::optional<std::size_t> determination_depth() const {
    return std::nullopt;
  }

  // True when membership of a sorted set depends only on its consecutive
  // meet lengths forming a strictly increasing sequence; enables an exact
  // polynomial search for largest members.
  virtual bool has_monotone_meets() const { return false; }
};

// Builds a family from a spec string:
//   schreier
//   all[:kind=bits|nat][,depth=D]
//   size-cap:C[,kind=bits|nat][,depth=D]
//   fremlin[:f=sqrt|one|log2][,levels=K][,depth=D][,assume-monotone]
//   half-space[:depth=D]
//   strongly-monotone[:depth=D]
//   anything else is read as a path to a family file
std::unique_ptr<Family> make_family(const std::string& spec);

}  // namespace fillfam
