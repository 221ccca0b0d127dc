#pragma once

#include <cstdint>
#include <vector>

#include "fillfam/family.hpp"
#include "fillfam/point_config.hpp"

namespace fillfam {

// Caps the number of membership queries a search may issue.
struct SearchBudget {
  std::uint64_t max_queries = 50'000'000;
};

// Largest member inside a configuration.  `exact` is false when the budget
// ran out first; the witness is then only a lower bound.  Ties at the
// maximum size resolve to the lexicographically least point list.
struct MaxMemberResult {
  PointConfig witness;
  bool exact = true;
  std::uint64_t queries = 0;
};

struct MaxMemberNatResult {
  NatSet witness;
  bool exact = true;
  std::uint64_t queries = 0;
};

// Strategy: families with monotone meet structure get an exact quadratic
// dynamic program; families determined at a small prefix depth get a search
// over truncation-class count vectors; the rest get branch and bound over
// points in order, descending into a point only while the set stays a
// member (heredity makes that complete).
MaxMemberResult max_member_within(const Family& fam, const PointConfig& cfg,
                                  const SearchBudget& budget = {});
MaxMemberNatResult max_member_within(const Family& fam, const NatSet& cfg,
                                     const SearchBudget& budget = {});

// Whether some member of size >= t sits inside cfg.  Runs the branch and
// bound from the top of the point order, which meets large members of
// min-anchored families early.  Errors with budget_exceeded when
// undecided within budget.
bool has_member_at_least(const Family& fam, const PointConfig& cfg,
                         std::size_t t, const SearchBudget& budget = {});
bool has_member_at_least(const Family& fam, const NatSet& cfg, std::size_t t,
                         const SearchBudget& budget = {});

// One run serving density sweeps: with stop_at > 0 it ends early once a
// member that large is found (*reached set, witness at least that big);
// otherwise it exhausts the configuration and the witness is the true
// maximum.  stop_at == 0 always exhausts.
MaxMemberResult max_member_or_reach(const Family& fam, const PointConfig& cfg,
                                    std::size_t stop_at,
                                    const SearchBudget& budget, bool* reached);
MaxMemberNatResult max_member_or_reach(const Family& fam, const NatSet& cfg,
                                       std::size_t stop_at,
                                       const SearchBudget& budget,
                                       bool* reached);

}  // namespace fillfam
