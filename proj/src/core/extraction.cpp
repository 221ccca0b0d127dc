#include "fillfam/extraction.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

std::uint64_t ipow_checked(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (n != 0 && r > (std::uint64_t(1) << 62) / n)
      fail(Errc::invalid_argument, "size bound n^k overflows");
    r *= n;
  }
  return r;
}

// Consecutive meets of a precedence-sorted list: exactly the splitting
// nodes of the generated tree, pairwise distinct.
std::vector<BitNode> consecutive_meets(const std::vector<BitNode>& pts) {
  std::vector<BitNode> out;
  if (!pts.empty()) out.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    out.push_back(meet(pts[i], pts[i + 1]));
  return out;
}

// Incomparable words compare by plain string order exactly as by precedence.
bool str_less(const BitNode& a, const BitNode& b) { return a.str() < b.str(); }

std::string quoted_list(const std::vector<BitNode>& pts) {
  std::string s = "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ',';
    s += '"';
    s += pts[i].str();
    s += '"';
  }
  s += ']';
  return s;
}

}  // namespace

std::optional<IncreasingWitness> is_increasing_config(const PointConfig& f) {
  if (f.empty())
    fail(Errc::invalid_argument, "the empty configuration has no level structure");
  if (!std::has_single_bit(f.size()))
    fail(Errc::invalid_argument, "increasing configurations have power-of-two size, got " +
                                     std::to_string(f.size()));
  std::size_t n = std::size_t(std::bit_width(f.size())) - 1;
  IncreasingWitness w;
  w.n = n;
  w.source = f;
  if (n == 0) return w;

  // Label top-down.  The block of points [lo, hi) must be rooted at its
  // total meet with two equal power-of-two halves on either side; the
  // halves are contiguous because lexicographic betweenness preserves
  // common prefixes.
  bool shaped = true;
  auto build = [&](auto&& self, std::size_t lo, std::size_t hi,
                   const std::string& s) -> void {
    if (!shaped || hi - lo == 1) return;
    BitNode root = meet(f.points[lo], f.points[hi - 1]);
    std::size_t half = (hi - lo) / 2;
    std::size_t pos = lo;
    while (pos + 1 < hi &&
           meet_length(f.points[pos], f.points[pos + 1]) != root.length())
      ++pos;
    if (pos + 1 - lo != half) {
      shaped = false;
      return;
    }
    w.labels[s] = root;
    self(self, lo, lo + half, s + '0');
    self(self, lo + half, hi, s + '1');
  };
  build(build, 0, f.size(), "");
  if (!shaped) return std::nullopt;

  // Walking labels level-major, lengths must grow strictly: that is the
  // left-to-right growth on one level and the level separation in one sweep.
  std::vector<std::string> level{""};
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t lev = 0; lev < n; ++lev) {
    for (const std::string& s : level) {
      std::size_t len = w.labels.at(s).length();
      if (!first && len <= prev) return std::nullopt;
      prev = len;
      first = false;
    }
    if (lev + 1 == n) break;
    std::vector<std::string> next;
    next.reserve(level.size() * 2);
    for (const std::string& s : level) {
      next.push_back(s + '0');
      next.push_back(s + '1');
    }
    level = std::move(next);
  }
  return w;
}

PointConfig canonical_increasing(std::size_t n, std::size_t depth) {
  if (n > 16)
    fail(Errc::invalid_argument,
         "canonical increasing configuration capped at n = 16, got " +
             std::to_string(n));
  std::size_t count = std::size_t(1) << n;
  if (depth < count)
    fail(Errc::precondition,
         "depth " + std::to_string(depth) + " cannot host 2^" +
             std::to_string(n) + " increasing points; need depth >= " +
             std::to_string(count));
  if (n == 0) return PointConfig::make(depth, {BitNode(std::string(depth, '0'))});

  // Heap-indexed slots; slot i carries a label of length exactly i.
  std::vector<std::string> label(count - 1);
  label[0] = "";
  for (std::size_t i = 1; i < count - 1; ++i) {
    std::string base = label[(i - 1) / 2];
    base += char('0' + int((i - 1) % 2));
    base.resize(i, '0');
    label[i] = std::move(base);
  }
  std::vector<BitNode> pts;
  pts.reserve(count);
  for (std::size_t i = count / 2 - 1; i < count - 1; ++i)
    for (int b = 0; b < 2; ++b) {
      std::string p = label[i];
      p += char('0' + b);
      p.resize(depth, '0');
      pts.emplace_back(std::move(p));
    }
  return PointConfig::make(depth, std::move(pts));
}

PointConfig extract_increasing(const PointConfig& f, const PointConfig& g,
                               std::size_t k, ExtractionChain* chain) {
  auto wit = is_increasing_config(f);
  if (!wit) fail(Errc::not_increasing, "source configuration is not increasing");
  std::size_t n = wit->n;
  if (n < 2)
    fail(Errc::precondition,
         "source must have at least 4 points in increasing position");
  if (k < 1) fail(Errc::invalid_argument, "extraction exponent must be positive");
  std::uint64_t need_total = ipow_checked(n, k);
  if ((std::uint64_t(1) << n) < need_total)
    fail(Errc::precondition, "2^n >= n^k fails for n = " + std::to_string(n) +
                                 ", k = " + std::to_string(k));
  if (f.depth != g.depth || !f.contains_all(g))
    fail(Errc::precondition, "selection must be a subset of the source");
  if (g.size() < need_total)
    fail(Errc::precondition,
         "selection has " + std::to_string(g.size()) + " points, needs n^k = " +
             std::to_string(need_total));

  std::map<std::string, std::size_t> level_of;
  for (const auto& [s, t] : wit->labels) level_of[t.str()] = s.size();

  ExtractionChain local;
  ExtractionChain& tr = chain ? *chain : local;
  tr.levels.clear();
  tr.sets.clear();
  tr.subtree.clear();

  // Repeated pigeonhole down the levels: pick the smallest level of the
  // source tree holding n^{k-1-m} of the current nodes, then pass to the
  // meets of that antichain.
  std::vector<BitNode> current = consecutive_meets(g.points);
  std::size_t level_cap = n;
  for (std::size_t m = 0; m < k; ++m) {
    std::map<std::size_t, std::vector<BitNode>> groups;
    for (const BitNode& node : current) {
      auto it = level_of.find(node.str());
      if (it == level_of.end())
        fail(Errc::internal, "meet escaped the source splitting tree: " + node.str());
      groups[it->second].push_back(node);
    }
    std::uint64_t need = ipow_checked(n, k - 1 - m);
    bool found = false;
    for (auto& [lev, nodes] : groups) {
      if (lev >= level_cap) break;
      if (nodes.size() >= need) {
        std::sort(nodes.begin(), nodes.end(), str_less);
        tr.levels.push_back(lev);
        tr.sets.push_back(std::move(nodes));
        level_cap = lev;
        found = true;
        break;
      }
    }
    if (!found)
      fail(Errc::internal, "no level holds " + std::to_string(need) +
                               " nodes at round " + std::to_string(m));
    if (m + 1 < k) current = consecutive_meets(tr.sets.back());
  }

  // Grow the k-level subtree from the last antichain upward, always taking
  // the leftmost node passing through the wanted child.
  tr.subtree[""] = tr.sets[k - 1].front();
  std::vector<std::string> slots{""};
  for (std::size_t lam = 1; lam < k; ++lam) {
    const std::vector<BitNode>& pool = tr.sets[k - 1 - lam];
    std::vector<std::string> next;
    next.reserve(slots.size() * 2);
    for (const std::string& s : slots) {
      const BitNode& wnode = tr.subtree.at(s);
      for (int b = 0; b < 2; ++b) {
        std::string want = wnode.str() + char('0' + b);
        const BitNode* pick = nullptr;
        for (const BitNode& c : pool)
          if (c.str().compare(0, want.size(), want) == 0) {
            pick = &c;
            break;
          }
        if (!pick)
          fail(Errc::internal, "no successor of " + wnode.str() +
                                   " through child " + std::to_string(b));
        tr.subtree[s + char('0' + b)] = *pick;
        next.push_back(s + char('0' + b));
      }
    }
    slots = std::move(next);
  }

  // Realize: the leftmost selected point through each child of each leaf
  // label.  Their meet structure is exactly the subtree.
  std::vector<BitNode> pts;
  pts.reserve(std::size_t(1) << k);
  for (const std::string& s : slots) {
    const BitNode& wnode = tr.subtree.at(s);
    for (int b = 0; b < 2; ++b) {
      std::string want = wnode.str() + char('0' + b);
      const BitNode* pick = nullptr;
      for (const BitNode& p : g.points)
        if (p.str().compare(0, want.size(), want) == 0) {
          pick = &p;
          break;
        }
      if (!pick)
        fail(Errc::internal, "no selected point below " + want);
      pts.push_back(*pick);
    }
  }
  PointConfig h = PointConfig::make(g.depth, std::move(pts));
  if (!is_increasing_config(h))
    fail(Errc::internal, "extracted configuration failed the increasing check");
  return h;
}

PointConfig extract_type(const PointConfig& h, const TypeSignature& tau) {
  auto wit = is_increasing_config(h);
  if (!wit) fail(Errc::not_increasing, "configuration is not increasing");
  std::size_t k = wit->n;
  if (k < 1)
    fail(Errc::invalid_argument, "need at least two points to carve a type");
  tau.validate();
  if (tau.k != k + 1)
    fail(Errc::invalid_argument,
         "type arity mismatch: 2^" + std::to_string(k) + " points carve " +
             std::to_string(k + 1) + "-point types, got " + std::to_string(tau.k));

  // Solve for point indices: recurse on the even half, then adjoin the odd
  // successor named by the last signature value.
  auto solve = [](auto&& self, std::size_t kk,
                  const std::vector<int>& vals) -> std::vector<std::size_t> {
    if (kk == 1) return {0, 1};
    std::vector<int> sub_vals(vals.begin(), vals.end() - 1);
    std::vector<std::size_t> sub = self(self, kk - 1, sub_vals);
    std::size_t t = std::size_t(vals.back());
    std::vector<std::size_t> out;
    out.reserve(sub.size() + 1);
    for (std::size_t i : sub) out.push_back(2 * i);
    out.push_back(2 * sub[t] + 1);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<std::size_t> idx = solve(solve, k, tau.values);
  PointConfig out = h.subset_by_indices(idx);
  if (!(type_of(out) == tau))
    fail(Errc::internal, "carved subset has the wrong signature");
  return out;
}

PointConfig find_typed_member(const Family& fam, const PointConfig& ground,
                              std::size_t k, const TypeSignature& tau,
                              std::size_t n, const SearchBudget& budget) {
  if (fam.kind() != GroundKind::bits)
    fail(Errc::invalid_argument, "typed members live in word families");
  if (k < 2 || n < 2)
    fail(Errc::invalid_argument, "typed-member search needs k >= 2 and n >= 2");
  tau.validate();
  if (tau.k != k)
    fail(Errc::invalid_argument,
         "type arity mismatch: asked for " + std::to_string(k) +
             " points with a " + std::to_string(tau.k) + "-point signature");

  PointConfig f = canonical_increasing(n, ground.depth);
  std::uint64_t need = ipow_checked(n, k - 1);
  if ((std::uint64_t(1) << n) < need)
    fail(Errc::precondition, "2^n >= n^{k-1} fails for n = " + std::to_string(n) +
                                 ", k = " + std::to_string(k));
  if (!ground.contains_all(f))
    fail(Errc::precondition,
         "ground set does not contain the canonical increasing configuration");

  MaxMemberResult mm = max_member_within(fam, f, budget);
  if (!mm.exact)
    fail(Errc::budget_exceeded, "largest-member search ran out of budget",
         "{\"queries\":" + std::to_string(mm.queries) + "}");
  if (mm.witness.size() < need)
    fail(Errc::precondition,
         "family reaches only " + std::to_string(mm.witness.size()) +
             " of the required n^{k-1} = " + std::to_string(need) +
             " points on the increasing configuration",
         std::string("{\"config\":") + quoted_list(f.points) +
             ",\"member\":" + quoted_list(mm.witness.points) +
             ",\"required\":" + std::to_string(need) + "}");

  PointConfig h = extract_increasing(f, mm.witness, k - 1);
  PointConfig out = extract_type(h, tau);
  if (!fam.member(out))
    fail(Errc::internal, "typed subset escaped the family");
  return out;
}

}  // namespace fillfam
