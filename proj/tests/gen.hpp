#pragma once

// Seeded random generators for test inputs.

#include <set>
#include <string>
#include <vector>

#include "fillfam/point_config.hpp"
#include "fillfam/rational.hpp"
#include "fillfam/rng.hpp"

namespace gen {

inline std::string random_word(fillfam::Rng& rng, std::size_t len) {
  std::string w(len, '0');
  for (char& c : w) c = rng.coin() ? '1' : '0';
  return w;
}

inline fillfam::PointConfig random_config(fillfam::Rng& rng, std::size_t depth,
                                          std::size_t size) {
  std::set<std::string> pts;
  while (pts.size() < size) pts.insert(random_word(rng, depth));
  std::vector<fillfam::BitNode> v;
  for (const std::string& s : pts) v.emplace_back(s);
  return fillfam::PointConfig::make(depth, std::move(v));
}

// A randomized 2^n-point staircase: the 2^n - 1 split positions get strictly
// increasing lengths in level-major order with random gaps, and every padding
// bit is random.  Its prefix tree is n-increasing by construction.
inline fillfam::PointConfig random_increasing(fillfam::Rng& rng, std::size_t n,
                                              std::size_t max_gap = 2) {
  std::size_t slots = (std::size_t(1) << n) - 1;
  std::vector<std::size_t> lengths(slots);
  std::size_t cur = rng.below(max_gap + 1);
  for (std::size_t i = 0; i < slots; ++i) {
    lengths[i] = cur;
    cur += 1 + rng.below(max_gap + 1);
  }
  std::size_t depth = cur + rng.below(max_gap + 1);

  // labels[level-major slot index]; slot of s = 2^level - 1 + lex position.
  std::vector<std::string> label(slots);
  label[0] = random_word(rng, lengths[0]);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::size_t base = (std::size_t(1) << j) - 1;
    std::size_t child_base = (std::size_t(1) << (j + 1)) - 1;
    for (std::size_t p = 0; p < (std::size_t(1) << j); ++p) {
      const std::string& parent = label[base + p];
      for (int b = 0; b < 2; ++b) {
        std::size_t slot = child_base + 2 * p + b;
        std::string w = parent + char('0' + b);
        w += random_word(rng, lengths[slot] - w.size());
        label[slot] = std::move(w);
      }
    }
  }
  std::vector<fillfam::BitNode> pts;
  std::size_t leaf_base = (std::size_t(1) << (n - 1)) - 1;
  for (std::size_t p = 0; p < (std::size_t(1) << (n - 1)); ++p)
    for (int b = 0; b < 2; ++b) {
      std::string w = label[leaf_base + p] + char('0' + b);
      w += random_word(rng, depth - w.size());
      pts.emplace_back(w);
    }
  return fillfam::PointConfig::make(depth, std::move(pts));
}

inline fillfam::PointConfig random_subset(fillfam::Rng& rng,
                                          const fillfam::PointConfig& cfg,
                                          std::size_t size) {
  auto idx = rng.sample_indices(cfg.size(), size);
  return cfg.subset_by_indices(idx);
}

inline fillfam::Rat random_coeff(fillfam::Rng& rng) {
  std::int64_t num = 1 + std::int64_t(rng.below(5));
  if (rng.coin()) num = -num;
  return fillfam::Rat(num, 1 + std::int64_t(rng.below(6)));
}

}  // namespace gen
