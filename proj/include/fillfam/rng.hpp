#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fillfam {

// splitmix64: tiny, seedable, identical on every platform.  Standard
// distributions are implementation-defined, and reports must be
// byte-identical for a given seed, so sampling goes through this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return next() & 1; }

  // Distinct sorted sample of k indices out of [0, n): Floyd's method.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::uint64_t state_;
};

inline std::vector<std::size_t> Rng::sample_indices(std::size_t n,
                                                    std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    std::size_t t = static_cast<std::size_t>(below(j + 1));
    bool seen = false;
    for (std::size_t v : out)
      if (v == t) {
        seen = true;
        break;
      }
    out.push_back(seen ? j : t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fillfam
