#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace tullock {

// SplitMix64: a counter-based generator (output = mix of key + i * golden
// ratio).  Streams are split by hashing (seed, id...) chains, so replicate r
// of experiment e is reproducible in isolation: rng(derive_seed(base, e, r)).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n) by rejection (unbiased).
  std::size_t next_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("next_index: n must be > 0");
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::size_t>(v % bound);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Sample an index from a probability vector (weights assumed to sum to ~1;
  // the tail catches roundoff).
  std::size_t next_categorical(const std::vector<double>& w) {
    const double u = next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return i;
    }
    return w.size() - 1;
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// derive_seed(base, id0, id1, ...) hashes the ids into the base seed one at a
// time; distinct id tuples give independent SplitMix64 streams.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> ids) {
  std::uint64_t h = detail::mix64(base ^ 0x2545f4914f6cdd1dULL);
  for (std::uint64_t id : ids) h = detail::mix64(h ^ (id + 0x9e3779b97f4a7c15ULL));
  return h;
}

template <typename... Ids>
std::uint64_t derive_seed(std::uint64_t base, Ids... ids) {
  return derive_seed(base, {static_cast<std::uint64_t>(ids)...});
}

}  // namespace tullock
