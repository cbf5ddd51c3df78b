#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace cyclecover {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based splittable generator.
///
/// A stream is identified by a 64-bit key. Draw i (1-based) of a stream is
/// mix64(key + i * 0x9E3779B97F4A7C15), i.e. SplitMix64 evaluated at an explicit
/// counter. A child stream has key mix64(parent_key ^ mix64(tag + 0x9E3779B97F4A7C15)).
/// Every quantity is an unsigned 64-bit integer, so the contract has no byte-order
/// dependence. Doubles take the top 53 bits; bounded integers use rejection on
/// the top of the range so results are identical on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix64(seed)) {}

  static Rng from_key(std::uint64_t key) {
    Rng r(0);
    r.key_ = key;
    return r;
  }

  Rng derive(std::uint64_t tag) const { return from_key(mix64(key_ ^ mix64(tag + kGolden))); }
  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform int in [lo, hi] inclusive.
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct values from [0, n) in random order.
  std::vector<int> sample(int n, int k);

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for an independent sub-task, depending only on (seed, tag).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return Rng(seed).derive(tag).key(); }

}  // namespace cyclecover
