#pragma once

#include <cstdint>
#include <random>

namespace dtnreward {

/// SplitMix64 finalizer applied to `master + (stream + 1) * golden_gamma`.
/// Sub-seeds for batches, blocks and replications are always derived with
/// this rule so a (seed, stream) pair names the same random stream on every
/// platform.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Portable random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distribution adaptors are not portable, so every
/// variate here is produced by explicit transforms of the raw 64-bit words:
/// uniforms take the top 53 bits, exponentials use inversion, normals use
/// Box-Muller without caching.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  double exponential(double rate);
  double standard_normal();

  // UniformRandomBitGenerator surface, for std::shuffle and friends.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dtnreward
