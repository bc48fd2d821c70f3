#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fairsub {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `stream` (trial index) under `master`:
/// mix64(master + mix64(stream + 1)).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Seedable generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard. The
/// standard distributions are not, so the draws below are implemented directly
/// on the raw 64-bit output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  [[nodiscard]] double uniform01();

  /// Uniform integer in [0, bound). `bound` must be positive.
  [[nodiscard]] std::size_t uniform_index(std::size_t bound);

  /// True with probability p; p <= 0 never, p >= 1 always.
  [[nodiscard]] bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fairsub
