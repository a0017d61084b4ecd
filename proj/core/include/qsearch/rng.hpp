#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace qsearch {

/// Counter-based generator "ctr-splitmix64/v1".
///
/// Output i of a stream with key K is splitmix64_finalize(K + (i + 1) * G),
/// where G = 0x9E3779B97F4A7C15 and splitmix64_finalize is the standard
/// SplitMix64 output mixer (xor-shift 30/27/31 with multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Uniform doubles take the top
/// 53 bits. Everything is defined on uint64 arithmetic, so draws are
/// bit-identical across platforms and compilers.
///
/// split(tag) derives an independent child key from the parent key and a tag
/// without advancing the parent. The generator is a small value type; pass it
/// by value or by reference, never share it across threads.
class CounterRng {
 public:
  static constexpr std::string_view kAlgorithm = "ctr-splitmix64/v1";

  explicit CounterRng(std::uint64_t seed) noexcept : key_(seed) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1).
  double uniform() noexcept;

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) noexcept;

  CounterRng split(std::uint64_t tag) const noexcept;
  CounterRng split(std::string_view tag) const noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept;

/// 64-bit FNV-1a of a tag string; used for documented sub-seeding.
std::uint64_t tag_hash(std::string_view tag) noexcept;

/// Sub-seed for a named stage: finalize(seed + tag_hash(tag)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

/// Inverse-CDF draw from a discrete distribution using one uniform.
/// The distribution must be nonnegative, finite and sum to 1 within 1e-9;
/// otherwise ValidationError is thrown.
std::size_t sample_index(std::span<const double> distribution, CounterRng& rng);

}  // namespace qsearch
