#include "qsearch/rng.hpp"

#include <cmath>
#include <string>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t tag_hash(std::string_view tag) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept {
  return splitmix64_finalize(seed + tag_hash(tag));
}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return splitmix64_finalize(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Lemire-style rejection keeps the draw unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t CounterRng::between(std::uint64_t lo, std::uint64_t hi) noexcept {
  return lo + below(hi - lo + 1);
}

CounterRng CounterRng::split(std::uint64_t tag) const noexcept {
  return CounterRng(splitmix64_finalize(key_ ^ splitmix64_finalize(tag + kGolden)));
}

CounterRng CounterRng::split(std::string_view tag) const noexcept { return split(tag_hash(tag)); }

std::size_t sample_index(std::span<const double> distribution, CounterRng& rng) {
  if (distribution.empty()) throw ValidationError("sample_index: empty distribution");
  double total = 0.0;
  for (double p : distribution) {
    if (!std::isfinite(p) || p < 0.0) throw ValidationError("sample_index: probabilities must be finite and nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("sample_index: distribution sums to " + std::to_string(total) + ", expected 1");
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    if (distribution[i] <= 0.0) continue;
    last_positive = i;
    acc += distribution[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace qsearch
