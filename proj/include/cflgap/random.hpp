#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "cflgap/rational.hpp"

namespace cflgap {

/// Seeded random stream with platform-independent draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws use rejection sampling rather than the
/// implementation-defined std::uniform_int_distribution, so a seed yields the
/// same outcomes on every toolchain. Probability draws are exact: a rational
/// p = a/b is realized as "u < a" for u uniform in [0, b).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// True with probability p, 0 <= p <= 1. The denominator must fit in 64 bits.
  bool bernoulli(const Rational& p);

  /// Index i with probability weights[i]; the weights must sum to 1.
  std::size_t choose(std::span<const Rational> weights);

  /// Moves a uniformly random k-subset of `items` (in uniformly random order)
  /// to the front. Partial Fisher-Yates.
  template <typename T>
  void shuffle_prefix(std::span<T> items, std::size_t k) {
    for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(items.size() - i));
      std::swap(items[i], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives the seed of stream `index` from a run seed (splitmix64 finalizer).
/// Per-item streams make parallel runs independent of worker scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cflgap
