#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "elicit/simplex.hpp"

namespace elicit {

/// Seeded 64-bit generator. All randomness in the library flows through one
/// of these, so every sweep is reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in (0, 1), built from the top 53 bits.
  double uniform_open();

  /// Uniform integer in [0, bound), unbiased. bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a path of stream identifiers (config index,
/// baseline index, trial index, ...) into an independent child seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Random simplex point with weights on the lattice of step 1/denominator.
///
/// Draws normalized exponential spacings and rounds them to the lattice by
/// largest remainder, so the result sums to exactly 1. With `interior`,
/// every weight is at least 1/denominator (requires denominator >= n).
Distribution random_distribution(Rng& rng, std::size_t outcomes, std::uint64_t denominator,
                                 bool interior = false);

ReportProfile random_profile(Rng& rng, std::size_t experts, std::size_t outcomes,
                             std::uint64_t denominator, bool interior = false);

/// Uniformly random coalition of the given size.
Coalition random_coalition(Rng& rng, std::size_t experts, std::size_t size);

/// Copy of `profile` whose coalition members report fresh random points.
ReportProfile random_deviation(Rng& rng, const ReportProfile& profile, const Coalition& coalition,
                               std::uint64_t denominator, bool interior = false);

}  // namespace elicit
