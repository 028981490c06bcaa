#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "elicit/arbitrage.hpp"
#include "elicit/verification.hpp"

namespace elicit {

// Seeded randomized property sweeps. Every sample draws from its own child
// seed (derive_seed), so results do not depend on thread count.

struct FreenessConfig {
  std::size_t experts = 3;
  std::size_t outcomes = 2;
  Rational alpha = -1;
  bool permissive = false;
  std::size_t baselines = 20;
  /// Deviations per baseline. Coalition sizes cycle through 2..m.
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  std::uint64_t denominator = 1000;
  bool interior = false;
  unsigned threads = 0;
};

struct FreenessReport {
  std::uint64_t checks = 0;
  std::uint64_t certificates = 0;
  /// First few certificates in (baseline, trial) order.
  std::vector<ArbitrageCertificate> examples;
};

/// Random coalition deviations against random baselines; counts dominance
/// certificates (every one is re-verified before being counted).
FreenessReport freeness_sweep(const FreenessConfig& config);

struct IdentitySweepConfig {
  std::size_t experts = 3;
  std::size_t outcomes = 2;
  Rational alpha = -1;
  std::size_t profiles = 1000;
  std::uint64_t seed = 42;
  std::uint64_t denominator = 1000;
};

/// Residual constancy over random profiles. `two_outcome` needs outcomes = 2.
IdentityReport identity_sweep(const IdentitySweepConfig& config, bool two_outcome);

struct WitnessConfig {
  std::size_t experts = 3;
  std::size_t outcomes = 2;
  Rational alpha = -1;
  std::uint64_t deviations = 10000;
  std::uint64_t seed = 42;
  std::uint64_t denominator = 1000;
  unsigned threads = 0;
};

struct WitnessReport {
  std::uint64_t deviations = 0;
  std::uint64_t failures = 0;
  std::uint64_t strict = 0;
  std::uint64_t unchanged_sums = 0;
  std::vector<std::string> counterexamples;
};

/// hurting_outcome on random deviations: the returned outcome must never
/// gain, and must strictly lose whenever coalition sums move.
WitnessReport witness_sweep(const WitnessConfig& config);

struct Claim1Config {
  std::size_t experts = 3;
  Rational alpha = -1;
  std::size_t complements = 200;
  std::size_t monotonicity_samples = 9;
  std::uint64_t seed = 42;
  std::uint64_t denominator = 1000;
};

struct Claim1Report {
  std::size_t polynomial_checks = 0;
  std::size_t polynomial_failures = 0;
  std::size_t monotonicity_checks = 0;
  std::size_t monotonicity_failures = 0;
  std::vector<std::string> counterexamples;
};

/// Two-outcome coalition structure: polynomial agreement at 5 sums and
/// monotonicity in the direction predicted by d (failures only count when a
/// direction is predicted).
Claim1Report claim1_sweep(const Claim1Config& config);

struct VertexReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;
};

/// Sweeps |C| in [3, m] for m in [3, max_experts] over rational d and
/// complement sums in both regimes; the vertex must leave [0, |C|].
VertexReport vertex_sweep(std::size_t max_experts, std::uint64_t seed, std::size_t samples);

struct ProperConfig {
  std::size_t configs = 100;
  std::size_t resolution = 50;
  std::size_t min_experts = 2, max_experts = 5;
  std::size_t min_outcomes = 2, max_outcomes = 4;
  std::uint64_t seed = 42;
  double step = 1e-6;
};

struct ProperReport {
  std::size_t configs = 0;
  std::size_t probe_failures = 0;
  double max_gradient_norm = 0.0;
  std::vector<std::string> counterexamples;
};

/// Central finite-difference gradient norm, along the simplex, of expert
/// `expert`'s expected reward at `belief` with opponents fixed. Evaluated in
/// doubles; `belief` must be interior.
double expected_reward_gradient_norm(const ContractSpec& spec, const ReportProfile& profile,
                                     std::size_t expert, double step);

/// Leave-one-out contracts on random (belief, opponents, alpha): the grid
/// probe must return exactly the on-grid belief and the gradient at an
/// interior belief must vanish.
ProperReport properness_sweep(const ProperConfig& config);

struct CollusionReport {
  std::size_t profiles = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;
};

/// Independent-quadratic mean collusion over random profiles (m <= max_experts,
/// n <= max_outcomes) with a non-unanimous coalition; each must certify.
CollusionReport mean_collusion_sweep(std::size_t profiles, std::size_t max_experts,
                                     std::size_t max_outcomes, std::uint64_t seed);

/// All m experts believe (1/2, 1/2) and jointly switch to (1, 0).
struct UniformBeliefExample {
  std::size_t experts = 0;
  Rational alpha;
  /// Per-expert truthful reward (the same under both outcomes).
  Rational truthful_reward_first, truthful_reward_second;
  /// Per-expert expected reward after the switch, under (1/2, 1/2).
  Rational deviating_expected_reward;
  std::optional<ArbitrageCertificate> expected_certificate;
  std::optional<ArbitrageCertificate> dominance_certificate;
};

UniformBeliefExample uniform_belief_example(std::size_t experts, const Rational& alpha);

/// Renders a profile as "(2/5, 3/5) (1/2, 1/2)".
std::string format_profile(const ReportProfile& profile);

}  // namespace elicit
