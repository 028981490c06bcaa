#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "elicit/contracts.hpp"
#include "elicit/scoring.hpp"
#include "elicit/simplex.hpp"
#include "elicit/surd.hpp"

namespace elicit {

enum class ArbitrageKind {
  /// Coalition total weakly rises under every outcome, strictly under one.
  dominance,
  /// Every member's belief-weighted coalition total weakly rises, one strictly.
  /// Beliefs are the members' baseline reports.
  expected,
};

enum class Exactness { exact, numeric };

std::string to_string(ArbitrageKind kind);
std::string to_string(Exactness exactness);

/// Float contracts compare coalition totals with this absolute tolerance.
inline constexpr double kNumericTolerance = 1e-9;

/// A baseline/deviation pair witnessing (expected) arbitrage for a coalition.
struct ArbitrageCertificate {
  ArbitrageKind kind = ArbitrageKind::dominance;
  Exactness exactness = Exactness::exact;
  ReportProfile baseline;
  ReportProfile deviation;
  Coalition coalition;
  /// Per outcome.
  std::vector<ExtendedReal> baseline_totals;
  std::vector<ExtendedReal> deviation_totals;
  std::vector<ExtendedReal> deltas;
  /// Per coalition member (in member order): belief-weighted change of the
  /// coalition total. Filled for both kinds.
  std::vector<ExtendedReal> expected_gains;
};

/// Checks deviations against one baseline profile. Caches every expert's
/// baseline reward, so each check only evaluates the deviating members.
class DeviationChecker {
 public:
  DeviationChecker(ContractSpec spec, ReportProfile baseline);

  const ContractSpec& spec() const noexcept { return spec_; }
  const ReportProfile& baseline() const noexcept { return baseline_; }

  /// Throws InputError if `deviation` differs from the baseline outside the
  /// coalition or has a different shape.
  std::optional<ArbitrageCertificate> check(const ReportProfile& deviation,
                                            const Coalition& coalition, ArbitrageKind kind) const;

 private:
  ContractSpec spec_;
  ReportProfile baseline_;
  std::vector<std::vector<Rational>> exact_rewards_;   // [expert][outcome]
  std::vector<std::vector<double>> numeric_rewards_;  // float contracts only
};

std::optional<ArbitrageCertificate> check_dominance(const ContractSpec& spec,
                                                    const ReportProfile& baseline,
                                                    const ReportProfile& deviation,
                                                    const Coalition& coalition);

std::optional<ArbitrageCertificate> check_expected_arbitrage(const ContractSpec& spec,
                                                             const ReportProfile& baseline,
                                                             const ReportProfile& deviation,
                                                             const Coalition& coalition);

/// Recomputes a certificate from scratch with the full reward evaluation and
/// confirms it still certifies.
bool reverify(const ContractSpec& spec, const ArbitrageCertificate& certificate);

/// Every coalition member reports the coalition's mean; everyone else keeps
/// their report. Requires |C| >= 2.
ReportProfile mean_collusion(const ReportProfile& profile, const Coalition& coalition);

/// Reports (x, 1-x) on which all coalition members can agree and profit,
/// where x is the probability of `outcome`.
struct ArbitrageInterval {
  std::size_t outcome = 0;
  QuadraticSurd lower;
  QuadraticSurd upper;
  /// No report strictly improves some outcome while not hurting the other.
  bool empty = true;

  bool contains(const Rational& x) const;
};

/// Closed interval of uniform coalition reports that dominate the baseline
/// under the independent quadratic contract. Requires n = 2, |C| >= 2.
ArbitrageInterval uniform_report_arbitrage_interval(const ContractSpec& spec,
                                                    const ReportProfile& profile,
                                                    const Coalition& coalition, std::size_t outcome);

/// Exhaustive lattice of step 1/resolution per member report. For the
/// leave-one-out family only coalition sums matter, so the search walks
/// the lattice of sums |C|/resolution and splits each sum equally.
struct GridSearch {
  std::size_t resolution = 20;
};

/// Seeded random deviations on the lattice of step 1/denominator.
struct RandomSearch {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t denominator = 1000;
};

using SearchStrategy = std::variant<GridSearch, RandomSearch>;

struct SearchOptions {
  ArbitrageKind kind = ArbitrageKind::dominance;
  /// Restrict deviating reports to weights of at least one lattice step.
  bool interior = false;
  /// 0 = hardware concurrency. Results do not depend on this.
  unsigned threads = 0;
  /// Grid searches larger than this are refused with ConfigurationError.
  std::uint64_t max_candidates = 50'000'000;
};

struct SearchResult {
  std::optional<ArbitrageCertificate> certificate;
  /// Candidates in enumeration order up to and including the certificate,
  /// or the whole budget when none was found.
  std::uint64_t candidates = 0;
  bool used_coalition_sums = false;
};

/// Returns the first certificate in canonical enumeration order (ascending
/// lexicographic deviation for grids, trial order for random search).
SearchResult search_arbitrage(const ContractSpec& spec, const ReportProfile& profile,
                              const Coalition& coalition, const SearchStrategy& strategy,
                              const SearchOptions& options = {});

}  // namespace elicit
