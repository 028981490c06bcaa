#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elicit/rational.hpp"
#include "elicit/simplex.hpp"

namespace elicit {

/// A real number that is either known exactly or only as a double.
///
/// `approx` is always set (and may be -infinity for logarithmic scores);
/// `exact` is present only for values produced by exact arithmetic.
struct ExtendedReal {
  std::optional<Rational> exact;
  double approx = 0.0;

  static ExtendedReal of(Rational value);
  static ExtendedReal numeric(double value);

  bool is_exact() const noexcept { return exact.has_value(); }
  bool is_negative_infinity() const noexcept;
};

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal operator*(const Rational& weight, const ExtendedReal& x);

/// Three-way comparison. Exact when both sides are exact; otherwise values
/// within `tolerance` (absolute) compare equal. -infinity equals itself.
int compare(const ExtendedReal& a, const ExtendedReal& b, double tolerance = 0.0);

/// Single-expert reward rule s(report; outcome).
class ScoringRule {
 public:
  virtual ~ScoringRule() = default;

  virtual std::string name() const = 0;

  /// Whether scores are exact rationals. Float rules may return -infinity.
  virtual bool exact() const = 0;

  virtual ExtendedReal score(const Distribution& report, std::size_t outcome) const = 0;
};

class QuadraticRule final : public ScoringRule {
 public:
  std::string name() const override { return "quadratic"; }
  bool exact() const override { return true; }
  ExtendedReal score(const Distribution& report, std::size_t outcome) const override;
};

class LogarithmicRule final : public ScoringRule {
 public:
  std::string name() const override { return "logarithmic"; }
  bool exact() const override { return false; }
  ExtendedReal score(const Distribution& report, std::size_t outcome) const override;
};

/// Quadratic (Brier) score 1 - ||p - delta_j||^2. For two outcomes this is
/// 1 - 2(1 - p_j)^2.
Rational quadratic_score(const Distribution& report, std::size_t j);

/// Same rule on a float point; used for finite-difference checks.
double quadratic_score(std::span<const double> report, std::size_t j);

/// ln(p_j), or -infinity when p_j = 0.
double log_score(const Distribution& report, std::size_t j);

/// Sum_j belief_j * score(report, j). Terms with zero belief are skipped, so
/// -infinity only propagates from outcomes the belief considers possible.
ExtendedReal expected_score(const ScoringRule& rule, const Distribution& belief,
                            const Distribution& report);

/// Outcome of an exhaustive search for the best report on a simplex lattice.
struct ProbeResult {
  /// All lattice points attaining the best expected score (ascending lex order).
  std::vector<Distribution> maximizers;
  ExtendedReal best;
  std::size_t evaluated = 0;

  bool unique() const noexcept { return maximizers.size() == 1; }
  /// A tie set of size > 1 is a properness-violation finding.
  bool tie() const noexcept { return maximizers.size() > 1; }
};

/// Scans every report on the lattice of step 1/resolution and returns the
/// expected-score maximizers under `belief`. Float rules treat scores within
/// 1e-12 (relative) as tied.
ProbeResult properness_probe(const ScoringRule& rule, const Distribution& belief,
                             std::size_t resolution);

}  // namespace elicit
