#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elicit/contracts.hpp"
#include "elicit/rational.hpp"
#include "elicit/simplex.hpp"

namespace elicit {

/// Result of checking that a residual is the same constant on every sample.
/// The constant itself is recovered from the first sample, never assumed.
struct IdentityReport {
  std::string name;
  Rational residual_offset;
  Rational max_deviation;
  std::size_t sample_count = 0;

  bool pass() const { return sgn(max_deviation) == 0; }
};

// Leave-one-out rewards rewritten through outcome totals S_l = p_{[m], l}.
//
// Two outcomes, d = m - 1 - alpha / (4(m-1)):
//   Pi_i(P; j) = 2 (S_j - d - 1)(S_j - 2 p_{i,j} - d + 1) + f(m, alpha)
// General n, d = m - 1 - alpha / (2(m-1)):
//   Pi_i(P; j) = (S_j - d - 1)(S_j - 2 p_{i,j} - d + 1)
//              + sum_{l != j} S_l (S_l - 2 p_{i,l}) + f(m, n, alpha)
// The residual functions return Pi_i minus the displayed expression, which
// must not depend on P, i or j.

/// Requires n = 2 and m >= 2.
Rational two_outcome_residual(const ReportProfile& profile, std::size_t expert, std::size_t outcome,
                         const Rational& alpha);

Rational general_identity_residual(const ReportProfile& profile, std::size_t expert,
                                   std::size_t outcome, const Rational& alpha);

/// Residual spread over every (profile, expert, outcome). Profiles must share m.
IdentityReport two_outcome_constancy(std::span<const ReportProfile> profiles, const Rational& alpha);
IdentityReport general_identity_constancy(std::span<const ReportProfile> profiles,
                                          const Rational& alpha);

/// Coalition total under outcome j as a polynomial in the coalition sum
/// t = p_{C,j} (two outcomes, reports outside C fixed):
///   quadratic * t^2 + linear * t + constant.
struct CoalitionPolynomial {
  Rational quadratic;
  Rational linear;
  Rational constant;

  Rational operator()(const Rational& t) const { return (quadratic * t + linear) * t + constant; }
};

/// Coefficients 2(|C|-2) and 4((|C|-1)(p_{notC,j} - d) + 1) with the
/// two-outcome d; the constant is recovered by evaluating at t = 0.
/// Requires n = 2, |C| >= 2.
CoalitionPolynomial coalition_poly(const ReportProfile& profile, const Coalition& coalition,
                                   std::size_t outcome, const Rational& alpha);

/// Copy of `profile` where the coalition's per-outcome sums are `sums`,
/// split equally among members. Throws DomainError when the sums are not a
/// point of |C| times the simplex.
ReportProfile equal_split(const ReportProfile& profile, const Coalition& coalition,
                          std::span<const Rational> sums);

/// Two-outcome shorthand: set p_{C,j} = target, split equally.
ReportProfile with_coalition_sum(const ReportProfile& profile, const Coalition& coalition,
                                 std::size_t outcome, const Rational& target);

/// Location of the minimum of the coalition-total parabola,
/// ((|C|-1)(d - p_{notC,j}) - 1) / (|C| - 2). Requires |C| > 2.
Rational parabola_vertex(std::size_t coalition_size, const Rational& d,
                         const Rational& complement_sum);

enum class Monotonicity { increasing, decreasing, violation };

std::string to_string(Monotonicity m);

struct MonotonicityResult {
  Monotonicity verdict = Monotonicity::violation;
  /// Direction the alpha regime predicts, if it predicts one.
  std::optional<Monotonicity> expected;
  /// For violations: the offending pair of coalition sums and their totals.
  std::optional<std::pair<Rational, Rational>> offending_sums;
  std::optional<std::pair<Rational, Rational>> offending_totals;
};

/// Evaluates the coalition total at `samples` equally spaced p_{C,j} in
/// [0, |C|] and checks strict monotonicity. d <= 0 predicts increasing,
/// d > m-1 decreasing (two-outcome d); anything else only reports what it
/// observes. Requires a leave-one-out contract, n = 2, |C| >= 2, samples >= 2.
MonotonicityResult monotonicity_check(const ContractSpec& spec, const ReportProfile& profile,
                                      const Coalition& coalition, std::size_t outcome,
                                      std::size_t samples);

struct HurtingOutcome {
  std::size_t outcome = 0;
  Rational baseline_total;
  Rational deviation_total;
  /// Some coalition sum changed between baseline and deviation.
  bool sums_differ = false;

  bool strict() const { return deviation_total < baseline_total; }
};

/// The outcome under which a coalition deviation cannot gain. For alpha < 0
/// it maximizes q_{C,l} - p_{C,l}; in the large regime it maximizes
/// p_{C,l} - q_{C,l}. Ties go to the smallest index. Throws DomainError for
/// contracts outside the two valid regimes and for coalitions of one.
HurtingOutcome hurting_outcome(const ContractSpec& spec, const ReportProfile& baseline,
                               const ReportProfile& deviation, const Coalition& coalition);

}  // namespace elicit
