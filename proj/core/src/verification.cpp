#include "elicit/verification.hpp"

#include <string>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

ContractSpec unchecked(const Rational& alpha) { return LeaveOneOutContract{alpha, true}; }

void require_two_outcomes(const ReportProfile& profile, const char* what) {
  if (profile.outcome_count() != 2) {
    throw DomainError(std::string(what) + " needs n = 2, got n=" +
                      std::to_string(profile.outcome_count()));
  }
}

const LeaveOneOutContract& require_leave_one_out(const ContractSpec& spec) {
  const auto* c = std::get_if<LeaveOneOutContract>(&spec);
  if (c == nullptr) throw DomainError("expected a leave-one-out (nr) contract, got " + describe(spec));
  return *c;
}

template <class Residual>
IdentityReport constancy(std::string name, std::span<const ReportProfile> profiles,
                         Residual&& residual) {
  IdentityReport report;
  report.name = std::move(name);
  report.max_deviation = 0;
  bool first = true;
  for (const auto& profile : profiles) {
    for (std::size_t i = 0; i < profile.expert_count(); ++i) {
      for (std::size_t j = 0; j < profile.outcome_count(); ++j) {
        const Rational r = residual(profile, i, j);
        ++report.sample_count;
        if (first) {
          report.residual_offset = r;
          first = false;
          continue;
        }
        const Rational dev = abs(r - report.residual_offset);
        if (dev > report.max_deviation) report.max_deviation = dev;
      }
    }
  }
  return report;
}

}  // namespace

Rational two_outcome_residual(const ReportProfile& profile, std::size_t expert, std::size_t outcome,
                         const Rational& alpha) {
  require_two_outcomes(profile, "two_outcome_residual");
  const std::size_t m = profile.expert_count();
  if (m < 2) throw DomainError("two_outcome_residual needs m >= 2");
  const Rational d = validate_alpha(alpha, m, 2).d_two_outcome;
  const Rational total = outcome_totals(profile)[outcome];
  const Rational& own = profile.at(expert).at(outcome);
  const Rational reward = evaluate(unchecked(alpha), profile, outcome)[expert];
  return reward - 2 * (total - d - 1) * (total - 2 * own - d + 1);
}

Rational general_identity_residual(const ReportProfile& profile, std::size_t expert,
                                   std::size_t outcome, const Rational& alpha) {
  const std::size_t m = profile.expert_count();
  const std::size_t n = profile.outcome_count();
  if (m < 2) throw DomainError("general_identity_residual needs m >= 2");
  const Rational d = validate_alpha(alpha, m, n).d_general;
  const auto totals = outcome_totals(profile);
  const auto& own = profile.at(expert);
  own.at(outcome);
  Rational expr = (totals[outcome] - d - 1) * (totals[outcome] - 2 * own[outcome] - d + 1);
  for (std::size_t l = 0; l < n; ++l) {
    if (l == outcome) continue;
    expr += totals[l] * (totals[l] - 2 * own[l]);
  }
  const Rational reward = evaluate(unchecked(alpha), profile, outcome)[expert];
  return reward - expr;
}

IdentityReport two_outcome_constancy(std::span<const ReportProfile> profiles, const Rational& alpha) {
  return constancy("two-outcome", profiles, [&](const ReportProfile& p, std::size_t i, std::size_t j) {
    return two_outcome_residual(p, i, j, alpha);
  });
}

IdentityReport general_identity_constancy(std::span<const ReportProfile> profiles,
                                          const Rational& alpha) {
  return constancy("general-identity", profiles,
                   [&](const ReportProfile& p, std::size_t i, std::size_t j) {
                     return general_identity_residual(p, i, j, alpha);
                   });
}

ReportProfile equal_split(const ReportProfile& profile, const Coalition& coalition,
                          std::span<const Rational> sums) {
  const std::size_t n = profile.outcome_count();
  if (sums.size() != n) throw DomainError("target sums have the wrong outcome count");
  if (coalition.expert_count() != profile.expert_count()) {
    throw DomainError("coalition does not match the profile's expert count");
  }
  const Rational size = static_cast<unsigned long>(coalition.size());
  Rational total = 0;
  for (std::size_t l = 0; l < n; ++l) {
    if (sgn(sums[l]) < 0) {
      throw DomainError("target coalition sum " + to_fraction_string(sums[l]) + " for outcome " +
                        std::to_string(l) + " is negative");
    }
    total += sums[l];
  }
  if (total != size) {
    throw DomainError("target coalition sums total " + to_fraction_string(total) + ", need " +
                      to_fraction_string(size));
  }
  std::vector<Rational> share(n);
  for (std::size_t l = 0; l < n; ++l) share[l] = sums[l] / size;
  const Distribution report(std::move(share));
  std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
  for (std::size_t i : coalition.members()) reports[i] = report;
  return ReportProfile(std::move(reports));
}

ReportProfile with_coalition_sum(const ReportProfile& profile, const Coalition& coalition,
                                 std::size_t outcome, const Rational& target) {
  require_two_outcomes(profile, "with_coalition_sum");
  if (outcome > 1) throw IndexError("outcome out of range for n=2");
  const Rational size = static_cast<unsigned long>(coalition.size());
  if (sgn(target) < 0 || target > size) {
    throw DomainError("coalition sum " + to_fraction_string(target) + " is outside [0, " +
                      to_fraction_string(size) + "]");
  }
  std::vector<Rational> sums(2);
  sums[outcome] = target;
  sums[1 - outcome] = size - target;
  return equal_split(profile, coalition, sums);
}

CoalitionPolynomial coalition_poly(const ReportProfile& profile, const Coalition& coalition,
                                   std::size_t outcome, const Rational& alpha) {
  require_two_outcomes(profile, "coalition_poly");
  if (coalition.size() < 2) throw DomainError("coalition_poly needs |C| >= 2");
  const std::size_t m = profile.expert_count();
  const Rational d = validate_alpha(alpha, m, 2).d_two_outcome;
  const Rational size = static_cast<unsigned long>(coalition.size());
  const auto outside = coalition.complement();
  const Rational complement_sum = index_sum(profile, outside, outcome);

  CoalitionPolynomial poly;
  poly.quadratic = 2 * (size - 2);
  poly.linear = 4 * ((size - 1) * (complement_sum - d) + 1);
  poly.constant =
      coalition_total(unchecked(alpha), with_coalition_sum(profile, coalition, outcome, 0),
                      coalition, outcome);
  return poly;
}

Rational parabola_vertex(std::size_t coalition_size, const Rational& d,
                         const Rational& complement_sum) {
  if (coalition_size <= 2) throw DomainError("parabola_vertex needs |C| > 2");
  const Rational size = static_cast<unsigned long>(coalition_size);
  return ((size - 1) * (d - complement_sum) - 1) / (size - 2);
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "INCREASING";
    case Monotonicity::decreasing: return "DECREASING";
    case Monotonicity::violation: return "VIOLATION";
  }
  return "VIOLATION";
}

MonotonicityResult monotonicity_check(const ContractSpec& spec, const ReportProfile& profile,
                                      const Coalition& coalition, std::size_t outcome,
                                      std::size_t samples) {
  const auto& contract = require_leave_one_out(spec);
  require_two_outcomes(profile, "monotonicity_check");
  if (coalition.size() < 2) throw DomainError("monotonicity_check needs |C| >= 2");
  if (samples < 2) throw DomainError("monotonicity_check needs at least 2 samples");

  const std::size_t m = profile.expert_count();
  const auto verdict = validate_alpha(contract.alpha, m, 2);
  MonotonicityResult result;
  if (sgn(verdict.d_two_outcome) <= 0) {
    result.expected = Monotonicity::increasing;
  } else if (verdict.d_two_outcome > Rational(static_cast<unsigned long>(m - 1))) {
    result.expected = Monotonicity::decreasing;
  }

  const Rational size = static_cast<unsigned long>(coalition.size());
  const Rational steps = static_cast<unsigned long>(samples - 1);
  std::vector<Rational> sums(samples), totals(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    sums[k] = size * Rational(static_cast<unsigned long>(k)) / steps;
    totals[k] = coalition_total(spec, with_coalition_sum(profile, coalition, outcome, sums[k]),
                                coalition, outcome);
  }

  const Monotonicity direction =
      result.expected.value_or(totals[1] > totals[0] ? Monotonicity::increasing
                                                     : Monotonicity::decreasing);
  for (std::size_t k = 0; k + 1 < samples; ++k) {
    const bool ok = direction == Monotonicity::increasing ? totals[k + 1] > totals[k]
                                                          : totals[k + 1] < totals[k];
    if (!ok) {
      result.verdict = Monotonicity::violation;
      result.offending_sums.emplace(sums[k], sums[k + 1]);
      result.offending_totals.emplace(totals[k], totals[k + 1]);
      return result;
    }
  }
  result.verdict = direction;
  return result;
}

HurtingOutcome hurting_outcome(const ContractSpec& spec, const ReportProfile& baseline,
                               const ReportProfile& deviation, const Coalition& coalition) {
  const auto& contract = require_leave_one_out(spec);
  const std::size_t m = baseline.expert_count();
  const std::size_t n = baseline.outcome_count();
  const auto verdict = validate_alpha(contract.alpha, m, n);
  if (!verdict.valid()) {
    throw DomainError("hurting_outcome needs alpha < 0 or alpha >= " +
                      to_fraction_string(verdict.large_threshold) + ", got " +
                      to_fraction_string(contract.alpha));
  }
  // a lone expert is covered by strict properness, not by this argument
  if (coalition.size() < 2) throw DomainError("hurting_outcome needs |C| >= 2");
  if (deviation.expert_count() != m || deviation.outcome_count() != n) {
    throw InputError("baseline and deviation profiles differ in shape");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!coalition.contains(i) && !(baseline[i] == deviation[i])) {
      throw InputError("expert " + std::to_string(i + 1) +
                       " is outside the coalition but changes their report");
    }
  }

  // negative regime: outcome the coalition raised most; large regime:
  // outcome it lowered most
  const bool negative = verdict.regime == AlphaRegime::valid_negative;
  HurtingOutcome out;
  Rational best;
  for (std::size_t l = 0; l < n; ++l) {
    const Rational shift =
        coalition_sum(deviation, coalition, l) - coalition_sum(baseline, coalition, l);
    if (sgn(shift) != 0) out.sums_differ = true;
    const Rational score = negative ? shift : Rational(-shift);
    if (l == 0 || score > best) {
      best = score;
      out.outcome = l;
    }
  }
  out.baseline_total = coalition_total(spec, baseline, coalition, out.outcome);
  out.deviation_total = coalition_total(spec, deviation, coalition, out.outcome);
  return out;
}

}  // namespace elicit
