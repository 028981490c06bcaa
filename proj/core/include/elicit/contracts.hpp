#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "elicit/rational.hpp"
#include "elicit/scoring.hpp"
#include "elicit/simplex.hpp"

namespace elicit {

enum class RuleKind { quadratic, logarithmic };

/// Every expert is paid by the same scoring rule, independently.
struct IndependentContract {
  RuleKind rule = RuleKind::quadratic;
};

/// Two experts; each is paid their quadratic score minus the other's.
/// Total reward is identically zero.
struct ZeroSumPairContract {};

/// Expert i receives
///
///   s(p_i; j) - (m-1)^2 s(mean_{-i}; j) + alpha * mean_{-i, j}
///
/// where s is the quadratic score and mean_{-i} averages the other experts'
/// reports. Arbitrage-free when alpha < 0 or alpha >= 2(m-1)^2 n. Other alphas
/// are rejected at evaluation time unless `permissive` is set.
struct LeaveOneOutContract {
  Rational alpha = 0;
  bool permissive = false;
};

using ContractSpec = std::variant<IndependentContract, ZeroSumPairContract, LeaveOneOutContract>;

/// True when rewards are exact rationals (everything but independent-log).
bool is_exact(const ContractSpec& spec);

/// True when the coalition's total reward depends only on its per-outcome
/// report sums (the leave-one-out family).
bool has_coalition_sum_sufficiency(const ContractSpec& spec);

std::string describe(const ContractSpec& spec);

struct RewardVector {
  std::vector<Rational> rewards;

  std::size_t size() const noexcept { return rewards.size(); }
  const Rational& operator[](std::size_t i) const { return rewards[i]; }
};

/// Throws if `spec` cannot be evaluated on m experts and n outcomes:
/// DomainError for a wrong expert count, ConfigurationError for a
/// non-permissive alpha outside the valid range.
void require_evaluable(const ContractSpec& spec, std::size_t experts, std::size_t outcomes);

/// Exact reward vector Pi(P; j). Throws DomainError for float contracts.
RewardVector evaluate(const ContractSpec& spec, const ReportProfile& profile, std::size_t j);

/// Rewards for every outcome, indexed [outcome][expert].
std::vector<RewardVector> evaluate_all(const ContractSpec& spec, const ReportProfile& profile);

/// Float reward vector; works for every contract (log may yield -infinity).
std::vector<double> evaluate_numeric(const ContractSpec& spec, const ReportProfile& profile,
                                     std::size_t j);

/// Float reward vector on float reports (no simplex validation). Used by
/// finite-difference checks that need to step off the rational lattice.
std::vector<double> evaluate_numeric(const ContractSpec& spec,
                                     std::span<const std::vector<double>> reports, std::size_t j);

/// Sum of the coalition members' rewards under outcome j.
Rational coalition_total(const ContractSpec& spec, const ReportProfile& profile,
                         const Coalition& coalition, std::size_t j);

/// Rewards of the listed experts for every outcome: result[k][j] is expert
/// members[k]'s reward under outcome j. This is the fast path used by the
/// arbitrage search; it agrees exactly with evaluate(). Exact contracts only.
std::vector<std::vector<Rational>> member_rewards(const ContractSpec& spec,
                                                  const ReportProfile& profile,
                                                  std::span<const std::size_t> members);

/// Float counterpart of member_rewards for every contract.
std::vector<std::vector<double>> member_rewards_numeric(const ContractSpec& spec,
                                                        const ReportProfile& profile,
                                                        std::span<const std::size_t> members);

/// Coalition totals for every outcome, computing only the members' rewards.
/// Exact contracts give exact values, float contracts numeric ones.
std::vector<ExtendedReal> coalition_totals(const ContractSpec& spec, const ReportProfile& profile,
                                           const Coalition& coalition);

enum class AlphaRegime { valid_negative, valid_large, invalid };

std::string to_string(AlphaRegime regime);

struct AlphaVerdict {
  AlphaRegime regime = AlphaRegime::invalid;
  /// Smallest alpha of the large regime, 2(m-1)^2 n.
  Rational large_threshold;
  /// d = m - 1 - alpha / (4(m-1)), the two-outcome convention.
  Rational d_two_outcome;
  /// d = m - 1 - alpha / (2(m-1)), the general-n convention.
  Rational d_general;

  bool valid() const noexcept { return regime != AlphaRegime::invalid; }
};

/// Classifies alpha for m experts and n outcomes. Requires m >= 2, n >= 2.
AlphaVerdict validate_alpha(const Rational& alpha, std::size_t experts, std::size_t outcomes);

/// Expert i's reward viewed as a single-expert scoring rule of their own
/// report, with every other report held fixed.
class InducedRule final : public ScoringRule {
 public:
  InducedRule(ContractSpec spec, ReportProfile profile, std::size_t expert);

  std::string name() const override;
  bool exact() const override;
  ExtendedReal score(const Distribution& report, std::size_t outcome) const override;

 private:
  ContractSpec spec_;
  ReportProfile profile_;
  std::size_t expert_;
  std::vector<Rational> others_total_;
};

}  // namespace elicit
