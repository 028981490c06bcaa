#include "elicit/contracts.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Rational squared_norm(std::span<const Rational> x) {
  Rational total = 0;
  for (const auto& v : x) total += v * v;
  return total;
}

// Leave-one-out rewards for all outcomes of an expert reporting `own` while
// the other m-1 reports sum to `others`. Uses s(x; j) = 2 x_j - ||x||^2.
void leave_one_out_rewards(std::span<const Rational> own, std::span<const Rational> others,
                           std::size_t experts, const Rational& alpha, std::vector<Rational>& out) {
  const std::size_t n = own.size();
  const Rational k = static_cast<unsigned long>(experts - 1);
  const Rational k2 = k * k;
  std::vector<Rational> mean(n);
  for (std::size_t l = 0; l < n; ++l) mean[l] = others[l] / k;
  const Rational own_sq = squared_norm(own);
  const Rational mean_sq = squared_norm(mean);
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational s_own = 2 * own[j] - own_sq;
    const Rational s_mean = 2 * mean[j] - mean_sq;
    out[j] = s_own - k2 * s_mean + alpha * mean[j];
  }
}

void quadratic_rewards(std::span<const Rational> own, std::vector<Rational>& out) {
  const Rational own_sq = squared_norm(own);
  out.resize(own.size());
  for (std::size_t j = 0; j < own.size(); ++j) out[j] = 2 * own[j] - own_sq;
}

std::string range_message(const Rational& alpha, std::size_t m, std::size_t n,
                          const Rational& threshold) {
  return "alpha = " + to_fraction_string(alpha) + " is outside the arbitrage-free range for m=" +
         std::to_string(m) + ", n=" + std::to_string(n) + ": need alpha < 0 or alpha >= " +
         to_fraction_string(threshold);
}

void require_outcome(const ReportProfile& profile, std::size_t j) {
  if (j >= profile.outcome_count()) {
    throw IndexError("outcome " + std::to_string(j) + " out of range for n=" +
                     std::to_string(profile.outcome_count()));
  }
}

}  // namespace

bool is_exact(const ContractSpec& spec) {
  if (const auto* ind = std::get_if<IndependentContract>(&spec)) {
    return ind->rule == RuleKind::quadratic;
  }
  return true;
}

bool has_coalition_sum_sufficiency(const ContractSpec& spec) {
  return std::holds_alternative<LeaveOneOutContract>(spec);
}

std::string describe(const ContractSpec& spec) {
  return std::visit(
      overloaded{
          [](const IndependentContract& c) -> std::string {
            return c.rule == RuleKind::quadratic ? "independent-quadratic" : "independent-log";
          },
          [](const ZeroSumPairContract&) -> std::string { return "zero-sum-pair"; },
          [](const LeaveOneOutContract& c) -> std::string {
            return "nr(alpha=" + to_fraction_string(c.alpha) + (c.permissive ? ", permissive)" : ")");
          },
      },
      spec);
}

std::string to_string(AlphaRegime regime) {
  switch (regime) {
    case AlphaRegime::valid_negative: return "VALID_NEGATIVE";
    case AlphaRegime::valid_large: return "VALID_LARGE";
    case AlphaRegime::invalid: return "INVALID";
  }
  return "INVALID";
}

AlphaVerdict validate_alpha(const Rational& alpha, std::size_t experts, std::size_t outcomes) {
  if (experts < 2) throw DomainError("alpha classification needs m >= 2");
  if (outcomes < 2) throw DomainError("alpha classification needs n >= 2");
  const Rational k = static_cast<unsigned long>(experts - 1);
  AlphaVerdict v;
  v.large_threshold = 2 * k * k * static_cast<unsigned long>(outcomes);
  v.d_two_outcome = k - alpha / (4 * k);
  v.d_general = k - alpha / (2 * k);
  if (sgn(alpha) < 0) {
    v.regime = AlphaRegime::valid_negative;
  } else if (alpha >= v.large_threshold) {
    v.regime = AlphaRegime::valid_large;
  } else {
    v.regime = AlphaRegime::invalid;
  }
  return v;
}

void require_evaluable(const ContractSpec& spec, std::size_t experts, std::size_t outcomes) {
  std::visit(overloaded{
                 [](const IndependentContract&) {},
                 [&](const ZeroSumPairContract&) {
                   if (experts != 2) {
                     throw DomainError("zero-sum-pair contract needs exactly 2 experts, got " +
                                       std::to_string(experts));
                   }
                 },
                 [&](const LeaveOneOutContract& c) {
                   if (experts < 2) {
                     throw DomainError("leave-one-out contract needs at least 2 experts");
                   }
                   if (c.permissive) return;
                   const auto verdict = validate_alpha(c.alpha, experts, outcomes);
                   if (!verdict.valid()) {
                     throw ConfigurationError(
                         range_message(c.alpha, experts, outcomes, verdict.large_threshold));
                   }
                 },
             },
             spec);
}

RewardVector evaluate(const ContractSpec& spec, const ReportProfile& profile, std::size_t j) {
  if (!is_exact(spec)) throw DomainError(describe(spec) + " has no exact rewards");
  const std::size_t m = profile.expert_count();
  require_evaluable(spec, m, profile.outcome_count());
  require_outcome(profile, j);

  RewardVector out;
  out.rewards.resize(m);
  std::visit(overloaded{
                 [&](const IndependentContract&) {
                   for (std::size_t i = 0; i < m; ++i) out.rewards[i] = quadratic_score(profile[i], j);
                 },
                 [&](const ZeroSumPairContract&) {
                   const Rational diff =
                       quadratic_score(profile[0], j) - quadratic_score(profile[1], j);
                   out.rewards[0] = diff;
                   out.rewards[1] = -diff;
                 },
                 [&](const LeaveOneOutContract& c) {
                   const Rational k = static_cast<unsigned long>(m - 1);
                   for (std::size_t i = 0; i < m; ++i) {
                     const Distribution mean = leave_one_out_mean(profile, i);
                     out.rewards[i] = quadratic_score(profile[i], j) -
                                      k * k * quadratic_score(mean, j) + c.alpha * mean[j];
                   }
                 },
             },
             spec);
  return out;
}

std::vector<RewardVector> evaluate_all(const ContractSpec& spec, const ReportProfile& profile) {
  std::vector<RewardVector> out;
  out.reserve(profile.outcome_count());
  for (std::size_t j = 0; j < profile.outcome_count(); ++j) out.push_back(evaluate(spec, profile, j));
  return out;
}

std::vector<std::vector<Rational>> member_rewards(const ContractSpec& spec,
                                                  const ReportProfile& profile,
                                                  std::span<const std::size_t> members) {
  if (!is_exact(spec)) throw DomainError(describe(spec) + " has no exact rewards");
  const std::size_t m = profile.expert_count();
  const std::size_t n = profile.outcome_count();
  require_evaluable(spec, m, n);
  for (std::size_t i : members) profile.at(i);

  std::vector<std::vector<Rational>> out(members.size());
  std::visit(overloaded{
                 [&](const IndependentContract&) {
                   for (std::size_t k = 0; k < members.size(); ++k) {
                     quadratic_rewards(profile[members[k]].weights(), out[k]);
                   }
                 },
                 [&](const ZeroSumPairContract&) {
                   std::vector<Rational> s0, s1;
                   quadratic_rewards(profile[0].weights(), s0);
                   quadratic_rewards(profile[1].weights(), s1);
                   for (std::size_t k = 0; k < members.size(); ++k) {
                     out[k].resize(n);
                     for (std::size_t j = 0; j < n; ++j) {
                       out[k][j] = members[k] == 0 ? Rational(s0[j] - s1[j]) : Rational(s1[j] - s0[j]);
                     }
                   }
                 },
                 [&](const LeaveOneOutContract& c) {
                   const std::vector<Rational> totals = outcome_totals(profile);
                   std::vector<Rational> others(n);
                   for (std::size_t k = 0; k < members.size(); ++k) {
                     const auto own = profile[members[k]].weights();
                     for (std::size_t l = 0; l < n; ++l) others[l] = totals[l] - own[l];
                     leave_one_out_rewards(own, others, m, c.alpha, out[k]);
                   }
                 },
             },
             spec);
  return out;
}

std::vector<std::vector<double>> member_rewards_numeric(const ContractSpec& spec,
                                                        const ReportProfile& profile,
                                                        std::span<const std::size_t> members) {
  std::vector<std::vector<double>> out(members.size());
  if (is_exact(spec)) {
    const auto exact = member_rewards(spec, profile, members);
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& r : exact[k]) out[k].push_back(to_double(r));
    }
    return out;
  }
  // independent-log
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& report = profile.at(members[k]);
    for (std::size_t j = 0; j < report.size(); ++j) out[k].push_back(log_score(report, j));
  }
  return out;
}

std::vector<double> evaluate_numeric(const ContractSpec& spec, const ReportProfile& profile,
                                     std::size_t j) {
  require_outcome(profile, j);
  std::vector<std::size_t> everyone(profile.expert_count());
  std::iota(everyone.begin(), everyone.end(), std::size_t{0});
  const auto table = member_rewards_numeric(spec, profile, everyone);
  std::vector<double> out;
  out.reserve(table.size());
  for (const auto& row : table) out.push_back(row[j]);
  return out;
}

std::vector<double> evaluate_numeric(const ContractSpec& spec,
                                     std::span<const std::vector<double>> reports, std::size_t j) {
  const std::size_t m = reports.size();
  if (m == 0) throw DomainError("no reports");
  const std::size_t n = reports.front().size();
  require_evaluable(spec, m, n);
  if (j >= n) throw IndexError("outcome " + std::to_string(j) + " out of range");

  std::vector<double> out(m);
  std::visit(overloaded{
                 [&](const IndependentContract& c) {
                   for (std::size_t i = 0; i < m; ++i) {
                     if (c.rule == RuleKind::quadratic) {
                       out[i] = quadratic_score(reports[i], j);
                     } else {
                       out[i] = reports[i][j] > 0.0 ? std::log(reports[i][j]) : kNegInf;
                     }
                   }
                 },
                 [&](const ZeroSumPairContract&) {
                   const double diff = quadratic_score(reports[0], j) - quadratic_score(reports[1], j);
                   out[0] = diff;
                   out[1] = -diff;
                 },
                 [&](const LeaveOneOutContract& c) {
                   const double k = static_cast<double>(m - 1);
                   const double alpha = to_double(c.alpha);
                   std::vector<double> mean(n);
                   for (std::size_t i = 0; i < m; ++i) {
                     std::fill(mean.begin(), mean.end(), 0.0);
                     for (std::size_t o = 0; o < m; ++o) {
                       if (o == i) continue;
                       for (std::size_t l = 0; l < n; ++l) mean[l] += reports[o][l];
                     }
                     for (auto& v : mean) v /= k;
                     out[i] = quadratic_score(reports[i], j) - k * k * quadratic_score(mean, j) +
                              alpha * mean[j];
                   }
                 },
             },
             spec);
  return out;
}

Rational coalition_total(const ContractSpec& spec, const ReportProfile& profile,
                         const Coalition& coalition, std::size_t j) {
  if (coalition.expert_count() != profile.expert_count()) {
    throw DomainError("coalition does not match the profile's expert count");
  }
  const RewardVector rewards = evaluate(spec, profile, j);
  Rational total = 0;
  for (std::size_t i : coalition.members()) total += rewards[i];
  return total;
}

std::vector<ExtendedReal> coalition_totals(const ContractSpec& spec, const ReportProfile& profile,
                                           const Coalition& coalition) {
  if (coalition.expert_count() != profile.expert_count()) {
    throw DomainError("coalition does not match the profile's expert count");
  }
  const std::size_t n = profile.outcome_count();
  std::vector<ExtendedReal> out;
  out.reserve(n);
  if (is_exact(spec)) {
    const auto table = member_rewards(spec, profile, coalition.members());
    for (std::size_t j = 0; j < n; ++j) {
      Rational total = 0;
      for (const auto& row : table) total += row[j];
      out.push_back(ExtendedReal::of(std::move(total)));
    }
  } else {
    const auto table = member_rewards_numeric(spec, profile, coalition.members());
    for (std::size_t j = 0; j < n; ++j) {
      double total = 0.0;
      for (const auto& row : table) total += row[j];
      out.push_back(ExtendedReal::numeric(total));
    }
  }
  return out;
}

InducedRule::InducedRule(ContractSpec spec, ReportProfile profile, std::size_t expert)
    : spec_(std::move(spec)), profile_(std::move(profile)), expert_(expert) {
  profile_.at(expert_);
  require_evaluable(spec_, profile_.expert_count(), profile_.outcome_count());
  others_total_.assign(profile_.outcome_count(), Rational(0));
  for (std::size_t i = 0; i < profile_.expert_count(); ++i) {
    if (i == expert_) continue;
    for (std::size_t l = 0; l < others_total_.size(); ++l) others_total_[l] += profile_[i][l];
  }
}

std::string InducedRule::name() const {
  return describe(spec_) + " induced on expert " + std::to_string(expert_);
}

bool InducedRule::exact() const { return is_exact(spec_); }

ExtendedReal InducedRule::score(const Distribution& report, std::size_t outcome) const {
  if (report.size() != profile_.outcome_count()) {
    throw DomainError("report has the wrong outcome count");
  }
  return std::visit(
      overloaded{
          [&](const IndependentContract& c) -> ExtendedReal {
            if (c.rule == RuleKind::quadratic) return ExtendedReal::of(quadratic_score(report, outcome));
            return ExtendedReal::numeric(log_score(report, outcome));
          },
          [&](const ZeroSumPairContract&) -> ExtendedReal {
            const auto& other = profile_[1 - expert_];
            return ExtendedReal::of(quadratic_score(report, outcome) - quadratic_score(other, outcome));
          },
          [&](const LeaveOneOutContract& c) -> ExtendedReal {
            std::vector<Rational> rewards;
            leave_one_out_rewards(report.weights(), others_total_, profile_.expert_count(), c.alpha,
                                  rewards);
            return ExtendedReal::of(std::move(rewards.at(outcome)));
          },
      },
      spec_);
}

}  // namespace elicit
