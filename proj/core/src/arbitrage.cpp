#include "elicit/arbitrage.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "elicit/errors.hpp"
#include "elicit/parallel.hpp"
#include "elicit/random.hpp"

namespace elicit {

std::string to_string(ArbitrageKind kind) {
  return kind == ArbitrageKind::dominance ? "DOMINANCE" : "EXPECTED";
}

std::string to_string(Exactness exactness) {
  return exactness == Exactness::exact ? "EXACT" : "NUMERIC";
}

namespace {

void require_same_outside(const ReportProfile& baseline, const ReportProfile& deviation,
                          const Coalition& coalition) {
  if (baseline.expert_count() != deviation.expert_count() ||
      baseline.outcome_count() != deviation.outcome_count()) {
    throw InputError("baseline and deviation profiles differ in shape");
  }
  if (coalition.expert_count() != baseline.expert_count()) {
    throw InputError("coalition is over " + std::to_string(coalition.expert_count()) +
                     " experts but the profiles have " + std::to_string(baseline.expert_count()));
  }
  for (std::size_t i = 0; i < baseline.expert_count(); ++i) {
    if (!coalition.contains(i) && !(baseline[i] == deviation[i])) {
      throw InputError("expert " + std::to_string(i + 1) +
                       " is outside the coalition but changes their report");
    }
  }
}

double numeric_difference(double after, double before) {
  if (std::isinf(after) && std::isinf(before) && after == before) return 0.0;
  return after - before;
}

}  // namespace

DeviationChecker::DeviationChecker(ContractSpec spec, ReportProfile baseline)
    : spec_(std::move(spec)), baseline_(std::move(baseline)) {
  std::vector<std::size_t> everyone(baseline_.expert_count());
  for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
  if (is_exact(spec_)) {
    exact_rewards_ = member_rewards(spec_, baseline_, everyone);
  } else {
    numeric_rewards_ = member_rewards_numeric(spec_, baseline_, everyone);
  }
}

std::optional<ArbitrageCertificate> DeviationChecker::check(const ReportProfile& deviation,
                                                            const Coalition& coalition,
                                                            ArbitrageKind kind) const {
  require_same_outside(baseline_, deviation, coalition);
  const std::size_t n = baseline_.outcome_count();
  const auto members = coalition.members();

  if (is_exact(spec_)) {
    const auto after = member_rewards(spec_, deviation, members);
    std::vector<Rational> before_total(n, Rational(0));
    std::vector<Rational> after_total(n, Rational(0));
    std::vector<Rational> delta(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < members.size(); ++k) {
        before_total[j] += exact_rewards_[members[k]][j];
        after_total[j] += after[k][j];
      }
      delta[j] = after_total[j] - before_total[j];
    }
    std::vector<Rational> gains(members.size(), Rational(0));
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) gains[k] += baseline_[members[k]][j] * delta[j];
    }
    const std::vector<Rational>& judged = kind == ArbitrageKind::dominance ? delta : gains;
    bool strict = false;
    for (const auto& v : judged) {
      if (sgn(v) < 0) return std::nullopt;
      if (sgn(v) > 0) strict = true;
    }
    if (!strict) return std::nullopt;

    ArbitrageCertificate cert{kind, Exactness::exact, baseline_, deviation, coalition, {}, {}, {}, {}};
    for (std::size_t j = 0; j < n; ++j) {
      cert.baseline_totals.push_back(ExtendedReal::of(before_total[j]));
      cert.deviation_totals.push_back(ExtendedReal::of(after_total[j]));
      cert.deltas.push_back(ExtendedReal::of(delta[j]));
    }
    for (auto& g : gains) cert.expected_gains.push_back(ExtendedReal::of(std::move(g)));
    return cert;
  }

  const auto after = member_rewards_numeric(spec_, deviation, members);
  std::vector<double> before_total(n, 0.0), after_total(n, 0.0), delta(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < members.size(); ++k) {
      before_total[j] += numeric_rewards_[members[k]][j];
      after_total[j] += after[k][j];
    }
    delta[j] = numeric_difference(after_total[j], before_total[j]);
  }
  std::vector<double> gains(members.size(), 0.0);
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double belief = to_double(baseline_[members[k]][j]);
      if (belief > 0.0) gains[k] += belief * delta[j];
    }
  }
  const std::vector<double>& judged = kind == ArbitrageKind::dominance ? delta : gains;
  bool strict = false;
  for (double v : judged) {
    if (std::isnan(v) || v < -kNumericTolerance) return std::nullopt;
    if (v > kNumericTolerance) strict = true;
  }
  if (!strict) return std::nullopt;

  ArbitrageCertificate cert{kind, Exactness::numeric, baseline_, deviation, coalition, {}, {}, {}, {}};
  for (std::size_t j = 0; j < n; ++j) {
    cert.baseline_totals.push_back(ExtendedReal::numeric(before_total[j]));
    cert.deviation_totals.push_back(ExtendedReal::numeric(after_total[j]));
    cert.deltas.push_back(ExtendedReal::numeric(delta[j]));
  }
  for (double g : gains) cert.expected_gains.push_back(ExtendedReal::numeric(g));
  return cert;
}

std::optional<ArbitrageCertificate> check_dominance(const ContractSpec& spec,
                                                    const ReportProfile& baseline,
                                                    const ReportProfile& deviation,
                                                    const Coalition& coalition) {
  require_same_outside(baseline, deviation, coalition);
  return DeviationChecker(spec, baseline).check(deviation, coalition, ArbitrageKind::dominance);
}

std::optional<ArbitrageCertificate> check_expected_arbitrage(const ContractSpec& spec,
                                                             const ReportProfile& baseline,
                                                             const ReportProfile& deviation,
                                                             const Coalition& coalition) {
  require_same_outside(baseline, deviation, coalition);
  return DeviationChecker(spec, baseline).check(deviation, coalition, ArbitrageKind::expected);
}

bool reverify(const ContractSpec& spec, const ArbitrageCertificate& cert) {
  const std::size_t n = cert.baseline.outcome_count();
  const auto members = cert.coalition.members();
  if (cert.exactness == Exactness::numeric) {
    const auto fresh = cert.kind == ArbitrageKind::dominance
                           ? check_dominance(spec, cert.baseline, cert.deviation, cert.coalition)
                           : check_expected_arbitrage(spec, cert.baseline, cert.deviation, cert.coalition);
    return fresh.has_value();
  }
  // exact: rebuild totals from the full reward vectors, not the fast path
  std::vector<Rational> delta(n);
  for (std::size_t j = 0; j < n; ++j) {
    delta[j] = coalition_total(spec, cert.deviation, cert.coalition, j) -
               coalition_total(spec, cert.baseline, cert.coalition, j);
    if (!cert.deltas[j].exact || *cert.deltas[j].exact != delta[j]) return false;
  }
  std::vector<Rational> judged;
  if (cert.kind == ArbitrageKind::dominance) {
    judged = delta;
  } else {
    for (std::size_t i : members) {
      Rational gain = 0;
      for (std::size_t j = 0; j < n; ++j) gain += cert.baseline[i][j] * delta[j];
      judged.push_back(gain);
    }
  }
  bool strict = false;
  for (const auto& v : judged) {
    if (sgn(v) < 0) return false;
    if (sgn(v) > 0) strict = true;
  }
  return strict;
}

ReportProfile mean_collusion(const ReportProfile& profile, const Coalition& coalition) {
  if (coalition.size() < 2) throw DomainError("mean collusion needs a coalition of at least 2");
  const Distribution mean = coalition_mean(profile, coalition);
  std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
  for (std::size_t i : coalition.members()) reports[i] = mean;
  return ReportProfile(std::move(reports));
}

bool ArbitrageInterval::contains(const Rational& x) const {
  return !empty && compare(lower, x) <= 0 && compare(upper, x) >= 0;
}

ArbitrageInterval uniform_report_arbitrage_interval(const ContractSpec& spec,
                                                    const ReportProfile& profile,
                                                    const Coalition& coalition,
                                                    std::size_t outcome) {
  const auto* independent = std::get_if<IndependentContract>(&spec);
  if (independent == nullptr || independent->rule != RuleKind::quadratic) {
    throw DomainError("the uniform-report interval is only defined for independent-quadratic");
  }
  if (profile.outcome_count() != 2) throw DomainError("the uniform-report interval needs n = 2");
  if (coalition.size() < 2) throw DomainError("the uniform-report interval needs |C| >= 2");
  if (outcome > 1) throw IndexError("outcome " + std::to_string(outcome) + " out of range for n=2");

  // All members report x on `outcome`. Coalition total under that outcome is
  // k(1 - 2(1-x)^2) >= T_o  <=>  x >= 1 - sqrt((k - T_o) / 2k); under the
  // other outcome k(1 - 2x^2) >= T_other  <=>  x <= sqrt((k - T_other) / 2k).
  const Rational k = static_cast<unsigned long>(coalition.size());
  const Rational t_here = coalition_total(spec, profile, coalition, outcome);
  const Rational t_other = coalition_total(spec, profile, coalition, 1 - outcome);

  ArbitrageInterval interval;
  interval.outcome = outcome;
  interval.lower = QuadraticSurd(1, -1, (k - t_here) / (2 * k));
  interval.upper = QuadraticSurd(0, 1, (k - t_other) / (2 * k));
  // endpoints coincide -> both constraints bind, no strict gain anywhere
  interval.empty = compare(interval.lower, interval.upper) >= 0;
  return interval;
}

SearchResult search_arbitrage(const ContractSpec& spec, const ReportProfile& profile,
                              const Coalition& coalition, const SearchStrategy& strategy,
                              const SearchOptions& options) {
  const std::size_t n = profile.outcome_count();
  require_evaluable(spec, profile.expert_count(), n);
  if (coalition.expert_count() != profile.expert_count()) {
    throw DomainError("coalition does not match the profile's expert count");
  }
  const auto members = coalition.members();

  SearchResult result;
  std::uint64_t count = 0;
  std::function<ReportProfile(std::uint64_t)> candidate;
  std::vector<Distribution> lattice;

  if (const auto* grid = std::get_if<GridSearch>(&strategy)) {
    if (grid->resolution < 2) throw DomainError("grid search needs resolution >= 2");
    lattice = simplex_lattice(n, grid->resolution, options.interior);
    const std::uint64_t points = lattice.size();
    if (has_coalition_sum_sufficiency(spec)) {
      result.used_coalition_sums = true;
      count = points;
      candidate = [&](std::uint64_t index) {
        std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
        for (std::size_t i : members) reports[i] = lattice[index];
        return ReportProfile(std::move(reports));
      };
    } else {
      count = 1;
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (points != 0 && count > options.max_candidates / points) {
          throw ConfigurationError("grid search over " + std::to_string(members.size()) +
                                   " members exceeds the candidate budget of " +
                                   std::to_string(options.max_candidates));
        }
        count *= points;
      }
      candidate = [&, points](std::uint64_t index) {
        std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
        // mixed radix, first member most significant
        for (std::size_t k = members.size(); k-- > 0;) {
          reports[members[k]] = lattice[index % points];
          index /= points;
        }
        return ReportProfile(std::move(reports));
      };
    }
  } else {
    const auto& random = std::get<RandomSearch>(strategy);
    if (random.trials < 1) throw DomainError("random search needs at least one trial");
    count = random.trials;
    candidate = [&, random](std::uint64_t trial) {
      Rng rng(derive_seed(random.seed, {trial}));
      return random_deviation(rng, profile, coalition, random.denominator, options.interior);
    };
  }

  const DeviationChecker checker(spec, profile);
  auto hit = first_hit<ArbitrageCertificate>(count, options.threads, [&](std::uint64_t i) {
    return checker.check(candidate(i), coalition, options.kind);
  });
  if (hit) {
    result.candidates = hit->first + 1;
    result.certificate = std::move(hit->second);
  } else {
    result.candidates = count;
  }
  return result;
}

}  // namespace elicit
