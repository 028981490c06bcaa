#include "elicit/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "elicit/errors.hpp"
#include "elicit/parallel.hpp"
#include "elicit/random.hpp"

namespace elicit {

namespace {

// stream tags keep the child seeds of different sweeps apart
enum : std::uint64_t {
  kBaselineStream = 1,
  kDeviationStream,
  kIdentityStream,
  kWitnessStream,
  kClaim1Stream,
  kVertexStream,
  kProperStream,
  kCollusionStream,
};

Rational random_rational(Rng& rng, std::uint64_t max_numerator, std::uint64_t denominator) {
  Rational r(mpz_class(static_cast<unsigned long>(rng.below(max_numerator + 1))),
             mpz_class(static_cast<unsigned long>(denominator)));
  r.canonicalize();
  return r;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

std::string describe_coalition(const Coalition& c) {
  std::string out = "{";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(c.members()[k] + 1);
  }
  return out + "}";
}

}  // namespace

std::string format_profile(const ReportProfile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.expert_count(); ++i) {
    if (i) out += " ";
    out += "(";
    for (std::size_t j = 0; j < profile.outcome_count(); ++j) {
      if (j) out += ", ";
      out += to_fraction_string(profile[i][j]);
    }
    out += ")";
  }
  return out;
}

FreenessReport freeness_sweep(const FreenessConfig& config) {
  const std::size_t m = config.experts;
  if (m < 2) throw DomainError("freeness sweep needs m >= 2");
  const ContractSpec spec = LeaveOneOutContract{config.alpha, config.permissive};
  require_evaluable(spec, m, config.outcomes);

  std::vector<DeviationChecker> checkers;
  checkers.reserve(config.baselines);
  for (std::size_t b = 0; b < config.baselines; ++b) {
    Rng rng(derive_seed(config.seed, {kBaselineStream, b}));
    checkers.emplace_back(spec, random_profile(rng, m, config.outcomes, config.denominator,
                                               config.interior));
  }

  const std::uint64_t total = config.baselines * config.trials;
  std::mutex mu;
  std::vector<std::pair<std::uint64_t, ArbitrageCertificate>> found;
  parallel_for(total, config.threads, [&](std::uint64_t index) {
    const std::uint64_t b = index / config.trials;
    const std::uint64_t t = index % config.trials;
    Rng rng(derive_seed(config.seed, {kDeviationStream, b, t}));
    const std::size_t size = 2 + static_cast<std::size_t>(t % (m - 1));
    const Coalition coalition = random_coalition(rng, m, size);
    const auto& checker = checkers[b];
    const ReportProfile deviation =
        random_deviation(rng, checker.baseline(), coalition, config.denominator, config.interior);
    auto cert = checker.check(deviation, coalition, ArbitrageKind::dominance);
    if (cert && reverify(spec, *cert)) {
      std::lock_guard lock(mu);
      found.emplace_back(index, std::move(*cert));
    }
  });

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FreenessReport report;
  report.checks = total;
  report.certificates = found.size();
  for (std::size_t k = 0; k < found.size() && k < 3; ++k) {
    report.examples.push_back(std::move(found[k].second));
  }
  return report;
}

IdentityReport identity_sweep(const IdentitySweepConfig& config, bool two_outcome) {
  std::vector<ReportProfile> profiles;
  profiles.reserve(config.profiles);
  for (std::size_t s = 0; s < config.profiles; ++s) {
    Rng rng(derive_seed(config.seed, {kIdentityStream, s}));
    // vary the lattice so profiles mix denominators
    const std::uint64_t denominator = 1 + rng.below(config.denominator);
    profiles.push_back(random_profile(rng, config.experts, config.outcomes,
                                      std::max<std::uint64_t>(denominator, 1)));
  }
  return two_outcome ? two_outcome_constancy(profiles, config.alpha)
                : general_identity_constancy(profiles, config.alpha);
}

WitnessReport witness_sweep(const WitnessConfig& config) {
  const std::size_t m = config.experts;
  if (m < 2) throw DomainError("witness sweep needs m >= 2");
  const ContractSpec spec = LeaveOneOutContract{config.alpha, false};
  require_evaluable(spec, m, config.outcomes);

  std::vector<char> failed(config.deviations, 0);
  std::vector<char> strict(config.deviations, 0);
  std::vector<char> unchanged(config.deviations, 0);
  std::vector<std::string> details(config.deviations);
  parallel_for(config.deviations, config.threads, [&](std::uint64_t t) {
    Rng rng(derive_seed(config.seed, {kWitnessStream, t}));
    const ReportProfile baseline = random_profile(rng, m, config.outcomes, config.denominator);
    const Coalition coalition = random_coalition(rng, m, 2 + static_cast<std::size_t>(t % (m - 1)));
    const ReportProfile deviation = random_deviation(rng, baseline, coalition, config.denominator);
    const HurtingOutcome h = hurting_outcome(spec, baseline, deviation, coalition);
    const bool gained = h.deviation_total > h.baseline_total;
    const bool bad = gained || (h.sums_differ && !h.strict()) ||
                     (!h.sums_differ && h.deviation_total != h.baseline_total);
    strict[t] = h.strict();
    unchanged[t] = !h.sums_differ;
    if (bad) {
      failed[t] = 1;
      details[t] = "P=" + format_profile(baseline) + " Q=" + format_profile(deviation) +
                   " C=" + describe_coalition(coalition) + " j~=" + std::to_string(h.outcome + 1) +
                   " totals " + to_fraction_string(h.baseline_total) + " -> " +
                   to_fraction_string(h.deviation_total);
    }
  });

  WitnessReport report;
  report.deviations = config.deviations;
  for (std::uint64_t t = 0; t < config.deviations; ++t) {
    report.strict += strict[t];
    report.unchanged_sums += unchanged[t];
    if (failed[t]) {
      ++report.failures;
      if (report.counterexamples.size() < 3) report.counterexamples.push_back(details[t]);
    }
  }
  return report;
}

Claim1Report claim1_sweep(const Claim1Config& config) {
  const std::size_t m = config.experts;
  if (m < 2) throw DomainError("claim1 sweep needs m >= 2");
  const ContractSpec spec = LeaveOneOutContract{config.alpha, true};
  Claim1Report report;
  for (std::size_t s = 0; s < config.complements; ++s) {
    Rng rng(derive_seed(config.seed, {kClaim1Stream, s}));
    const ReportProfile profile = random_profile(rng, m, 2, config.denominator);
    const Coalition coalition = random_coalition(rng, m, pick(rng, 2, m));
    const std::size_t j = static_cast<std::size_t>(rng.below(2));

    const CoalitionPolynomial poly = coalition_poly(profile, coalition, j, config.alpha);
    const Rational size = static_cast<unsigned long>(coalition.size());
    for (unsigned k = 0; k <= 4; ++k) {
      const Rational t = size * make_rational(k, 4);
      const Rational direct =
          coalition_total(spec, with_coalition_sum(profile, coalition, j, t), coalition, j);
      ++report.polynomial_checks;
      if (poly(t) != direct) {
        ++report.polynomial_failures;
        if (report.counterexamples.size() < 3) {
          report.counterexamples.push_back("polynomial mismatch at t=" + to_fraction_string(t) +
                                           " P=" + format_profile(profile));
        }
      }
    }

    const MonotonicityResult mono =
        monotonicity_check(spec, profile, coalition, j, config.monotonicity_samples);
    ++report.monotonicity_checks;
    if (mono.expected && mono.verdict != *mono.expected) {
      ++report.monotonicity_failures;
      if (report.counterexamples.size() < 3) {
        report.counterexamples.push_back(
            "expected " + to_string(*mono.expected) + " got " + to_string(mono.verdict) +
            " P=" + format_profile(profile) + " C=" + describe_coalition(coalition) +
            " j=" + std::to_string(j + 1));
      }
    }
  }
  return report;
}

VertexReport vertex_sweep(std::size_t max_experts, std::uint64_t seed, std::size_t samples) {
  VertexReport report;
  for (std::size_t m = 3; m <= max_experts; ++m) {
    const Rational top = static_cast<unsigned long>(m - 1);
    for (std::size_t c = 3; c <= m; ++c) {
      const Rational size = static_cast<unsigned long>(c);
      const Rational room = static_cast<unsigned long>(m - c);
      for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, {kVertexStream, m, c, s}));
        // the first samples pin the extremes of each range
        const Rational comp = s == 0 ? Rational(0)
                              : s == 1 ? room
                                       : Rational(room * random_rational(rng, 1000, 1000));
        const Rational low_d = s == 0 ? Rational(0) : Rational(-random_rational(rng, 10000, 1000));
        const Rational high_d = top + (s == 1 ? Rational(1, 1000000u)
                                              : Rational(random_rational(rng, 9999, 1000) + Rational(1, 1000u)));
        const Rational v_low = parabola_vertex(c, low_d, comp);
        const Rational v_high = parabola_vertex(c, high_d, comp);
        report.checks += 2;
        if (!(sgn(v_low) < 0)) {
          ++report.failures;
          if (report.counterexamples.size() < 3) {
            report.counterexamples.push_back("d=" + to_fraction_string(low_d) + " vertex " +
                                             to_fraction_string(v_low) + " not below 0");
          }
        }
        if (!(v_high > size)) {
          ++report.failures;
          if (report.counterexamples.size() < 3) {
            report.counterexamples.push_back("d=" + to_fraction_string(high_d) + " vertex " +
                                             to_fraction_string(v_high) + " not above |C|");
          }
        }
      }
    }
  }
  return report;
}

double expected_reward_gradient_norm(const ContractSpec& spec, const ReportProfile& profile,
                                     std::size_t expert, double step) {
  const std::size_t m = profile.expert_count();
  const std::size_t n = profile.outcome_count();
  std::vector<std::vector<double>> reports(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) reports[i][j] = to_double(profile[i][j]);
  }
  const std::vector<double> belief = reports[expert];
  auto expected = [&](const std::vector<double>& own) {
    auto trial = reports;
    trial[expert] = own;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += belief[j] * evaluate_numeric(spec, trial, j)[expert];
    return total;
  };
  // tangent directions e_k - e_{n-1}
  double norm2 = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto up = belief, down = belief;
    up[k] += step;
    up[n - 1] -= step;
    down[k] -= step;
    down[n - 1] += step;
    const double g = (expected(up) - expected(down)) / (2.0 * step);
    norm2 += g * g;
  }
  return std::sqrt(norm2);
}

ProperReport properness_sweep(const ProperConfig& config) {
  ProperReport report;
  for (std::size_t c = 0; c < config.configs; ++c) {
    Rng rng(derive_seed(config.seed, {kProperStream, c}));
    const std::size_t m = pick(rng, config.min_experts, config.max_experts);
    const std::size_t n = pick(rng, config.min_outcomes, config.max_outcomes);
    const Rational threshold = validate_alpha(0, m, n).large_threshold;
    Rational alpha;
    switch (rng.below(4)) {
      case 0: alpha = -1; break;
      case 1: alpha = -10; break;
      case 2: alpha = threshold; break;
      default: alpha = threshold + 5; break;
    }
    const ContractSpec spec = LeaveOneOutContract{alpha, false};
    const std::size_t expert = static_cast<std::size_t>(rng.below(m));
    const Distribution belief = random_distribution(rng, n, config.resolution);
    const ReportProfile opponents = random_profile(rng, m, n, 1000);
    const ReportProfile profile = opponents.with_report(expert, belief);

    const ProbeResult probe = properness_probe(InducedRule(spec, profile, expert), belief,
                                               config.resolution);
    ++report.configs;
    if (!probe.unique() || !(probe.maximizers.front() == belief)) {
      ++report.probe_failures;
      if (report.counterexamples.size() < 3) {
        report.counterexamples.push_back("alpha=" + to_fraction_string(alpha) + " expert " +
                                         std::to_string(expert + 1) + " P=" + format_profile(profile) +
                                         " maximizers=" + std::to_string(probe.maximizers.size()));
      }
    }

    const Distribution interior = random_distribution(rng, n, config.resolution, true);
    const double g = expected_reward_gradient_norm(spec, profile.with_report(expert, interior),
                                                   expert, config.step);
    report.max_gradient_norm = std::max(report.max_gradient_norm, g);
  }
  return report;
}

CollusionReport mean_collusion_sweep(std::size_t profiles, std::size_t max_experts,
                                     std::size_t max_outcomes, std::uint64_t seed) {
  const ContractSpec spec = IndependentContract{RuleKind::quadratic};
  CollusionReport report;
  for (std::size_t s = 0; s < profiles; ++s) {
    Rng rng(derive_seed(seed, {kCollusionStream, s}));
    const std::size_t m = pick(rng, 2, max_experts);
    const std::size_t n = pick(rng, 2, max_outcomes);
    std::optional<ReportProfile> profile;
    std::optional<Coalition> coalition;
    // redraw until the coalition disagrees somewhere
    while (true) {
      profile.emplace(random_profile(rng, m, n, 1000));
      coalition.emplace(random_coalition(rng, m, pick(rng, 2, m)));
      const auto members = coalition->members();
      const bool unanimous = std::all_of(members.begin(), members.end(), [&](std::size_t i) {
        return (*profile)[i] == (*profile)[members.front()];
      });
      if (!unanimous) break;
    }
    const ReportProfile deviation = mean_collusion(*profile, *coalition);
    const auto cert = check_dominance(spec, *profile, deviation, *coalition);
    ++report.profiles;
    if (!cert || !reverify(spec, *cert)) {
      ++report.failures;
      if (report.counterexamples.size() < 3) {
        report.counterexamples.push_back("P=" + format_profile(*profile) +
                                         " C=" + describe_coalition(*coalition));
      }
    }
  }
  return report;
}

UniformBeliefExample uniform_belief_example(std::size_t experts, const Rational& alpha) {
  const ContractSpec spec = LeaveOneOutContract{alpha, true};
  const Distribution half(std::vector<Rational>{Rational(1, 2u), Rational(1, 2u)});
  const ReportProfile baseline(std::vector<Distribution>(experts, half));
  const ReportProfile deviation(std::vector<Distribution>(experts, vertex(2, 0)));
  const Coalition everyone = Coalition::everyone(experts);

  UniformBeliefExample ex;
  ex.experts = experts;
  ex.alpha = alpha;
  ex.truthful_reward_first = evaluate(spec, baseline, 0)[0];
  ex.truthful_reward_second = evaluate(spec, baseline, 1)[0];
  ex.deviating_expected_reward =
      (evaluate(spec, deviation, 0)[0] + evaluate(spec, deviation, 1)[0]) / 2;
  ex.expected_certificate = check_expected_arbitrage(spec, baseline, deviation, everyone);
  ex.dominance_certificate = check_dominance(spec, baseline, deviation, everyone);
  return ex;
}

}  // namespace elicit
