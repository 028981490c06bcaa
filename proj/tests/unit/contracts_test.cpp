#include <gtest/gtest.h>

#include "elicit/contracts.hpp"
#include "elicit/errors.hpp"
#include "elicit/random.hpp"
#include "helpers.hpp"

using namespace elicit;
using oracle::q;
using testing_support::dist;
using testing_support::rows;
using testing_support::uniform;

namespace {
const Distribution half = dist({q(1, 2), q(1, 2)});
}

TEST(LeaveOneOut, WorkedRewardsAtAlphaSixteen) {
  const ContractSpec spec = LeaveOneOutContract{16};
  for (std::size_t j = 0; j < 2; ++j) {
    for (const auto& r : evaluate(spec, uniform(3, half), j).rewards) EXPECT_EQ(r, q(13, 2));
  }
  const auto vertex_profile = uniform(3, vertex(2, 0));
  for (const auto& r : evaluate(spec, vertex_profile, 0).rewards) EXPECT_EQ(r, 13);
  for (const auto& r : evaluate(spec, vertex_profile, 1).rewards) EXPECT_EQ(r, 3);
}

TEST(LeaveOneOut, MatchesLiteralOracleOnRandomProfiles) {
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 2 + static_cast<std::size_t>(k % 4);
    const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    const Rational alpha = q(static_cast<long>(rng.below(200)) - 100, 3);
    const auto p = random_profile(rng, m, n, 60);
    const ContractSpec spec = LeaveOneOutContract{alpha, true};
    for (std::size_t j = 0; j < n; ++j) {
      ASSERT_EQ(evaluate(spec, p, j).rewards, oracle::leave_one_out(rows(p), alpha, j));
    }
  }
}

TEST(LeaveOneOut, FastPathAgreesWithLiteralEvaluation) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 2 + static_cast<std::size_t>(k % 4);
    const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    const auto p = random_profile(rng, m, n, 1000);
    const ContractSpec spec = LeaveOneOutContract{q(-7, 2), false};
    const Coalition c = random_coalition(rng, m, 1 + static_cast<std::size_t>(rng.below(m)));
    const auto fast = member_rewards(spec, p, c.members());
    const auto totals = coalition_totals(spec, p, c);
    for (std::size_t j = 0; j < n; ++j) {
      const auto literal = evaluate(spec, p, j);
      for (std::size_t t = 0; t < c.size(); ++t) {
        ASSERT_EQ(fast[t][j], literal[c.members()[t]]);
      }
      ASSERT_EQ(*totals[j].exact, coalition_total(spec, p, c, j));
      const auto numeric = evaluate_numeric(spec, p, j);
      for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(numeric[i], literal[i].get_d(), 1e-9);
    }
  }
}

TEST(ZeroSumPair, DifferenceOfScoresAndEqualToAlphaZeroForTwo) {
  const ContractSpec pair = ZeroSumPairContract{};
  const ContractSpec loo = LeaveOneOutContract{0, true};
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto p = random_profile(rng, 2, 3, 40);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto r = evaluate(pair, p, j);
      const auto o = oracle::independent(rows(p), j);
      EXPECT_EQ(r[0], o[0] - o[1]);
      EXPECT_EQ(r[0] + r[1], 0);
      EXPECT_EQ(r.rewards, evaluate(loo, p, j).rewards);
    }
  }
  EXPECT_THROW(require_evaluable(pair, 3, 2), DomainError);
}

TEST(Independent, QuadraticAndLog) {
  const auto p = testing_support::intro();
  const ContractSpec quad = IndependentContract{RuleKind::quadratic};
  EXPECT_EQ(coalition_total(quad, p, Coalition::everyone(3), 0), q(44, 25));
  EXPECT_EQ(coalition_total(quad, p, Coalition::everyone(3), 1), q(14, 25));
  const ContractSpec log = IndependentContract{RuleKind::logarithmic};
  EXPECT_FALSE(is_exact(log));
  EXPECT_THROW(evaluate(log, p, 0), DomainError);
  EXPECT_NEAR(evaluate_numeric(log, p, 0)[2], std::log(0.9), 1e-15);
  const auto totals = coalition_totals(log, p, Coalition({0, 1}, 3));
  EXPECT_FALSE(totals[0].is_exact());
  EXPECT_NEAR(totals[0].approx, std::log(0.4) + std::log(0.5), 1e-12);
}

TEST(Alpha, RegimesAndThresholds) {
  auto v = validate_alpha(-1, 3, 2);
  EXPECT_EQ(v.regime, AlphaRegime::valid_negative);
  EXPECT_EQ(v.large_threshold, 16);
  EXPECT_EQ(validate_alpha(16, 3, 2).regime, AlphaRegime::valid_large);
  EXPECT_EQ(validate_alpha(q(31, 2), 3, 2).regime, AlphaRegime::invalid);
  EXPECT_EQ(validate_alpha(0, 3, 2).regime, AlphaRegime::invalid);
  EXPECT_EQ(validate_alpha(0, 4, 3).large_threshold, 54);
  // d = m - 1 - alpha / (4(m-1)) with two outcomes, m - 1 - alpha / (2(m-1)) in general
  EXPECT_EQ(validate_alpha(16, 3, 2).d_two_outcome, 0);
  EXPECT_EQ(validate_alpha(-8, 3, 2).d_two_outcome, 3);
  EXPECT_EQ(validate_alpha(16, 3, 2).d_general, -2);
  EXPECT_EQ(to_string(AlphaRegime::valid_large), "VALID_LARGE");
  EXPECT_THROW(validate_alpha(1, 1, 2), DomainError);
}

TEST(Alpha, InvalidAlphaNeedsPermissive) {
  EXPECT_THROW(require_evaluable(LeaveOneOutContract{1}, 3, 2), ConfigurationError);
  EXPECT_NO_THROW(require_evaluable(LeaveOneOutContract{1, true}, 3, 2));
  EXPECT_THROW(require_evaluable(LeaveOneOutContract{-1}, 1, 2), DomainError);
  EXPECT_EQ(describe(LeaveOneOutContract{16}), "nr(alpha=16)");
}

TEST(InducedRule, ScoresAreTheExpertsRewards) {
  Rng rng(6);
  const auto p = random_profile(rng, 4, 3, 100);
  const ContractSpec spec = LeaveOneOutContract{-3};
  const InducedRule rule(spec, p, 2);
  EXPECT_TRUE(rule.exact());
  const auto report = random_distribution(rng, 3, 100);
  const auto moved = p.with_report(2, report);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(*rule.score(report, j).exact, evaluate(spec, moved, j)[2]);
  }
}
