#include <gtest/gtest.h>

#include "elicit/sweeps.hpp"
#include "helpers.hpp"

using namespace elicit;
using oracle::q;

TEST(Sweeps, FreenessIsDeterministicAndClean) {
  FreenessConfig cfg;
  cfg.experts = 4;
  cfg.outcomes = 3;
  cfg.alpha = -10;
  cfg.baselines = 3;
  cfg.trials = 300;
  cfg.threads = 1;
  const auto a = freeness_sweep(cfg);
  cfg.threads = 3;
  const auto b = freeness_sweep(cfg);
  EXPECT_EQ(a.checks, 900u);
  EXPECT_EQ(a.certificates, 0u);
  EXPECT_EQ(b.certificates, 0u);
}

TEST(Sweeps, AlphaZeroWithTwoExpertsIsStillFree) {
  // alpha = 0 with two experts is the zero-sum pair: still arbitrage-free
  FreenessConfig cfg;
  cfg.experts = 2;
  cfg.outcomes = 2;
  cfg.alpha = 0;
  cfg.permissive = true;
  cfg.baselines = 2;
  cfg.trials = 200;
  EXPECT_EQ(freeness_sweep(cfg).certificates, 0u);
}

TEST(Sweeps, IdentitiesWitnessClaim1AndVertex) {
  IdentitySweepConfig id;
  id.experts = 3;
  id.outcomes = 2;
  id.alpha = 16;
  id.profiles = 50;
  EXPECT_TRUE(identity_sweep(id, true).pass());
  EXPECT_TRUE(identity_sweep(id, false).pass());

  WitnessConfig w;
  w.experts = 4;
  w.outcomes = 3;
  w.alpha = 54;
  w.deviations = 300;
  const auto wr = witness_sweep(w);
  EXPECT_EQ(wr.failures, 0u);
  EXPECT_EQ(wr.deviations, 300u);
  EXPECT_GT(wr.strict, 0u);

  Claim1Config c;
  c.experts = 4;
  c.alpha = -1;
  c.complements = 20;
  const auto cr = claim1_sweep(c);
  EXPECT_EQ(cr.polynomial_failures, 0u);
  EXPECT_EQ(cr.monotonicity_failures, 0u);
  EXPECT_EQ(cr.polynomial_checks, 100u);

  const auto v = vertex_sweep(6, 1, 10);
  EXPECT_EQ(v.failures, 0u);
  EXPECT_GT(v.checks, 0u);
}

TEST(Sweeps, PropernessAndCollusion) {
  ProperConfig p;
  p.configs = 6;
  p.resolution = 20;
  p.max_outcomes = 3;
  const auto pr = properness_sweep(p);
  EXPECT_EQ(pr.probe_failures, 0u);
  EXPECT_LT(pr.max_gradient_norm, 1e-6);

  const auto col = mean_collusion_sweep(50, 5, 4, 3);
  EXPECT_EQ(col.profiles, 50u);
  EXPECT_EQ(col.failures, 0u);
}

TEST(Sweeps, GradientVanishesAtTheTruthfulReport) {
  const auto p = testing_support::intro();
  for (const ContractSpec& spec : {ContractSpec{LeaveOneOutContract{-1}},
                                   ContractSpec{IndependentContract{RuleKind::quadratic}}}) {
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LT(expected_reward_gradient_norm(spec, p, i, 1e-6), 1e-6);
      // expected reward is quadratic in the report, so a coarse step is exact too
      EXPECT_LT(expected_reward_gradient_norm(spec, p, i, 1e-2), 1e-9);
    }
  }
}

TEST(Sweeps, UniformBeliefExample) {
  const auto ex = uniform_belief_example(3, 16);
  EXPECT_EQ(ex.truthful_reward_first, q(13, 2));
  EXPECT_EQ(ex.truthful_reward_second, q(13, 2));
  EXPECT_EQ(ex.deviating_expected_reward, 8);
  EXPECT_TRUE(ex.expected_certificate);
  EXPECT_FALSE(ex.dominance_certificate);
  const auto two = uniform_belief_example(2, -1);
  EXPECT_FALSE(two.expected_certificate);
  EXPECT_EQ(format_profile(testing_support::intro()), "(2/5, 3/5) (1/2, 1/2) (9/10, 1/10)");
}
