#include <gtest/gtest.h>

#include "elicit/errors.hpp"
#include "elicit/random.hpp"
#include "elicit/verification.hpp"
#include "helpers.hpp"

using namespace elicit;
using oracle::q;
using testing_support::dist;
using testing_support::rows;
using testing_support::uniform;

namespace {

std::vector<ReportProfile> random_profiles(std::uint64_t seed, std::size_t count, std::size_t m,
                                           std::size_t n) {
  Rng rng(seed);
  std::vector<ReportProfile> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_profile(rng, m, n, 1000));
  return out;
}

}  // namespace

TEST(TwoOutcomeIdentity, ResidualIsConstantAcrossProfiles) {
  const auto profiles = random_profiles(1, 100, 3, 2);
  const auto report = two_outcome_constancy(profiles, -4);
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.sample_count, 100u * 3 * 2);
  EXPECT_EQ(two_outcome_residual(profiles[0], 0, 0, -4) - two_outcome_residual(profiles[1], 2, 1, -4), 0);
}

TEST(TwoOutcomeIdentity, TwoExpertsAlphaZeroAgainstDirectEvaluation) {
  // d = 1 so the product is 2(S - 2)(S - 2 p_1 + 0)
  Rng rng(2);
  std::optional<Rational> constant;
  for (int k = 0; k < 50; ++k) {
    const auto p = random_profile(rng, 2, 2, 500);
    const auto r = rows(p);
    for (std::size_t j = 0; j < 2; ++j) {
      const Rational S = r[0][j] + r[1][j];
      const Rational direct = oracle::leave_one_out(r, 0, j)[0] - 2 * (S - 2) * (S - 2 * r[0][j]);
      EXPECT_EQ(two_outcome_residual(p, 0, j, 0), direct);
      if (!constant) constant = direct;
      EXPECT_EQ(direct, *constant);
    }
  }
}

TEST(TwoOutcomeIdentity, NeedsTwoOutcomes) {
  const auto three = uniform(3, dist({q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_THROW(two_outcome_residual(three, 0, 0, 1), DomainError);
}

TEST(GeneralIdentity, ConstantAndIndependentOfTheExpert) {
  const auto profiles = random_profiles(3, 100, 4, 3);
  EXPECT_TRUE(general_identity_constancy(profiles, 54).pass());
  for (const auto& p : profiles) {
    EXPECT_EQ(general_identity_residual(p, 0, 1, 54), general_identity_residual(p, 1, 1, 54));
  }
  EXPECT_EQ(general_identity_residual(profiles[0], 0, 0, 54) -
                general_identity_residual(profiles[1], 3, 2, 54),
            0);
}

TEST(GeneralIdentity, DiffersFromTwoOutcomeFormByAConstantWhenTwoOutcomes) {
  const auto profiles = random_profiles(4, 100, 4, 2);
  const Rational alpha = q(-5, 3);
  const Rational gap = general_identity_residual(profiles[0], 0, 0, alpha) -
                       two_outcome_residual(profiles[0], 0, 0, alpha);
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_EQ(general_identity_residual(p, i, j, alpha) - two_outcome_residual(p, i, j, alpha), gap);
      }
    }
  }
}

TEST(CoalitionPolynomial, Coefficients) {
  Rng rng(6);
  const auto p = random_profile(rng, 4, 2, 100);
  EXPECT_EQ(coalition_poly(p, Coalition({0, 3}, 4), 0, 5).quadratic, 0);
  // m = 3, alpha = 16 means d = 0; with everyone in C the complement sum is 0
  const auto all = coalition_poly(uniform(3, dist({q(1, 2), q(1, 2)})), Coalition::everyone(3), 0, 16);
  EXPECT_EQ(all.quadratic, 2);
  EXPECT_EQ(all.linear, 4);
  const auto three = uniform(3, dist({q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_THROW(coalition_poly(three, Coalition::everyone(3), 0, 16), DomainError);
}

TEST(CoalitionPolynomial, InterpolatesDirectEvaluation) {
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 2 + static_cast<std::size_t>(k % 4);
    const auto p = random_profile(rng, m, 2, 1000);
    const auto c = random_coalition(rng, m, 2 + static_cast<std::size_t>(rng.below(m - 1)));
    const Rational alpha = q(static_cast<long>(rng.below(100)) - 50, 7);
    const std::size_t j = static_cast<std::size_t>(rng.below(2));
    const auto poly = coalition_poly(p, c, j, alpha);
    const std::vector<std::size_t> members(c.members().begin(), c.members().end());
    for (long t = 0; t <= 4; ++t) {
      const Rational sum = Rational(static_cast<long>(c.size())) * q(t, 4);
      const auto moved = with_coalition_sum(p, c, j, sum);
      EXPECT_EQ(coalition_sum(moved, c, j), sum);
      EXPECT_EQ(poly(sum), oracle::total(oracle::leave_one_out(rows(moved), alpha, j), members));
    }
  }
}

TEST(Reconstruction, EqualSplitAndErrors) {
  const auto p = testing_support::intro();
  const Coalition c({0, 2}, 3);
  const auto split = equal_split(p, c, std::vector<Rational>{q(1, 2), q(3, 2)});
  EXPECT_EQ(split[0], dist({q(1, 4), q(3, 4)}));
  EXPECT_EQ(split[2], dist({q(1, 4), q(3, 4)}));
  EXPECT_EQ(split[1], p[1]);
  EXPECT_THROW(equal_split(p, c, std::vector<Rational>{q(1, 2), q(1, 2)}), DomainError);
  EXPECT_THROW(equal_split(p, c, std::vector<Rational>{q(-1, 2), q(5, 2)}), DomainError);
  EXPECT_THROW(with_coalition_sum(p, c, 0, 3), DomainError);
}

TEST(Vertex, FormulaAndPreconditions) {
  EXPECT_EQ(parabola_vertex(3, 0, 0), -1);
  EXPECT_EQ(parabola_vertex(4, 5, 1), (3 * (5 - 1) - 1) / Rational(2));
  EXPECT_THROW(parabola_vertex(2, 0, 0), DomainError);
}

TEST(Monotonicity, Regimes) {
  Rng rng(8);
  const ContractSpec up = LeaveOneOutContract{16};
  const ContractSpec down = LeaveOneOutContract{-8};
  for (int k = 0; k < 20; ++k) {
    const auto p = random_profile(rng, 3, 2, 100);
    const Coalition c({0, 1}, 3);
    EXPECT_EQ(monotonicity_check(up, p, c, 0, 9).verdict, Monotonicity::increasing);
    EXPECT_EQ(monotonicity_check(down, p, c, 1, 9).verdict, Monotonicity::decreasing);
  }
  EXPECT_EQ(to_string(Monotonicity::violation), "VIOLATION");
}

TEST(Monotonicity, AlphaZeroPlateau) {
  // expert 3 certain of outcome 2: the coalition's outcome-2 total is flat
  const ContractSpec spec = LeaveOneOutContract{0, true};
  const auto p = testing_support::profile({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}, {0, 1}});
  const auto r = monotonicity_check(spec, p, Coalition({0, 1}, 3), 1, 5);
  EXPECT_FALSE(r.expected);
  EXPECT_EQ(r.verdict, Monotonicity::violation);
  ASSERT_TRUE(r.offending_totals);
  EXPECT_EQ(r.offending_totals->first, r.offending_totals->second);
  EXPECT_THROW(monotonicity_check(spec, p, Coalition({0}, 3), 1, 5), DomainError);
}

TEST(HurtingOutcome, WorkedCaseAndZeroDeviation) {
  const ContractSpec spec = LeaveOneOutContract{16};
  const auto base = uniform(3, dist({q(1, 2), q(1, 2)}));
  const auto h = hurting_outcome(spec, base, uniform(3, vertex(2, 0)), Coalition::everyone(3));
  EXPECT_EQ(h.outcome, 1u);
  EXPECT_EQ(h.baseline_total, q(39, 2));
  EXPECT_EQ(h.deviation_total, 9);
  EXPECT_TRUE(h.strict());
  const auto same = hurting_outcome(spec, base, base, Coalition::everyone(3));
  EXPECT_FALSE(same.sums_differ);
  EXPECT_EQ(same.baseline_total, same.deviation_total);
}

TEST(HurtingOutcome, HoldsAgainstPerOutcomeOracle) {
  Rng rng(10);
  const ContractSpec spec = LeaveOneOutContract{-2};
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 2 + static_cast<std::size_t>(k % 4);
    const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    const auto base = random_profile(rng, m, n, 100);
    const auto c = random_coalition(rng, m, 2 + static_cast<std::size_t>(rng.below(m - 1)));
    const auto dev = random_deviation(rng, base, c, 100);
    const auto h = hurting_outcome(spec, base, dev, c);
    const std::vector<std::size_t> members(c.members().begin(), c.members().end());
    const Rational before = oracle::total(oracle::leave_one_out(rows(base), -2, h.outcome), members);
    const Rational after = oracle::total(oracle::leave_one_out(rows(dev), -2, h.outcome), members);
    EXPECT_EQ(before, h.baseline_total);
    EXPECT_EQ(after, h.deviation_total);
    EXPECT_LE(after, before);
    if (h.sums_differ) {
      EXPECT_LT(after, before);
    }
  }
}

TEST(HurtingOutcome, Errors) {
  const auto base = uniform(3, dist({q(1, 2), q(1, 2)}));
  EXPECT_THROW(hurting_outcome(LeaveOneOutContract{1, true}, base, base, Coalition::everyone(3)),
               DomainError);
  EXPECT_THROW(hurting_outcome(LeaveOneOutContract{-1}, base, base.with_report(2, vertex(2, 0)),
                               Coalition({0, 1}, 3)),
               InputError);
  EXPECT_THROW(hurting_outcome(IndependentContract{}, base, base, Coalition::everyone(3)),
               DomainError);
  EXPECT_THROW(hurting_outcome(LeaveOneOutContract{-1}, base, base, Coalition({0}, 3)), DomainError);
}
