#include <gtest/gtest.h>

#include <cmath>

#include "elicit/errors.hpp"
#include "elicit/random.hpp"
#include "elicit/scoring.hpp"
#include "helpers.hpp"

using namespace elicit;
using oracle::q;
using testing_support::dist;

TEST(Quadratic, IntroScores) {
  // rain row 0.28, 0.5, 0.98; no-rain row 0.68, 0.5, -0.62
  const auto p = testing_support::intro();
  const std::vector<Rational> rain{q(7, 25), q(1, 2), q(49, 50)};
  const std::vector<Rational> dry{q(17, 25), q(1, 2), q(-31, 50)};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(quadratic_score(p[i], 0), rain[i]);
    EXPECT_EQ(quadratic_score(p[i], 1), dry[i]);
  }
}

TEST(Quadratic, VertexAndTwoOutcomeForm) {
  EXPECT_EQ(quadratic_score(vertex(3, 1), 1), 1);
  EXPECT_EQ(quadratic_score(vertex(3, 1), 0), -1);
  // 1 - 2(1 - p_j)^2 with two outcomes
  for (long k = 0; k <= 10; ++k) {
    const Rational p = q(k, 10);
    EXPECT_EQ(quadratic_score(dist({p, 1 - p}), 0), 1 - 2 * (1 - p) * (1 - p));
  }
}

TEST(Quadratic, AgreesWithLiteralDefinitionOnRandomPoints) {
  Rng rng(1);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const auto d = random_distribution(rng, n, 997);
    const oracle::Vec v(d.weights().begin(), d.weights().end());
    for (std::size_t j = 0; j < n; ++j) {
      ASSERT_EQ(quadratic_score(d, j), oracle::quadratic(v, j));
      std::vector<double> f;
      for (const auto& w : v) f.push_back(w.get_d());
      EXPECT_NEAR(quadratic_score(std::span<const double>(f), j), oracle::quadratic(v, j).get_d(),
                  1e-12);
    }
  }
  EXPECT_THROW(quadratic_score(vertex(2, 0), 2), IndexError);
}

TEST(Logarithmic, ScoresAndNegativeInfinity) {
  EXPECT_DOUBLE_EQ(log_score(dist({q(1, 4), q(3, 4)}), 1), std::log(0.75));
  EXPECT_TRUE(std::isinf(log_score(vertex(2, 0), 1)));
  LogarithmicRule rule;
  EXPECT_FALSE(rule.exact());
  EXPECT_TRUE(rule.score(vertex(2, 0), 1).is_negative_infinity());
}

TEST(ExpectedScore, SkipsOutcomesWithZeroBelief) {
  LogarithmicRule rule;
  // belief puts nothing on outcome 2, so reporting 0 there costs nothing
  const auto value = expected_score(rule, vertex(2, 0), vertex(2, 0));
  EXPECT_DOUBLE_EQ(value.approx, 0.0);
  QuadraticRule quad;
  const auto b = dist({q(1, 4), q(3, 4)});
  EXPECT_EQ(*expected_score(quad, b, b).exact,
            q(1, 4) * oracle::quadratic({q(1, 4), q(3, 4)}, 0) +
                q(3, 4) * oracle::quadratic({q(1, 4), q(3, 4)}, 1));
  EXPECT_THROW(expected_score(quad, b, vertex(3, 0)), DomainError);
}

TEST(ExtendedReal, ArithmeticAndComparison) {
  const auto a = ExtendedReal::of(q(1, 3));
  const auto b = ExtendedReal::of(q(1, 6));
  EXPECT_EQ(*(a + b).exact, q(1, 2));
  EXPECT_EQ(*(a - b).exact, q(1, 6));
  EXPECT_EQ(compare(a, b), 1);
  EXPECT_EQ(compare(b, a), -1);
  const auto inf = ExtendedReal::numeric(-INFINITY);
  EXPECT_TRUE(inf.is_negative_infinity());
  EXPECT_EQ(compare(inf, b), -1);
  EXPECT_EQ(compare(ExtendedReal::numeric(1.0), ExtendedReal::numeric(1.0 + 1e-12), 1e-9), 0);
}

TEST(Probe, QuadraticIsStrictlyProperOnTheGrid) {
  QuadraticRule rule;
  for (const auto& belief : {dist({q(3, 10), q(7, 10)}), dist({q(1, 5), q(2, 5), q(2, 5)}),
                             dist({0, q(1, 2), 0, q(1, 2)})}) {
    const auto r = properness_probe(rule, belief, 10);
    ASSERT_TRUE(r.unique());
    EXPECT_EQ(r.maximizers.front(), belief);
    EXPECT_EQ(r.evaluated, simplex_lattice_size(belief.size(), 10));
  }
}

TEST(Probe, LogIsProperWithinTolerance) {
  LogarithmicRule rule;
  const auto belief = dist({q(1, 5), q(3, 10), q(1, 2)});
  const auto r = properness_probe(rule, belief, 20);
  ASSERT_TRUE(r.unique());
  EXPECT_EQ(r.maximizers.front(), belief);
}

namespace {
struct Flat final : ScoringRule {
  std::string name() const override { return "flat"; }
  bool exact() const override { return true; }
  ExtendedReal score(const Distribution&, std::size_t) const override {
    return ExtendedReal::of(0);
  }
};
}  // namespace

TEST(Probe, ReportsTiesForAnImproperRule) {
  const auto r = properness_probe(Flat{}, dist({q(1, 2), q(1, 2)}), 4);
  EXPECT_TRUE(r.tie());
  EXPECT_EQ(r.maximizers.size(), 5u);
}
