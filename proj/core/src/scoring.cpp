#include "elicit/scoring.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_outcome(std::size_t n, std::size_t j) {
  if (j >= n) {
    throw IndexError("outcome " + std::to_string(j) + " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

ExtendedReal ExtendedReal::of(Rational value) {
  ExtendedReal r;
  r.approx = to_double(value);
  r.exact = std::move(value);
  return r;
}

ExtendedReal ExtendedReal::numeric(double value) {
  ExtendedReal r;
  r.approx = value;
  return r;
}

bool ExtendedReal::is_negative_infinity() const noexcept {
  return !exact && std::isinf(approx) && approx < 0;
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.exact && b.exact) return ExtendedReal::of(*a.exact + *b.exact);
  return ExtendedReal::numeric(a.approx + b.approx);
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.exact && b.exact) return ExtendedReal::of(*a.exact - *b.exact);
  // -inf - -inf: both sides are equally impossible rewards
  if (a.is_negative_infinity() && b.is_negative_infinity()) return ExtendedReal::numeric(0.0);
  return ExtendedReal::numeric(a.approx - b.approx);
}

ExtendedReal operator*(const Rational& weight, const ExtendedReal& x) {
  if (x.exact) return ExtendedReal::of(weight * *x.exact);
  if (sgn(weight) == 0) return ExtendedReal::numeric(0.0);
  return ExtendedReal::numeric(to_double(weight) * x.approx);
}

int compare(const ExtendedReal& a, const ExtendedReal& b, double tolerance) {
  if (a.exact && b.exact) {
    const int c = cmp(*a.exact, *b.exact);
    return (c > 0) - (c < 0);
  }
  if (a.approx == b.approx) return 0;
  if (std::isinf(a.approx) || std::isinf(b.approx)) return a.approx < b.approx ? -1 : 1;
  if (std::abs(a.approx - b.approx) <= tolerance) return 0;
  return a.approx < b.approx ? -1 : 1;
}

Rational quadratic_score(const Distribution& report, std::size_t j) {
  require_outcome(report.size(), j);
  Rational distance = 0;
  for (std::size_t l = 0; l < report.size(); ++l) {
    const Rational diff = l == j ? Rational(report[l] - 1) : report[l];
    distance += diff * diff;
  }
  return 1 - distance;
}

double quadratic_score(std::span<const double> report, std::size_t j) {
  require_outcome(report.size(), j);
  double distance = 0.0;
  for (std::size_t l = 0; l < report.size(); ++l) {
    const double diff = report[l] - (l == j ? 1.0 : 0.0);
    distance += diff * diff;
  }
  return 1.0 - distance;
}

double log_score(const Distribution& report, std::size_t j) {
  require_outcome(report.size(), j);
  if (sgn(report[j]) == 0) return kNegInf;
  return std::log(to_double(report[j]));
}

ExtendedReal QuadraticRule::score(const Distribution& report, std::size_t outcome) const {
  return ExtendedReal::of(quadratic_score(report, outcome));
}

ExtendedReal LogarithmicRule::score(const Distribution& report, std::size_t outcome) const {
  return ExtendedReal::numeric(log_score(report, outcome));
}

ExtendedReal expected_score(const ScoringRule& rule, const Distribution& belief,
                            const Distribution& report) {
  if (belief.size() != report.size()) {
    throw DomainError("belief has " + std::to_string(belief.size()) + " outcomes but report has " +
                      std::to_string(report.size()));
  }
  ExtendedReal total = rule.exact() ? ExtendedReal::of(0) : ExtendedReal::numeric(0.0);
  for (std::size_t j = 0; j < belief.size(); ++j) {
    if (sgn(belief[j]) == 0) continue;
    total = total + belief[j] * rule.score(report, j);
  }
  return total;
}

ProbeResult properness_probe(const ScoringRule& rule, const Distribution& belief,
                             std::size_t resolution) {
  if (resolution < 1) throw DomainError("probe resolution must be positive");
  ProbeResult result;
  bool have_best = false;
  for (auto& candidate : simplex_lattice(belief.size(), resolution)) {
    ++result.evaluated;
    ExtendedReal value = expected_score(rule, belief, candidate);
    const double tol =
        rule.exact() ? 0.0 : 1e-12 * std::max(1.0, std::abs(value.approx));
    const int c = have_best ? compare(value, result.best, tol) : 1;
    if (c > 0) {
      result.best = std::move(value);
      result.maximizers.clear();
      result.maximizers.push_back(std::move(candidate));
      have_best = true;
    } else if (c == 0) {
      result.maximizers.push_back(std::move(candidate));
    }
  }
  return result;
}

}  // namespace elicit
