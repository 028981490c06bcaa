#pragma once

#include <string>

#include "elicit/rational.hpp"

namespace elicit {

/// The real number offset + coefficient * sqrt(radicand), radicand >= 0.
/// Perfect-square radicands are folded into the offset on construction.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational offset, Rational coefficient, Rational radicand);

  static QuadraticSurd rational(Rational value) { return {std::move(value), 0, 0}; }

  const Rational& offset() const noexcept { return offset_; }
  const Rational& coefficient() const noexcept { return coefficient_; }
  const Rational& radicand() const noexcept { return radicand_; }
  bool is_rational() const noexcept { return sgn(coefficient_) == 0; }

  double to_double() const;

  /// "1 - sqrt(31/150)", "sqrt(61/150)", "3/5".
  std::string to_string() const;

 private:
  Rational offset_ = 0;
  Rational coefficient_ = 0;
  Rational radicand_ = 0;
};

/// Exact three-way comparison (-1, 0, 1).
int compare(const QuadraticSurd& a, const QuadraticSurd& b);
int compare(const QuadraticSurd& a, const Rational& b);

/// Exact rational square root when `value` is a perfect square.
bool exact_sqrt(const Rational& value, Rational& root);

}  // namespace elicit
