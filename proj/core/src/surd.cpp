#include "elicit/surd.hpp"

#include <cmath>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

int sign_of(const Rational& x) {
  const int s = sgn(x);
  return (s > 0) - (s < 0);
}

// sign(a + b * sqrt(r)), r >= 0
int sign_single(const Rational& a, const Rational& b, const Rational& r) {
  const int sa = sign_of(a);
  const int sb = sgn(r) == 0 ? 0 : sign_of(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int c = cmp(a * a, b * b * r);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

// sign(a + b * sqrt(r) + c * sqrt(s)), r, s >= 0
int sign_double(const Rational& a, const Rational& b, const Rational& r, const Rational& c,
                const Rational& s) {
  const int su = sgn(r) == 0 ? 0 : sign_of(b);
  const int sv = sgn(s) == 0 ? 0 : sign_of(c);
  if (su == 0) return sign_single(a, c, s);
  if (sv == 0) return sign_single(a, b, r);
  // sign of w = u + v
  int sw;
  if (su == sv) {
    sw = su;
  } else {
    const int k = cmp(b * b * r, c * c * s);
    sw = k == 0 ? 0 : (k > 0 ? su : sv);
  }
  const int sa = sign_of(a);
  if (sw == 0) return sa;
  if (sa == 0 || sa == sw) return sw;
  // opposite signs: compare a^2 with w^2 = b^2 r + c^2 s + 2bc sqrt(rs)
  const int k = sign_single(a * a - b * b * r - c * c * s, -2 * b * c, r * s);
  if (k == 0) return 0;
  return k > 0 ? sa : sw;
}

}  // namespace

bool exact_sqrt(const Rational& value, Rational& root) {
  if (sgn(value) < 0) return false;
  if (!mpz_perfect_square_p(value.get_num_mpz_t()) || !mpz_perfect_square_p(value.get_den_mpz_t())) {
    return false;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), value.get_den_mpz_t());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

QuadraticSurd::QuadraticSurd(Rational offset, Rational coefficient, Rational radicand)
    : offset_(std::move(offset)), coefficient_(std::move(coefficient)), radicand_(std::move(radicand)) {
  if (sgn(radicand_) < 0) throw DomainError("negative radicand " + to_fraction_string(radicand_));
  Rational root;
  if (sgn(coefficient_) == 0 || exact_sqrt(radicand_, root)) {
    if (sgn(coefficient_) != 0) offset_ += coefficient_ * root;
    coefficient_ = 0;
    radicand_ = 0;
  }
}

double QuadraticSurd::to_double() const {
  return elicit::to_double(offset_) + elicit::to_double(coefficient_) * std::sqrt(elicit::to_double(radicand_));
}

std::string QuadraticSurd::to_string() const {
  if (is_rational()) return to_fraction_string(offset_);
  std::string out;
  const bool negative = sgn(coefficient_) < 0;
  const Rational magnitude = negative ? Rational(-coefficient_) : coefficient_;
  if (sgn(offset_) != 0) {
    out = to_fraction_string(offset_) + (negative ? " - " : " + ");
  } else if (negative) {
    out = "-";
  }
  if (magnitude != 1) out += to_fraction_string(magnitude) + "*";
  out += "sqrt(" + to_fraction_string(radicand_) + ")";
  return out;
}

int compare(const QuadraticSurd& a, const QuadraticSurd& b) {
  return sign_double(a.offset() - b.offset(), a.coefficient(), a.radicand(), -b.coefficient(),
                     b.radicand());
}

int compare(const QuadraticSurd& a, const Rational& b) {
  return sign_single(a.offset() - b, a.coefficient(), a.radicand());
}

}  // namespace elicit
