#include "elicit/rational.hpp"

#include <cctype>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void reject(std::string_view text) {
  throw InputError("not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view raw) {
  const std::string_view text = trim(raw);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) reject(text);

  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    result = Rational(n, d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) reject(text);
    if (!whole.empty() && !all_digits(whole)) reject(text);
    if (!frac.empty() && !all_digits(frac)) reject(text);
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) reject(text);
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_fraction_string(const Rational& value) {
  return value.get_str(10);
}

std::string to_decimal_string(const Rational& value, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = sgn(value) < 0;
  const Rational magnitude = negative ? Rational(-value) : value;

  // round half away from zero: floor(|x| * 10^k + 1/2)
  const Rational scaled = magnitude * scale + Rational(1, 2);
  mpz_class units;
  mpz_fdiv_q(units.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());

  mpz_class whole;
  mpz_class frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), units.get_mpz_t(), scale.get_mpz_t());

  std::string out = (negative && units != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0 && frac != 0) {
    std::string f = frac.get_str();
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational abs(const Rational& value) { return sgn(value) < 0 ? Rational(-value) : value; }

}  // namespace elicit
