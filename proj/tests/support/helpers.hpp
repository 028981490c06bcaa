#pragma once

#include "elicit/random.hpp"
#include "elicit/simplex.hpp"
#include "oracle.hpp"

namespace testing_support {

inline elicit::Distribution dist(std::initializer_list<elicit::Rational> w) {
  return elicit::Distribution(std::vector<elicit::Rational>(w));
}

inline elicit::ReportProfile profile(const oracle::Rows& rows) {
  std::vector<elicit::Distribution> reports;
  for (const auto& r : rows) reports.emplace_back(r);
  return elicit::ReportProfile(std::move(reports));
}

inline oracle::Rows rows(const elicit::ReportProfile& p) {
  oracle::Rows out;
  for (const auto& d : p.reports()) out.emplace_back(d.weights().begin(), d.weights().end());
  return out;
}

// the three rain forecasts: 40%, 50%, 90%
inline elicit::ReportProfile intro() {
  using oracle::q;
  return profile({{q(2, 5), q(3, 5)}, {q(1, 2), q(1, 2)}, {q(9, 10), q(1, 10)}});
}

inline elicit::ReportProfile uniform(std::size_t m, const elicit::Distribution& d) {
  return elicit::ReportProfile(std::vector<elicit::Distribution>(m, d));
}

}  // namespace testing_support
