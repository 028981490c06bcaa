#include "elicit/simplex.hpp"

#include <algorithm>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

Distribution::Distribution(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw DomainError("a distribution needs at least 2 outcomes, got " +
                      std::to_string(weights_.size()));
  }
  Rational total = 0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (sgn(weights_[j]) < 0) {
      throw DomainError("weight " + std::to_string(j) + " is negative (" +
                        to_fraction_string(weights_[j]) + ")");
    }
    total += weights_[j];
  }
  if (total != 1) {
    throw DomainError("weights sum to " + to_fraction_string(total) + ", not 1");
  }
}

Distribution Distribution::vertex(std::size_t outcomes, std::size_t j) {
  if (outcomes < 2) throw DomainError("a distribution needs at least 2 outcomes");
  if (j >= outcomes) {
    throw IndexError("outcome " + std::to_string(j) + " out of range for n=" +
                     std::to_string(outcomes));
  }
  std::vector<Rational> w(outcomes, Rational(0));
  w[j] = 1;
  return Distribution(std::move(w));
}

const Rational& Distribution::at(std::size_t j) const {
  if (j >= weights_.size()) {
    throw IndexError("outcome " + std::to_string(j) + " out of range for n=" +
                     std::to_string(weights_.size()));
  }
  return weights_[j];
}

bool Distribution::interior() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Rational& w) { return sgn(w) > 0; });
}

bool lexicographically_less(const Distribution& a, const Distribution& b) {
  return std::lexicographical_compare(a.weights().begin(), a.weights().end(),
                                      b.weights().begin(), b.weights().end());
}

ReportProfile::ReportProfile(std::vector<Distribution> reports) : reports_(std::move(reports)) {
  if (reports_.empty()) throw DomainError("a report profile needs at least one expert");
  const std::size_t n = reports_.front().size();
  for (std::size_t i = 1; i < reports_.size(); ++i) {
    if (reports_[i].size() != n) {
      throw DomainError("expert " + std::to_string(i) + " reports over " +
                        std::to_string(reports_[i].size()) + " outcomes, expected " +
                        std::to_string(n));
    }
  }
}

const Distribution& ReportProfile::at(std::size_t i) const {
  if (i >= reports_.size()) {
    throw IndexError("expert " + std::to_string(i) + " out of range for m=" +
                     std::to_string(reports_.size()));
  }
  return reports_[i];
}

ReportProfile ReportProfile::with_report(std::size_t i, Distribution report) const {
  at(i);
  auto reports = reports_;
  reports[i] = std::move(report);
  return ReportProfile(std::move(reports));
}

Coalition::Coalition(std::vector<std::size_t> members, std::size_t expert_count)
    : members_(std::move(members)), expert_count_(expert_count) {
  if (members_.empty()) throw DomainError("a coalition must be nonempty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.back() >= expert_count_) {
    throw DomainError("coalition member " + std::to_string(members_.back()) +
                      " out of range for m=" + std::to_string(expert_count_));
  }
}

Coalition Coalition::everyone(std::size_t expert_count) {
  std::vector<std::size_t> all(expert_count);
  for (std::size_t i = 0; i < expert_count; ++i) all[i] = i;
  return Coalition(std::move(all), expert_count);
}

bool Coalition::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

std::vector<std::size_t> Coalition::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < expert_count_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

Distribution vertex(std::size_t outcomes, std::size_t j) {
  return Distribution::vertex(outcomes, j);
}

namespace {

void require_fits(const ReportProfile& profile, const Coalition& coalition) {
  if (coalition.expert_count() != profile.expert_count()) {
    throw DomainError("coalition is over " + std::to_string(coalition.expert_count()) +
                      " experts but the profile has " +
                      std::to_string(profile.expert_count()));
  }
}

}  // namespace

Rational index_sum(const ReportProfile& profile, std::span<const std::size_t> experts,
                   std::size_t j) {
  if (j >= profile.outcome_count()) {
    throw IndexError("outcome " + std::to_string(j) + " out of range for n=" +
                     std::to_string(profile.outcome_count()));
  }
  Rational total = 0;
  for (std::size_t i : experts) total += profile.at(i)[j];
  return total;
}

Rational coalition_sum(const ReportProfile& profile, const Coalition& coalition, std::size_t j) {
  require_fits(profile, coalition);
  return index_sum(profile, coalition.members(), j);
}

Distribution coalition_mean(const ReportProfile& profile, const Coalition& coalition) {
  require_fits(profile, coalition);
  const std::size_t n = profile.outcome_count();
  const Rational size = static_cast<unsigned long>(coalition.size());
  std::vector<Rational> mean(n);
  for (std::size_t j = 0; j < n; ++j) {
    mean[j] = index_sum(profile, coalition.members(), j) / size;
  }
  return Distribution(std::move(mean));
}

Distribution leave_one_out_mean(const ReportProfile& profile, std::size_t i) {
  const std::size_t m = profile.expert_count();
  if (m < 2) throw DomainError("leave-one-out mean needs at least 2 experts");
  if (i >= m) throw IndexError("expert " + std::to_string(i) + " out of range for m=" + std::to_string(m));
  std::vector<std::size_t> others;
  others.reserve(m - 1);
  for (std::size_t k = 0; k < m; ++k) {
    if (k != i) others.push_back(k);
  }
  return coalition_mean(profile, Coalition(std::move(others), m));
}

std::vector<Rational> outcome_totals(const ReportProfile& profile) {
  std::vector<Rational> totals(profile.outcome_count(), Rational(0));
  for (const auto& report : profile.reports()) {
    for (std::size_t j = 0; j < totals.size(); ++j) totals[j] += report[j];
  }
  return totals;
}

namespace {

// Visits compositions of `remaining` into the parts k[pos..] (each at least
// `floor`) in ascending lexicographic order.
template <typename Visit>
void for_each_composition(std::vector<std::size_t>& k, std::size_t pos, std::size_t remaining,
                          std::size_t floor, Visit& visit) {
  const std::size_t parts_left = k.size() - pos;
  if (parts_left == 1) {
    k[pos] = remaining;
    visit(k);
    return;
  }
  const std::size_t reserve = (parts_left - 1) * floor;
  for (std::size_t v = floor; v + reserve <= remaining; ++v) {
    k[pos] = v;
    for_each_composition(k, pos + 1, remaining - v, floor, visit);
  }
}

}  // namespace

std::vector<Distribution> simplex_lattice(std::size_t outcomes, std::size_t resolution,
                                          bool interior) {
  if (outcomes < 2) throw DomainError("simplex lattice needs at least 2 outcomes");
  if (resolution < 1) throw DomainError("lattice resolution must be positive");
  std::vector<Distribution> points;
  const Rational step(1UL, static_cast<unsigned long>(resolution));
  const std::size_t floor = interior ? 1 : 0;
  if (outcomes * floor > resolution) return points;
  auto emit = [&](const std::vector<std::size_t>& k) {
    std::vector<Rational> w(outcomes);
    for (std::size_t j = 0; j < outcomes; ++j) {
      w[j] = Rational(static_cast<unsigned long>(k[j])) * step;
    }
    points.emplace_back(std::move(w));
  };
  std::vector<std::size_t> k(outcomes, 0);
  for_each_composition(k, 0, resolution, floor, emit);
  return points;
}

std::size_t simplex_lattice_size(std::size_t outcomes, std::size_t resolution, bool interior) {
  // C(free + outcomes - 1, outcomes - 1)
  const std::size_t floor = interior ? 1 : 0;
  if (outcomes * floor > resolution) return 0;
  const std::size_t free = resolution - outcomes * floor;
  mpz_class count;
  mpz_bin_uiui(count.get_mpz_t(), free + outcomes - 1, outcomes - 1);
  return count.fits_ulong_p() ? count.get_ui() : static_cast<std::size_t>(-1);
}

}  // namespace elicit
