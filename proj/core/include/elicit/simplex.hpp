#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elicit/rational.hpp"

namespace elicit {

/// A point of the probability simplex over n outcomes, held exactly.
///
/// Construction validates and never normalizes: weights must be nonnegative
/// and sum to exactly 1, otherwise DomainError is thrown.
class Distribution {
 public:
  explicit Distribution(std::vector<Rational> weights);

  /// The vertex that puts all mass on outcome j.
  static Distribution vertex(std::size_t outcomes, std::size_t j);

  std::size_t size() const noexcept { return weights_.size(); }
  const Rational& operator[](std::size_t j) const { return weights_[j]; }
  const Rational& at(std::size_t j) const;
  std::span<const Rational> weights() const noexcept { return weights_; }

  /// True when every weight is strictly positive.
  bool interior() const;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<Rational> weights_;
};

/// Lexicographic comparison of weight vectors.
bool lexicographically_less(const Distribution& a, const Distribution& b);

/// An ordered m-tuple of reports over a common outcome count n.
/// Requires m >= 1 and n >= 2.
class ReportProfile {
 public:
  explicit ReportProfile(std::vector<Distribution> reports);

  std::size_t expert_count() const noexcept { return reports_.size(); }
  std::size_t outcome_count() const noexcept { return reports_.front().size(); }

  const Distribution& operator[](std::size_t i) const { return reports_[i]; }
  const Distribution& at(std::size_t i) const;
  std::span<const Distribution> reports() const noexcept { return reports_; }

  /// Copy with expert i's report replaced.
  ReportProfile with_report(std::size_t i, Distribution report) const;

  friend bool operator==(const ReportProfile&, const ReportProfile&) = default;

 private:
  std::vector<Distribution> reports_;
};

/// A nonempty set of expert indices, stored sorted and duplicate-free.
class Coalition {
 public:
  /// Throws DomainError if `members` is empty or names an index >= expert_count.
  Coalition(std::vector<std::size_t> members, std::size_t expert_count);

  static Coalition everyone(std::size_t expert_count);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t expert_count() const noexcept { return expert_count_; }
  std::span<const std::size_t> members() const noexcept { return members_; }
  bool contains(std::size_t i) const;

  /// Experts outside the coalition, ascending. May be empty.
  std::vector<std::size_t> complement() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<std::size_t> members_;
  std::size_t expert_count_;
};

/// Shorthand for Distribution::vertex.
Distribution vertex(std::size_t outcomes, std::size_t j);

/// Sum of the members' probabilities for outcome j.
Rational coalition_sum(const ReportProfile& profile, const Coalition& coalition, std::size_t j);

/// Sum over an arbitrary index set (which may be empty, giving 0).
Rational index_sum(const ReportProfile& profile, std::span<const std::size_t> experts, std::size_t j);

/// Coordinatewise average of the members' reports.
Distribution coalition_mean(const ReportProfile& profile, const Coalition& coalition);

/// Average of every report except expert i's. Requires m >= 2.
Distribution leave_one_out_mean(const ReportProfile& profile, std::size_t i);

/// Per-outcome totals over all experts (p_{[m], j} for every j).
std::vector<Rational> outcome_totals(const ReportProfile& profile);

/// All points of the simplex lattice with step 1/resolution, in ascending
/// lexicographic order. With `interior`, only points whose every weight is
/// at least 1/resolution.
std::vector<Distribution> simplex_lattice(std::size_t outcomes, std::size_t resolution,
                                          bool interior = false);

/// Number of points simplex_lattice would return.
std::size_t simplex_lattice_size(std::size_t outcomes, std::size_t resolution,
                                 bool interior = false);

}  // namespace elicit
