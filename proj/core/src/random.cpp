#include "elicit/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double Rng::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::exponential() { return -std::log(uniform_open()); }

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t id : path) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

Distribution random_distribution(Rng& rng, std::size_t outcomes, std::uint64_t denominator,
                                 bool interior) {
  if (outcomes < 2) throw DomainError("random_distribution needs at least 2 outcomes");
  if (denominator < 1) throw DomainError("random_distribution needs a positive denominator");
  const std::uint64_t floor = interior ? 1 : 0;
  if (outcomes * floor > denominator) {
    throw DomainError("interior lattice with denominator " + std::to_string(denominator) +
                      " has no points for n=" + std::to_string(outcomes));
  }
  const std::uint64_t units = denominator - outcomes * floor;

  std::vector<double> spacing(outcomes);
  for (auto& e : spacing) e = rng.exponential();
  const double total = std::accumulate(spacing.begin(), spacing.end(), 0.0);

  std::vector<std::uint64_t> k(outcomes);
  std::vector<double> remainder(outcomes);
  std::uint64_t assigned = 0;
  for (std::size_t j = 0; j < outcomes; ++j) {
    const double share = spacing[j] / total * static_cast<double>(units);
    k[j] = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::floor(share)), units);
    remainder[j] = share - static_cast<double>(k[j]);
    assigned += k[j];
  }
  // largest remainder; float noise can overshoot by a unit, so trim first
  while (assigned > units) {
    auto it = std::max_element(k.begin(), k.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(outcomes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t idx = 0; assigned < units; idx = (idx + 1) % outcomes) {
    ++k[order[idx]];
    ++assigned;
  }

  std::vector<Rational> w(outcomes);
  for (std::size_t j = 0; j < outcomes; ++j) {
    w[j] = Rational(mpz_class(static_cast<unsigned long>(k[j] + floor)),
                    mpz_class(static_cast<unsigned long>(denominator)));
    w[j].canonicalize();
  }
  return Distribution(std::move(w));
}

ReportProfile random_profile(Rng& rng, std::size_t experts, std::size_t outcomes,
                             std::uint64_t denominator, bool interior) {
  std::vector<Distribution> reports;
  reports.reserve(experts);
  for (std::size_t i = 0; i < experts; ++i) {
    reports.push_back(random_distribution(rng, outcomes, denominator, interior));
  }
  return ReportProfile(std::move(reports));
}

Coalition random_coalition(Rng& rng, std::size_t experts, std::size_t size) {
  if (size < 1 || size > experts) {
    throw DomainError("coalition size " + std::to_string(size) + " impossible for m=" +
                      std::to_string(experts));
  }
  std::vector<std::size_t> pool(experts);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // partial Fisher-Yates
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.below(experts - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(size);
  return Coalition(std::move(pool), experts);
}

ReportProfile random_deviation(Rng& rng, const ReportProfile& profile, const Coalition& coalition,
                               std::uint64_t denominator, bool interior) {
  std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
  for (std::size_t i : coalition.members()) {
    reports[i] = random_distribution(rng, profile.outcome_count(), denominator, interior);
  }
  return ReportProfile(std::move(reports));
}

}  // namespace elicit
