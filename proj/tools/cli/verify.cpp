#include <algorithm>
#include <ostream>
#include <set>

#include "cli/app.hpp"
#include "cli/input.hpp"
#include "elicit/arbitrage.hpp"
#include "elicit/errors.hpp"
#include "elicit/random.hpp"
#include "elicit/sweeps.hpp"

namespace elicit::cli {

namespace {

const std::vector<std::string> kAllSuites = {"identities", "freeness", "properness", "baseline",
                                             "claim1",     "witness",  "expected",   "edge-case"};

enum class Status { pass, fail, finding, note };

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::finding: return "EXPECTED FINDING";
    case Status::note: return "NOTE";
  }
  return "?";
}

struct Line {
  std::string suite;
  std::string property;
  std::string scope;
  Status status = Status::pass;
  std::string detail;
  std::vector<std::string> counterexamples;
};

struct Plan {
  std::pair<std::size_t, std::size_t> m_range;
  std::pair<std::size_t, std::size_t> n_range;
  std::vector<std::string> alphas;
  bool permissive = false;
  std::uint64_t seed = 42;
  std::uint64_t trials = 10000;
  std::size_t baselines = 20;
  std::optional<std::size_t> samples;
  unsigned threads = 0;
};

std::string scope(std::size_t m, std::size_t n, const Rational& alpha) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n) +
         " alpha=" + to_fraction_string(alpha);
}

Status pass_if(bool ok) { return ok ? Status::pass : Status::fail; }

// Every (m, n, alpha) in the plan, alpha tokens resolved against (m, n).
template <typename Visit>
void for_each_config(const Plan& plan, std::size_t n_lo, std::size_t n_hi, Visit&& visit) {
  for (std::size_t m = plan.m_range.first; m <= plan.m_range.second; ++m) {
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      std::set<Rational> seen;
      for (std::size_t a = 0; a < plan.alphas.size(); ++a) {
        const Rational alpha = resolve_alpha_token(plan.alphas[a], m, n);
        if (seen.insert(alpha).second) visit(m, n, a, alpha);
      }
    }
  }
}

void identities(const Plan& plan, std::vector<Line>& lines) {
  for_each_config(plan, plan.n_range.first, plan.n_range.second,
                  [&](std::size_t m, std::size_t n, std::size_t a, const Rational& alpha) {
    IdentitySweepConfig cfg;
    cfg.experts = m;
    cfg.outcomes = n;
    cfg.alpha = alpha;
    cfg.profiles = plan.samples.value_or(1000);
    cfg.seed = derive_seed(plan.seed, {1, m, n, a});
    auto add = [&](const IdentityReport& r) {
      lines.push_back({"identities", r.name, scope(m, n, alpha), pass_if(r.pass()),
                       "residual " + to_fraction_string(r.residual_offset) + ", spread " +
                           to_fraction_string(r.max_deviation) + " over " +
                           std::to_string(r.sample_count) + " evaluations",
                       {}});
    };
    add(identity_sweep(cfg, false));
    if (n == 2) add(identity_sweep(cfg, true));
  });
}

void freeness(const Plan& plan, std::vector<Line>& lines, Json& certificates) {
  for_each_config(plan, plan.n_range.first, plan.n_range.second,
                  [&](std::size_t m, std::size_t n, std::size_t a, const Rational& alpha) {
    FreenessConfig cfg;
    cfg.experts = m;
    cfg.outcomes = n;
    cfg.alpha = alpha;
    cfg.permissive = plan.permissive;
    cfg.baselines = plan.baselines;
    cfg.trials = plan.trials;
    cfg.seed = derive_seed(plan.seed, {2, m, n, a});
    cfg.threads = plan.threads;
    const FreenessReport r = freeness_sweep(cfg);
    const bool valid = validate_alpha(alpha, m, n).valid();
    Line line{"freeness", "no dominance certificate", scope(m, n, alpha), Status::pass,
              std::to_string(r.certificates) + " certificates in " + std::to_string(r.checks) +
                  " deviations",
              {}};
    if (valid) {
      line.status = pass_if(r.certificates == 0);
    } else {
      line.status = r.certificates > 0 ? Status::finding : Status::note;
      line.detail += " (alpha outside the arbitrage-free range)";
    }
    for (const auto& cert : r.examples) {
      line.counterexamples.push_back("P=" + profile_text(cert.baseline) +
                                     " Q=" + profile_text(cert.deviation) +
                                     " C=" + coalition_text(cert.coalition));
      certificates.push_back(certificate_json(cert));
    }
    lines.push_back(std::move(line));
  });
}

void properness(const Plan& plan, std::vector<Line>& lines) {
  ProperConfig cfg;
  cfg.configs = plan.samples.value_or(100);
  cfg.min_experts = std::max<std::size_t>(plan.m_range.first, 2);
  cfg.max_experts = plan.m_range.second;
  cfg.min_outcomes = plan.n_range.first;
  cfg.max_outcomes = plan.n_range.second;
  cfg.seed = derive_seed(plan.seed, {3});
  const ProperReport r = properness_sweep(cfg);
  char gradient[64];
  std::snprintf(gradient, sizeof gradient, "%.3g", r.max_gradient_norm);
  lines.push_back({"properness", "truthful report is the unique grid maximizer",
                   "grid 1/" + std::to_string(cfg.resolution), pass_if(r.probe_failures == 0),
                   std::to_string(r.probe_failures) + " failures in " + std::to_string(r.configs) +
                       " configurations",
                   r.counterexamples});
  lines.push_back({"properness", "expected-reward gradient vanishes at the belief",
                   "interior beliefs", pass_if(r.max_gradient_norm < 1e-6),
                   std::string("max norm ") + gradient + " over " + std::to_string(r.configs) +
                       " configurations",
                   {}});
}

void baseline(const Plan& plan, std::vector<Line>& lines) {
  const CollusionReport r =
      mean_collusion_sweep(plan.samples.value_or(1000), std::max<std::size_t>(plan.m_range.second, 2),
                           plan.n_range.second, derive_seed(plan.seed, {4}));
  lines.push_back({"baseline", "mean collusion dominates independent quadratic scoring",
                   "m<=" + std::to_string(plan.m_range.second) +
                       " n<=" + std::to_string(plan.n_range.second),
                   pass_if(r.failures == 0),
                   std::to_string(r.profiles - r.failures) + " of " + std::to_string(r.profiles) +
                       " profiles certified",
                   r.counterexamples});
}

void claim1(const Plan& plan, std::vector<Line>& lines) {
  for_each_config(plan, 2, 2, [&](std::size_t m, std::size_t n, std::size_t a, const Rational& alpha) {
    Claim1Config cfg;
    cfg.experts = m;
    cfg.alpha = alpha;
    cfg.complements = plan.samples.value_or(200);
    cfg.seed = derive_seed(plan.seed, {5, m, a});
    const Claim1Report r = claim1_sweep(cfg);
    lines.push_back({"claim1", "coalition polynomial matches direct evaluation", scope(m, n, alpha),
                     pass_if(r.polynomial_failures == 0),
                     std::to_string(r.polynomial_failures) + " mismatches in " +
                         std::to_string(r.polynomial_checks) + " points",
                     {}});
    const Rational d = validate_alpha(alpha, m, 2).d_two_outcome;
    const bool predicted = sgn(d) <= 0 || d > static_cast<unsigned long>(m - 1);
    Line mono{"claim1", std::string("coalition total is strictly ") +
                            (sgn(d) <= 0 ? "increasing" : "decreasing") + " in its sum",
              scope(m, n, alpha), pass_if(r.monotonicity_failures == 0),
              std::to_string(r.monotonicity_failures) + " violations in " +
                  std::to_string(r.monotonicity_checks) + " complements, d=" +
                  to_fraction_string(d),
              r.counterexamples};
    if (!predicted) {
      mono.property = "coalition total monotonicity";
      mono.status = Status::note;
      mono.detail = "no prediction for d=" + to_fraction_string(d) + " in (0, m-1]";
    }
    lines.push_back(std::move(mono));
  });
  const std::size_t top = std::max<std::size_t>(plan.m_range.second, 6);
  const VertexReport v = vertex_sweep(top, derive_seed(plan.seed, {6}), 50);
  lines.push_back({"claim1", "parabola vertex lies outside [0, |C|]",
                   "3<=|C|<=m<=" + std::to_string(top), pass_if(v.failures == 0),
                   std::to_string(v.failures) + " failures in " + std::to_string(v.checks) +
                       " vertices",
                   v.counterexamples});
}

void witness(const Plan& plan, std::vector<Line>& lines) {
  for_each_config(plan, plan.n_range.first, plan.n_range.second,
                  [&](std::size_t m, std::size_t n, std::size_t a, const Rational& alpha) {
    if (!validate_alpha(alpha, m, n).valid()) {
      lines.push_back({"witness", "hurting outcome", scope(m, n, alpha), Status::note,
                       "skipped: alpha outside the arbitrage-free range", {}});
      return;
    }
    WitnessConfig cfg;
    cfg.experts = m;
    cfg.outcomes = n;
    cfg.alpha = alpha;
    cfg.deviations = plan.trials;
    cfg.seed = derive_seed(plan.seed, {7, m, n, a});
    cfg.threads = plan.threads;
    const WitnessReport r = witness_sweep(cfg);
    lines.push_back({"witness", "hurting outcome never gains, strictly loses when sums move",
                     scope(m, n, alpha), pass_if(r.failures == 0),
                     std::to_string(r.failures) + " failures in " + std::to_string(r.deviations) +
                         " deviations (" + std::to_string(r.strict) + " strict)",
                     r.counterexamples});
  });
}

void expected(const Plan& plan, std::vector<Line>& lines, Json& certificates) {
  auto run_one = [&](std::size_t m, const Rational& alpha) {
    const UniformBeliefExample ex = uniform_belief_example(m, alpha);
    const Rational half_alpha = alpha / 2;
    const Rational truthful = (ex.truthful_reward_first + ex.truthful_reward_second) / 2;
    bool ok = ex.deviating_expected_reward == half_alpha;
    std::string detail = "truthful " + cell(truthful) + ", all-(1,0) " +
                         cell(ex.deviating_expected_reward) + " per expert";
    Status status;
    if (m >= 3) {
      ok = ok && ex.expected_certificate.has_value();
      status = ok ? Status::finding : Status::fail;
      detail += ok ? "; expected arbitrage present" : "; expected arbitrage missing";
    } else {
      ok = ok && !ex.expected_certificate;
      status = pass_if(ok);
      detail += "; no expected arbitrage for two experts";
    }
    if (validate_alpha(alpha, m, 2).valid() && ex.dominance_certificate) {
      status = Status::fail;
      detail += "; unexpected dominance certificate";
    }
    lines.push_back({"expected", "uniform beliefs reporting a vertex", scope(m, 2, alpha), status,
                     detail, {}});
    if (ex.expected_certificate && certificates.size() < 16) {
      certificates.push_back(certificate_json(*ex.expected_certificate));
    }
    return ex;
  };

  // the worked case: three experts, alpha = 16
  const UniformBeliefExample ex = run_one(3, 16);
  const bool exact = ex.truthful_reward_first == Rational(13, 2u) &&
                     ex.truthful_reward_second == Rational(13, 2u) &&
                     ex.deviating_expected_reward == 8;
  lines.push_back({"expected", "worked case rewards", "m=3 n=2 alpha=16", pass_if(exact),
                   "truthful " + cell(ex.truthful_reward_first) + " under each outcome, deviating " +
                       cell(ex.deviating_expected_reward) + " expected",
                   {}});
  for_each_config(plan, 2, 2, [&](std::size_t m, std::size_t, std::size_t, const Rational& alpha) {
    if (!(m == 3 && alpha == 16)) run_one(m, alpha);
  });
}

void edge_case(const Plan& plan, std::vector<Line>& lines, Json& certificates) {
  const ContractSpec spec = LeaveOneOutContract{0, true};
  const ReportProfile profile = parse_profile_inline("1/2,1/2;1/2,1/2;0,1");
  const Coalition pair({0, 1}, 3);
  const std::string where = "m=3 n=2 alpha=0, expert 3 reports (0,1), C={1,2}";

  const SearchResult grid = search_arbitrage(spec, profile, pair, GridSearch{50});
  Line found{"edge-case", "grid search on the boundary profile", where,
             grid.certificate ? Status::finding : Status::fail,
             grid.certificate ? "certificate found, " + profile_text(grid.certificate->deviation)
                              : "no certificate found",
             {}};
  if (grid.certificate) certificates.push_back(certificate_json(*grid.certificate));
  lines.push_back(std::move(found));

  // with every report held strictly inside the simplex the edge case disappears
  const ReportProfile interior = parse_profile_inline("1/2,1/2;1/2,1/2;1/50,49/50");
  SearchOptions inside;
  inside.interior = true;
  inside.threads = plan.threads;
  const std::uint64_t trials = plan.trials;
  const SearchResult random = search_arbitrage(
      spec, interior, pair, RandomSearch{trials, derive_seed(plan.seed, {8}), 50}, inside);
  lines.push_back({"edge-case", "interior random search finds nothing",
                   "weights in [1/50, 49/50]", pass_if(!random.certificate),
                   std::to_string(random.candidates) + " trials", {}});
  const SearchResult lattice = search_arbitrage(spec, interior, pair, GridSearch{50}, inside);
  lines.push_back({"edge-case", "interior grid search finds nothing", "weights in [1/50, 49/50]",
                   pass_if(!lattice.certificate),
                   std::to_string(lattice.candidates) + " candidates", {}});
}

}  // namespace

int run_verify(const RunConfig& c, std::ostream& out) {
  Plan plan;
  plan.m_range = parse_range(c.m_range, "m");
  plan.n_range = parse_range(c.n_range, "n");
  if (plan.m_range.first < 2) throw ConfigurationError("m-range must start at 2 or more");
  if (plan.n_range.first < 2) throw ConfigurationError("n-range must start at 2 or more");
  plan.alphas = c.alpha.empty() ? std::vector<std::string>{"-1", "-10", "thr", "thr+5"}
                                : split(c.alpha, ',');
  plan.permissive = c.permissive;
  plan.seed = c.seed.value_or(42);
  plan.trials = c.trials.value_or(10000);
  plan.baselines = c.baselines.value_or(20);
  plan.samples = c.samples;
  plan.threads = c.threads;
  if (plan.trials == 0 || plan.baselines == 0 || (plan.samples && *plan.samples == 0)) {
    throw ConfigurationError("trials, baselines and samples must be positive");
  }

  std::vector<std::string> suites = c.suites.empty() ? kAllSuites : split(c.suites, ',');
  for (const auto& s : suites) {
    if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end()) {
      throw ConfigurationError("unknown suite '" + s + "'");
    }
  }

  // refuse invalid alphas up front unless asked to study them
  for_each_config(plan, plan.n_range.first, plan.n_range.second,
                  [&](std::size_t m, std::size_t n, std::size_t, const Rational& alpha) {
    if (!plan.permissive && !validate_alpha(alpha, m, n).valid()) {
      throw ConfigurationError("alpha = " + to_fraction_string(alpha) +
                               " is outside the arbitrage-free range for m=" + std::to_string(m) +
                               ", n=" + std::to_string(n) + "; pass --permissive to study it");
    }
  });

  std::vector<Line> lines;
  Json certificates = Json::array();
  for (const auto& s : suites) {
    if (s == "identities") identities(plan, lines);
    if (s == "freeness") freeness(plan, lines, certificates);
    if (s == "properness") properness(plan, lines);
    if (s == "baseline") baseline(plan, lines);
    if (s == "claim1") claim1(plan, lines);
    if (s == "witness") witness(plan, lines);
    if (s == "expected") expected(plan, lines, certificates);
    if (s == "edge-case") edge_case(plan, lines, certificates);
  }

  Document doc;
  doc.command = "verify";
  Json suite_list = Json::array();
  for (const auto& s : suites) suite_list.push_back(s);
  doc.config["suites"] = std::move(suite_list);
  doc.config["m_range"] = {plan.m_range.first, plan.m_range.second};
  doc.config["n_range"] = {plan.n_range.first, plan.n_range.second};
  Json alphas = Json::array();
  for (const auto& a : plan.alphas) alphas.push_back(a);
  doc.config["alphas"] = std::move(alphas);
  doc.config["permissive"] = plan.permissive;
  doc.config["seed"] = plan.seed;
  doc.config["trials"] = plan.trials;
  doc.config["baselines"] = plan.baselines;
  doc.certificates = std::move(certificates);
  doc.header = {"suite", "property", "scope", "status", "detail"};

  std::size_t passed = 0, failed = 0, findings = 0;
  for (const auto& line : lines) {
    doc.rows.push_back({line.suite, line.property, line.scope, to_string(line.status), line.detail});
    Json j;
    j["suite"] = line.suite;
    j["property"] = line.property;
    j["scope"] = line.scope;
    j["status"] = to_string(line.status);
    j["detail"] = line.detail;
    j["counterexamples"] = line.counterexamples;
    doc.results.push_back(std::move(j));
    if (line.status == Status::pass) ++passed;
    if (line.status == Status::fail) ++failed;
    if (line.status == Status::finding) ++findings;
  }
  doc.notes.push_back(std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " +
                      std::to_string(findings) + " expected findings");
  for (const auto& line : lines) {
    if (line.status != Status::fail) continue;
    for (const auto& ce : line.counterexamples) {
      doc.notes.push_back("counterexample [" + line.suite + ", " + line.scope + "]: " + ce);
    }
  }
  emit(doc, c.format, out);
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

}  // namespace elicit::cli
