#include <cmath>
#include <cstdio>
#include <ostream>

#include "cli/app.hpp"
#include "cli/input.hpp"
#include "elicit/arbitrage.hpp"
#include "elicit/contracts.hpp"
#include "elicit/errors.hpp"
#include "elicit/scoring.hpp"

namespace elicit::cli {

namespace {

ReportProfile load_profile(const std::string& path, const std::string& inline_rows,
                           const char* what) {
  if (!path.empty() && !inline_rows.empty()) {
    throw InputError(std::string("give either a file or inline rows for the ") + what +
                     ", not both");
  }
  if (!path.empty()) return read_profile_file(path);
  if (!inline_rows.empty()) return parse_profile_inline(inline_rows);
  throw InputError(std::string("no ") + what + " given; use --input or --reports");
}

std::vector<std::size_t> selected_outcomes(const RunConfig& c, std::size_t n) {
  if (!c.outcome.empty()) return {parse_index(c.outcome, n, "outcome")};
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  return all;
}

// Shared by score and reward: one row per (expert, outcome), totals per outcome.
void fill_value_table(Document& doc, const std::vector<std::size_t>& outcomes,
                      const std::vector<std::vector<ExtendedReal>>& values /* [j][i] */) {
  doc.header = {"expert", "outcome", "value", "exact"};
  Json rows = Json::array();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    for (std::size_t i = 0; i < values[k].size(); ++i) {
      const auto& v = values[k][i];
      doc.rows.push_back({std::to_string(i + 1), std::to_string(outcomes[k] + 1), decimal(v),
                          fraction(v)});
      Json row;
      row["expert"] = i + 1;
      row["outcome"] = outcomes[k] + 1;
      row["value"] = value_json(v);
      rows.push_back(std::move(row));
    }
  }
  Json totals = Json::array();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    ExtendedReal total = ExtendedReal::of(0);
    for (const auto& v : values[k]) total = total + v;
    doc.notes.push_back("outcome " + std::to_string(outcomes[k] + 1) + ": total " + cell(total));
    Json t;
    t["outcome"] = outcomes[k] + 1;
    t["total"] = value_json(total);
    totals.push_back(std::move(t));
  }
  Json result;
  result["values"] = std::move(rows);
  result["totals"] = std::move(totals);
  doc.results.push_back(std::move(result));
}

Json contract_config(const ContractSpec& spec, const RunConfig& c) {
  Json j;
  j["contract"] = describe(spec);
  if (const auto* loo = std::get_if<LeaveOneOutContract>(&spec)) {
    j["alpha"] = to_fraction_string(loo->alpha);
    j["permissive"] = c.permissive;
  }
  return j;
}

}  // namespace

int run_score(const RunConfig& c, std::ostream& out) {
  const ReportProfile profile = load_profile(c.input, c.reports, "profile");
  const auto outcomes = selected_outcomes(c, profile.outcome_count());
  std::vector<std::vector<ExtendedReal>> values;
  for (auto j : outcomes) {
    auto& row = values.emplace_back();
    for (const auto& report : profile.reports()) {
      row.push_back(c.rule == "log" ? ExtendedReal::numeric(log_score(report, j))
                                    : ExtendedReal::of(quadratic_score(report, j)));
    }
  }
  Document doc;
  doc.command = "score";
  doc.config["rule"] = c.rule == "log" ? "logarithmic" : "quadratic";
  doc.config["profile"] = profile_json(profile);
  fill_value_table(doc, outcomes, values);
  emit(doc, c.format, out);
  return kExitOk;
}

int run_reward(const RunConfig& c, std::ostream& out) {
  const ReportProfile profile = load_profile(c.input, c.reports, "profile");
  const ContractSpec spec = make_contract(c.contract, c.alpha, c.permissive);
  require_evaluable(spec, profile.expert_count(), profile.outcome_count());
  const auto outcomes = selected_outcomes(c, profile.outcome_count());
  std::vector<std::vector<ExtendedReal>> values;
  for (auto j : outcomes) {
    auto& row = values.emplace_back();
    if (is_exact(spec)) {
      for (const auto& r : evaluate(spec, profile, j).rewards) row.push_back(ExtendedReal::of(r));
    } else {
      for (double r : evaluate_numeric(spec, profile, j)) row.push_back(ExtendedReal::numeric(r));
    }
  }
  Document doc;
  doc.command = "reward";
  doc.config = contract_config(spec, c);
  doc.config["profile"] = profile_json(profile);
  fill_value_table(doc, outcomes, values);
  emit(doc, c.format, out);
  return kExitOk;
}

int run_demo_intro(const RunConfig& c, std::ostream& out, std::ostream& err) {
  // three forecasters give 40%, 50% and 90% chance of rain; outcome 1 is rain
  const ReportProfile profile = parse_profile_inline("2/5,3/5;1/2,1/2;9/10,1/10");
  const ContractSpec spec = IndependentContract{RuleKind::quadratic};
  const Coalition everyone = Coalition::everyone(3);
  const Coalition coalition = c.coalition.empty() ? everyone : parse_coalition(c.coalition, 3);

  Document doc;
  doc.command = "demo-intro";
  doc.config["contract"] = describe(spec);
  doc.config["profile"] = profile_json(profile);
  doc.config["coalition"] = coalition_json(coalition);
  doc.header = {"check", "status"};

  std::vector<std::string> failures;
  Json checks = Json::array();
  auto check = [&](const std::string& name, bool ok) {
    doc.rows.push_back({name, ok ? "ok" : "MISMATCH"});
    Json j;
    j["check"] = name;
    j["ok"] = ok;
    checks.push_back(std::move(j));
    if (!ok) failures.push_back(name);
  };

  const ReportProfile collusion = mean_collusion(profile, coalition);
  Json totals = Json::array();
  std::vector<Rational> before(2), after(2);
  for (std::size_t j = 0; j < 2; ++j) {
    before[j] = coalition_total(spec, profile, coalition, j);
    after[j] = coalition_total(spec, collusion, coalition, j);
    const std::string name = j == 0 ? "rain" : "no rain";
    doc.notes.push_back(name + ": coalition total " + cell(before[j]) + " truthful, " +
                        cell(after[j]) + " colluding");
    Json t;
    t["outcome"] = j + 1;
    t["baseline"] = value_json(before[j]);
    t["collusion"] = value_json(after[j]);
    totals.push_back(std::move(t));
  }
  doc.notes.insert(doc.notes.begin(), "colluding report: " + profile_text(collusion));

  const ArbitrageInterval interval =
      uniform_report_arbitrage_interval(spec, profile, coalition, 0);
  const double lower = interval.lower.to_double();
  const double upper = interval.upper.to_double();
  doc.notes.push_back("profitable common rain forecast: [" + interval.lower.to_string() + ", " +
                      interval.upper.to_string() + "]");
  char approx[96];
  std::snprintf(approx, sizeof approx, "approximately [%.4f, %.4f]%s", lower,
                upper, interval.empty ? " (empty)" : "");
  doc.notes.push_back(approx);

  if (coalition == everyone) {
    check("truthful rain total 44/25", before[0] == Rational(44, 25u));
    check("truthful no-rain total 14/25", before[1] == Rational(14, 25u));
    check("colluding rain total 51/25", after[0] == Rational(51, 25u));
    check("colluding no-rain total 21/25", after[1] == Rational(21, 25u));
    check("lower endpoint 1 - sqrt(31/150)",
          compare(interval.lower, QuadraticSurd(1, -1, Rational(31, 150u))) == 0);
    check("upper endpoint sqrt(61/150)",
          compare(interval.upper, QuadraticSurd(0, 1, Rational(61, 150u))) == 0);
    check("lower endpoint within 0.001 of 0.546", std::abs(std::round(lower * 1000) - 546) <= 1);
    check("upper endpoint within 0.001 of 0.637", std::abs(std::round(upper * 1000) - 637) <= 1);
  }

  // dominance oracle: inside the interval pays, just outside it does not
  auto common = [&](const Rational& x) {
    std::vector<Distribution> reports(profile.reports().begin(), profile.reports().end());
    const Distribution d(std::vector<Rational>{x, Rational(1 - x)});
    for (auto i : coalition.members()) reports[i] = d;
    return check_dominance(spec, profile, ReportProfile(std::move(reports)), coalition).has_value();
  };
  const auto collusion_cert = check_dominance(spec, profile, collusion, coalition);
  check("mean collusion is a dominance certificate", collusion_cert.has_value());
  if (!interval.empty) {
    const Rational mid((lower + upper) / 2);
    check("midpoint of the interval pays", common(mid));
    const Rational step(1, 1000u);
    const Rational below(Rational(std::floor(lower * 1000)) * step - step);
    const Rational above(Rational(std::ceil(upper * 1000)) * step + step);
    if (sgn(below) >= 0) check("a forecast below the interval does not pay", !common(below));
    if (above <= 1) check("a forecast above the interval does not pay", !common(above));
  }

  Json result;
  result["collusion"] = profile_json(collusion);
  result["totals"] = std::move(totals);
  Json iv;
  iv["outcome"] = 1;
  iv["lower"] = value_json(interval.lower);
  iv["upper"] = value_json(interval.upper);
  iv["empty"] = interval.empty;
  result["interval"] = std::move(iv);
  result["checks"] = std::move(checks);
  doc.results.push_back(std::move(result));
  if (collusion_cert) doc.certificates.push_back(certificate_json(*collusion_cert));

  emit(doc, c.format, out);
  if (!failures.empty()) {
    for (const auto& f : failures) err << "elicit: demo-intro mismatch: " << f << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

int run_search(const RunConfig& c, std::ostream& out) {
  const ReportProfile profile = load_profile(c.input, c.reports, "profile");
  const ContractSpec spec = make_contract(c.contract, c.alpha, c.permissive);
  require_evaluable(spec, profile.expert_count(), profile.outcome_count());
  const Coalition coalition = c.coalition.empty()
                                  ? Coalition::everyone(profile.expert_count())
                                  : parse_coalition(c.coalition, profile.expert_count());
  const ArbitrageKind kind = c.expected ? ArbitrageKind::expected : ArbitrageKind::dominance;

  Document doc;
  doc.command = "search";
  doc.config = contract_config(spec, c);
  doc.config["profile"] = profile_json(profile);
  doc.config["coalition"] = coalition_json(coalition);
  doc.config["kind"] = to_string(kind);

  std::optional<ArbitrageCertificate> cert;
  Json result;
  const bool direct = !c.deviation_input.empty() || !c.deviation_reports.empty();
  if (direct) {
    if (c.grid || c.trials) throw ConfigurationError("a given deviation cannot be combined with --grid or --trials");
    const ReportProfile deviation = load_profile(c.deviation_input, c.deviation_reports, "deviation");
    doc.config["deviation"] = profile_json(deviation);
    cert = kind == ArbitrageKind::expected
               ? check_expected_arbitrage(spec, profile, deviation, coalition)
               : check_dominance(spec, profile, deviation, coalition);
    result["strategy"] = "given deviation";
    result["candidates"] = 1;
    if (!cert) doc.notes.push_back("no " + to_string(kind) + " certificate for the given deviation");
  } else {
    if (c.grid && c.trials) throw ConfigurationError("choose one of --grid and --trials");
    SearchStrategy strategy = GridSearch{c.grid.value_or(20)};
    if (c.trials) {
      if (!c.seed) throw ConfigurationError("random search needs --seed or ELICIT_SEED");
      strategy = RandomSearch{*c.trials, *c.seed};
    }
    SearchOptions options;
    options.kind = kind;
    options.interior = c.interior;
    options.threads = c.threads;
    const SearchResult found = search_arbitrage(spec, profile, coalition, strategy, options);
    cert = found.certificate;
    std::string label;
    if (const auto* g = std::get_if<GridSearch>(&strategy)) {
      label = "grid " + std::to_string(g->resolution) +
              (found.used_coalition_sums ? " over coalition sums" : " over member reports");
      doc.config["grid"] = g->resolution;
    } else {
      const auto& r = std::get<RandomSearch>(strategy);
      label = std::to_string(r.trials) + " random trials, seed " + std::to_string(r.seed);
      doc.config["trials"] = r.trials;
      doc.config["seed"] = r.seed;
    }
    doc.config["interior"] = c.interior;
    result["strategy"] = label;
    result["candidates"] = found.candidates;
    if (!cert) {
      doc.notes.push_back("none found: " + std::to_string(found.candidates) +
                          " candidates checked (" + label + ")");
    }
  }
  result["found"] = cert.has_value();
  doc.results.push_back(std::move(result));

  if (cert) {
    if (!reverify(spec, *cert)) {
      throw std::logic_error("certificate failed exact re-verification");
    }
    doc.notes = certificate_lines(*cert);
    doc.certificates.push_back(certificate_json(*cert));
    doc.header = {"outcome", "baseline_total", "deviation_total", "delta", "delta_exact"};
    for (std::size_t j = 0; j < cert->deltas.size(); ++j) {
      doc.rows.push_back({std::to_string(j + 1), decimal(cert->baseline_totals[j]),
                          decimal(cert->deviation_totals[j]), decimal(cert->deltas[j]),
                          fraction(cert->deltas[j])});
    }
  } else {
    doc.header = {"found"};
    doc.rows.push_back({"none"});
  }
  emit(doc, c.format, out);
  return cert ? kExitCertificate : kExitOk;
}

}  // namespace elicit::cli
