#include "cli/app.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "elicit/errors.hpp"

namespace elicit::cli {

namespace {

void add_profile_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--input", c.input, "JSON profile file")->check(CLI::ExistingFile);
  cmd->add_option("--reports", c.reports, "inline profile, rows split by ';'");
}

void add_contract_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--contract", c.contract, "contract function")
      ->check(CLI::IsMember(
          {"independent-quadratic", "independent-log", "zero-sum-pair", "nr", "leave-one-out"}));
  cmd->add_option("--alpha", c.alpha, "alpha for the nr contract (rational)");
  cmd->add_flag("--permissive", c.permissive, "allow alpha outside the arbitrage-free range");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_seed) {
  RunConfig c;
  std::string format = "table";

  CLI::App app{"Exact evaluation and arbitrage checks for multi-expert forecast contracts", "elicit"};
  app.require_subcommand(1);
  app.add_option("--format", format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  auto* score = app.add_subcommand("score", "score every expert under a scoring rule");
  add_profile_flags(score, c);
  score->add_option("--rule", c.rule, "quadratic or log")->check(CLI::IsMember({"quadratic", "log"}));
  score->add_option("--outcome", c.outcome, "restrict to one outcome (1-based)");

  auto* reward = app.add_subcommand("reward", "evaluate a contract function");
  add_profile_flags(reward, c);
  add_contract_flags(reward, c);
  reward->add_option("--outcome", c.outcome, "restrict to one outcome (1-based)");

  auto* demo = app.add_subcommand("demo-intro", "reproduce the three-forecaster rain example");
  demo->add_option("--coalition", c.coalition, "colluding experts, 1-based");

  auto* search = app.add_subcommand("search", "look for a coalition deviation that pays");
  add_profile_flags(search, c);
  add_contract_flags(search, c);
  search->add_option("--coalition", c.coalition, "colluding experts, 1-based (default all)");
  search->add_option("--grid", c.grid, "lattice resolution");
  search->add_option("--trials", c.trials, "random trials");
  search->add_option("--seed", c.seed, "seed for random trials (or ELICIT_SEED)");
  search->add_flag("--expected", c.expected, "search for expected arbitrage");
  search->add_flag("--interior", c.interior, "keep every weight in [1/D, 1 - 1/D]");
  search->add_option("--deviation-input", c.deviation_input, "check this JSON deviation only");
  search->add_option("--deviation", c.deviation_reports, "check this inline deviation only");
  search->add_option("--threads", c.threads, "worker threads, 0 = all cores");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", c.suites,
                     "comma list: identities,freeness,properness,baseline,claim1,witness,"
                     "expected,edge-case");
  verify->add_option("--m-range", c.m_range, "expert counts, e.g. 2..5");
  verify->add_option("--n-range", c.n_range, "outcome counts, e.g. 2..4");
  verify->add_option("--alpha", c.alpha, "comma list of alphas; 'thr' is 2(m-1)^2 n");
  verify->add_flag("--permissive", c.permissive, "allow alphas outside the arbitrage-free range");
  verify->add_option("--trials", c.trials, "deviations per baseline profile");
  verify->add_option("--baselines", c.baselines, "baseline profiles per configuration");
  verify->add_option("--samples", c.samples, "profiles per identity or property sweep");
  verify->add_option("--seed", c.seed, "master seed (or ELICIT_SEED, default 42)");
  verify->add_option("--threads", c.threads, "worker threads, 0 = all cores");

  for (auto* sub : {score, reward, demo, search, verify}) {
    sub->add_option("--format", format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "elicit: " << e.what() << '\n';
    return kExitInput;
  }

  c.format = parse_format(format);
  c.subcommand = app.get_subcommands().front()->get_name();
  if (!c.seed && env_seed && *env_seed) {
    try {
      c.seed = std::stoull(env_seed);
    } catch (const std::exception&) {
      err << "elicit: ELICIT_SEED='" << env_seed << "' is not an unsigned integer\n";
      return kExitConfig;
    }
  }

  const bool verifying = c.subcommand == "verify";
  try {
    if (c.subcommand == "score") return run_score(c, out);
    if (c.subcommand == "reward") return run_reward(c, out);
    if (c.subcommand == "demo-intro") return run_demo_intro(c, out, err);
    if (c.subcommand == "search") return run_search(c, out);
    return run_verify(c, out);
  } catch (const ConfigurationError& e) {
    err << "elicit: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    err << "elicit: " << e.what() << '\n';
    return verifying ? kExitConfig : kExitInput;
  } catch (const DomainError& e) {
    err << "elicit: " << e.what() << '\n';
    return verifying ? kExitConfig : kExitInput;
  } catch (const IndexError& e) {
    err << "elicit: " << e.what() << '\n';
    return verifying ? kExitConfig : kExitInput;
  } catch (const std::exception& e) {
    err << "elicit: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace elicit::cli
