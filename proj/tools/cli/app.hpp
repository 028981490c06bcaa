#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/output.hpp"

namespace elicit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitConfig = 2,
  kExitCertificate = 3,
  kExitInput = 64,
  kExitInternal = 70,
};

struct RunConfig {
  std::string subcommand;

  std::string input;    // path to a JSON profile
  std::string reports;  // inline profile, "0.4,0.6;0.5,0.5"
  std::string deviation_input;
  std::string deviation_reports;

  std::string contract = "independent-quadratic";
  std::string alpha;
  bool permissive = false;
  std::string rule = "quadratic";
  std::string outcome;  // 1-based, empty means all
  std::string coalition;

  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  bool expected = false;
  bool interior = false;

  std::string suites;
  std::string m_range = "2..5";
  std::string n_range = "2..4";
  std::optional<std::size_t> baselines;
  std::optional<std::size_t> samples;
  unsigned threads = 0;

  Format format = Format::table;
};

/// Entry point shared by main() and the tests. `env_seed` stands in for
/// ELICIT_SEED so tests need not touch the process environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_seed);

int run_score(const RunConfig& config, std::ostream& out);
int run_reward(const RunConfig& config, std::ostream& out);
int run_demo_intro(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_search(const RunConfig& config, std::ostream& out);
int run_verify(const RunConfig& config, std::ostream& out);

}  // namespace elicit::cli
