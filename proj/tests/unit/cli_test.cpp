#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/app.hpp"
#include "cli/input.hpp"
#include "elicit/errors.hpp"

using namespace elicit;
using namespace elicit::cli;

namespace {

const char* const kIntro = "0.4,0.6;0.5,0.5;0.9,0.1";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args, const char* env_seed = nullptr) {
  std::ostringstream out, err;
  const int code = run(args, out, err, env_seed);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(CliScore, IntroTable) {
  const auto r = run_cli({"score", "--reports", kIntro});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.98   49/50"), std::string::npos);
  EXPECT_NE(r.out.find("-0.62  -31/50"), std::string::npos);
  EXPECT_NE(r.out.find("outcome 2: total 0.56 (14/25)"), std::string::npos);
}

TEST(CliScore, VertexScoresOne) {
  const auto r = run_cli({"score", "--reports", "0,1", "--outcome", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "expert,outcome,value,exact\r\n1,2,1,1\r\n");
}

TEST(CliScore, BadRowsExitWithDiagnostics) {
  auto r = run_cli({"score", "--reports", "0.4,0.59;0.5,0.5"});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("row 1 sums to 99/100"), std::string::npos);
  r = run_cli({"score", "--reports", "0.5,0.5;0.5,x"});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("row 2 field 2"), std::string::npos);
  r = run_cli({"score", "--reports", "0.5,0.5;1,0,0"});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("row 2 has 3 fields"), std::string::npos);
  r = run_cli({"score"});
  EXPECT_EQ(r.code, 64);
  r = run_cli({"score", "--bogus"});
  EXPECT_EQ(r.code, 64);
}

TEST(CliInput, JsonFiles) {
  const auto good = temp_file("good.json", R"({"n": 2, "reports": [["2/5","3/5"], ["0.5","0.5"], [1, 0]]})");
  const auto p = read_profile_file(good);
  EXPECT_EQ(p.expert_count(), 3u);
  EXPECT_EQ(p[0][0], Rational(2, 5));
  const auto bad = temp_file("bad.json", R"({"n": 2, "reports": [["0.4","0.59"]]})");
  auto r = run_cli({"score", "--input", bad});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("row 1 sums to 99/100"), std::string::npos);
  const auto floats = temp_file("floats.json", R"({"n": 2, "reports": [[0.4, 0.6]]})");
  EXPECT_THROW(read_profile_file(floats), InputError);
  const auto broken = temp_file("broken.json", R"({"n": 2, "reports": [)");
  EXPECT_THROW(read_profile_file(broken), InputError);
  const auto wrong_n = temp_file("wrong_n.json", R"({"n": 3, "reports": [["1/2","1/2"]]})");
  EXPECT_THROW(read_profile_file(wrong_n), InputError);
}

TEST(CliInput, CoalitionsRangesAndAlphaTokens) {
  const auto c = parse_coalition("3, 1", 3);
  EXPECT_EQ(std::vector<std::size_t>(c.members().begin(), c.members().end()),
            (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(parse_coalition("0", 3), InputError);
  EXPECT_THROW(parse_coalition("4", 3), InputError);
  EXPECT_EQ(parse_range("2..5", "m"), (std::pair<std::size_t, std::size_t>{2, 5}));
  EXPECT_EQ(parse_range("3", "m"), (std::pair<std::size_t, std::size_t>{3, 3}));
  EXPECT_THROW(parse_range("5..2", "m"), ConfigurationError);
  EXPECT_EQ(resolve_alpha_token("thr", 4, 3), 54);
  EXPECT_EQ(resolve_alpha_token("thr+5", 4, 3), 59);
  EXPECT_EQ(resolve_alpha_token("-1/2", 4, 3), Rational(-1, 2));
  EXPECT_THROW(resolve_alpha_token("thr*2", 4, 3), ConfigurationError);
}

TEST(CliReward, LeaveOneOutAndConfigErrors) {
  auto r = run_cli({"reward", "--reports", "1/2,1/2;1/2,1/2;1/2,1/2", "--contract", "nr", "--alpha", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("6.5    13/2"), std::string::npos);
  EXPECT_NE(r.out.find("total 19.5 (39/2)"), std::string::npos);
  r = run_cli({"reward", "--reports", kIntro, "--contract", "nr"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"reward", "--reports", kIntro, "--contract", "nr", "--alpha", "1"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"reward", "--reports", kIntro, "--contract", "nr", "--alpha", "1", "--permissive"});
  EXPECT_EQ(r.code, 0);
  r = run_cli({"reward", "--reports", kIntro, "--contract", "zero-sum-pair"});
  EXPECT_EQ(r.code, 64);
  r = run_cli({"reward", "--reports", kIntro, "--contract", "independent-log", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["results"][0]["values"][0]["value"]["fraction"].is_null());
}

TEST(CliDemo, ReproducesTheRainExample) {
  auto r = run_cli({"demo-intro"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.76 (44/25)"), std::string::npos);
  EXPECT_NE(r.out.find("2.04 (51/25)"), std::string::npos);
  EXPECT_NE(r.out.find("[1 - sqrt(31/150), sqrt(61/150)]"), std::string::npos);
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);

  r = run_cli({"demo-intro", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["command"], "demo-intro");
  EXPECT_EQ(doc["results"][0]["totals"][0]["baseline"]["fraction"], "44/25");
  EXPECT_EQ(doc["results"][0]["totals"][1]["collusion"]["fraction"], "21/25");
  EXPECT_EQ(doc["results"][0]["interval"]["lower"]["exact"], "1 - sqrt(31/150)");
  EXPECT_EQ(doc["certificates"][0]["deltas"], nlohmann::json({"7/25", "7/25"}));

  r = run_cli({"demo-intro", "--coalition", "1,3"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("(13/20, 7/20) (1/2, 1/2) (13/20, 7/20)"), std::string::npos);
  EXPECT_NE(r.out.find("midpoint of the interval pays"), std::string::npos);
}

TEST(CliSearch, ExitCodesFollowTheContract) {
  auto r = run_cli({"search", "--reports", kIntro, "--grid", "20"});
  EXPECT_EQ(r.code, 3) << r.err;
  r = run_cli({"search", "--reports", kIntro, "--contract", "nr", "--alpha", "16", "--trials", "2000",
               "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("none found: 2000 candidates"), std::string::npos);
  r = run_cli({"search", "--reports", "1/2,1/2;1/2,1/2;1/2,1/2", "--contract", "nr", "--alpha", "16",
               "--expected", "--deviation", "1,0;1,0;1,0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("EXPECTED certificate"), std::string::npos);
  r = run_cli({"search", "--reports", kIntro, "--trials", "10"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"search", "--reports", kIntro, "--grid", "5", "--trials", "10", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"search", "--reports", kIntro, "--coalition", "1,4"});
  EXPECT_EQ(r.code, 64);
  r = run_cli({"search", "--reports", kIntro, "--coalition", "1,2", "--deviation", "0.5,0.5;0.5,0.5;0.5,0.5"});
  EXPECT_EQ(r.code, 64);
}

TEST(CliSearch, SeedFallsBackToEnvironmentAndFlagWins) {
  const std::vector<std::string> base = {"search", "--reports", kIntro, "--coalition", "1,2",
                                         "--trials", "50", "--format", "json"};
  const auto env = run_cli(base, "11");
  ASSERT_TRUE(env.code == 0 || env.code == 3) << env.err;
  EXPECT_EQ(nlohmann::json::parse(env.out)["config"]["seed"], 11);
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--seed", "12"});
  const auto flag = run_cli(with_flag, "11");
  EXPECT_EQ(nlohmann::json::parse(flag.out)["config"]["seed"], 12);
  EXPECT_EQ(run_cli(base, "eleven").code, 2);
}

TEST(CliSearch, JsonIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args = {"search", "--reports", kIntro, "--trials", "300", "--seed", "5",
                                         "--format", "json"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::ordered_json::parse(a.out);
  const std::vector<std::string> keys = {"command", "config", "results", "certificates"};
  std::size_t k = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it) EXPECT_EQ(it.key(), keys[k++]);
}

TEST(CliVerify, SmallSuitesPass) {
  auto r = run_cli({"verify", "--suite", "identities", "--m-range", "2..3", "--n-range", "2..3",
                    "--samples", "20"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("spread 0"), std::string::npos);
  r = run_cli({"verify", "--suite", "freeness,witness,claim1,expected", "--m-range", "3",
               "--n-range", "2", "--trials", "100", "--baselines", "2", "--samples", "10"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(CliVerify, AlphaZeroIsAFindingNotAFailure) {
  auto r = run_cli({"verify", "--alpha", "0"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"verify", "--alpha", "0", "--permissive", "--suite", "freeness,edge-case,witness",
               "--m-range", "3", "--n-range", "2", "--trials", "200", "--baselines", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("EXPECTED FINDING"), std::string::npos);
}

TEST(CliVerify, ConfigurationErrors) {
  EXPECT_EQ(run_cli({"verify", "--suite", "nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--m-range", "1..3"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--m-range", "x"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, 2);
}

TEST(CliOutput, CsvEscaping) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  const auto r = run_cli({"verify", "--suite", "baseline", "--samples", "5", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("suite,property,scope,status,detail\r\n", 0), 0u);
}
