#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "schubert/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "schubert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = schubert::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("schubert_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Count) {
  auto r = run({"count", "--q", "2", "--m", "4", "--l", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "35\n");
  r = run({"count", "--q", "2", "--m", "4", "--alpha", "2,4", "--flag", "standard"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "19\n");
  r = run({"count", "--q", "2", "--m", "4", "--alpha", "2,4", "--formula"});
  EXPECT_EQ(r.out, "19\n");
  r = run({"count", "--p", "3", "--m", "4", "--l", "2", "--json"});
  EXPECT_EQ(json::parse(r.out)["count"], 130);
}

TEST_F(Cli, IndexSetVerbs) {
  EXPECT_EQ(run({"dual-alpha", "--m", "4", "--alpha", "1,4"}).out, "2,3\n");
  EXPECT_EQ(run({"alpha-nc", "--m", "4", "--alpha", "1,2,4"}).out, "2,4\n");
  const auto r = run({"dual-alpha", "--m", "4", "--alpha", "2,4", "--json"});
  EXPECT_EQ(json::parse(r.out)["beta"], json::array({2, 4}));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"count", "--q", "6", "--m", "4", "--l", "2"}).code, 2);
  EXPECT_EQ(run({"count", "--q", "2", "--m", "4", "--alpha", "0,4"}).code, 2);
  EXPECT_EQ(run({"count", "--q", "2", "--m", "4", "--alpha", "2,x"}).code, 2);
  EXPECT_EQ(run({"count", "--q", "2", "--m", "4", "--l", "3", "--alpha", "2,4"}).code, 2);
  EXPECT_EQ(run({"count", "--q", "4", "--p", "3", "--m", "4", "--l", "2"}).code, 2);
  EXPECT_EQ(run({"eq", "missing_a.json", "missing_b.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, MalformedInputs) {
  const auto bad = write("bad.json", "{ not json");
  const auto good = run({"gen-flag", "--q", "2", "--m", "4", "--alpha", "2,4"}).out;
  const auto a = write("a.json", good);
  EXPECT_EQ(run({"eq", bad, a}).code, 2);
  const auto singular = write("singular.json", R"({"q":2,"m":2,"matrix":[[1,1],[1,1]],"frobenius_power":0,"dual":false})");
  const auto v = write("v.json", run({"gen-flag", "--q", "2", "--m", "2", "--alpha", "1"}).out);
  EXPECT_EQ(run({"aut-check", singular, v}).code, 2);
  const auto wrong_dims = write("dims.json", R"({"q":2,"m":4,"alpha":[1,2],"subspaces":[[[1,0,0,0],[0,1,0,0]],[[1,0,0,0]]]})");
  EXPECT_EQ(run({"eq", wrong_dims, a}).code, 2);
  const auto bad_entry = write("entry.json", R"({"q":2,"m":4,"alpha":[1,4],"subspaces":[[[2,0,0,0]],[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]]})");
  EXPECT_EQ(run({"eq", bad_entry, a}).code, 2);
}

TEST_F(Cli, GenFlagFeedsEqAndRoundTrips) {
  const auto text = run({"gen-flag", "--q", "3", "--m", "4", "--alpha", "1,3", "--seed", "5"}).out;
  const auto a = write("a.json", text);
  const auto b = write("b.json", run({"gen-flag", "--q", "3", "--m", "4", "--alpha", "1,3", "--seed", "6"}).out);
  auto r = run({"eq", a, a});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "equal\n");
  r = run({"eq", a, b, "--both", "--witness", "--json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["fast"], j["oracle"]);
  if (!j["equal"].get<bool>()) {
    EXPECT_TRUE(j.contains("witness"));
  }
  // canonical forms re-serialise byte for byte
  const auto flag = schubert::io::variety_from_json(json::parse(text));
  EXPECT_EQ(schubert::io::flag_to_json(flag.flag(), flag.field()).dump() + "\n", text);
  // and the same seed gives the same file
  EXPECT_EQ(run({"gen-flag", "--q", "3", "--m", "4", "--alpha", "1,3", "--seed", "5"}).out, text);
}

TEST_F(Cli, Points) {
  auto r = run({"points", "--q", "2", "--m", "4", "--alpha", "2,4", "--count-only"});
  EXPECT_EQ(r.out, "19\n");
  r = run({"points", "--q", "2", "--m", "4", "--alpha", "2,4", "--json", "--limit", "5"});
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["count"], 5);
  EXPECT_EQ(j["points"].size(), 5u);
  EXPECT_TRUE(j["truncated"].get<bool>());
  r = run({"points", "--q", "2", "--m", "4", "--alpha", "1,2"});
  EXPECT_EQ(r.out, "[[1,0,0,0],[0,1,0,0]]\n");
}

TEST_F(Cli, BudgetExitCodeAndEnvironment) {
  auto r = run({"points", "--q", "2", "--m", "4", "--alpha", "2,4", "--budget", "10"});
  EXPECT_EQ(r.code, 3);
  ::setenv(schubert::cli::kBudgetEnv, "10", 1);
  r = run({"points", "--q", "2", "--m", "4", "--alpha", "2,4"});
  EXPECT_EQ(r.code, 3);
  r = run({"points", "--q", "2", "--m", "4", "--alpha", "2,4", "--budget", "100", "--count-only"});
  EXPECT_EQ(r.code, 0);
  ::setenv(schubert::cli::kBudgetEnv, "lots", 1);
  EXPECT_EQ(run({"points", "--q", "2", "--m", "4", "--alpha", "2,4"}).code, 2);
  ::unsetenv(schubert::cli::kBudgetEnv);
  EXPECT_EQ(run({"census", "--q", "3", "--m", "5", "--alpha", "1,5", "--mode", "exhaustive"}).code, 3);
}

TEST_F(Cli, MapsActImageAutCheck) {
  const auto v = write("v.json", run({"gen-flag", "--q", "2", "--m", "4", "--alpha", "2,4", "--seed", "3"}).out);
  const auto t = write("t.json", run({"gen-map", "--q", "2", "--m", "4", "--seed", "5", "--dual"}).out);
  auto r = run({"image", t, v, "--check", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["pointwise_match"].get<bool>());
  EXPECT_EQ(j["image"]["alpha"], json::array({2, 4}));

  r = run({"aut-check", t, v, "--both", "--json"});
  EXPECT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_TRUE(j["agree"].get<bool>());

  const auto s = write("s.json", run({"gen-map", "--stabilizing", v, "--seed", "2", "--dual"}).out);
  r = run({"aut-check", s, v, "--both", "--json"});
  j = json::parse(r.out);
  EXPECT_TRUE(j["fast"].get<bool>());
  EXPECT_TRUE(j["oracle"].get<bool>());

  r = run({"act", t, v, "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["zero_member"].get<bool>());

  const auto w = write("w.json", "[[1,0,0,0],[0,1,0,0]]");
  r = run({"act", s, w, "--q", "2"});
  EXPECT_EQ(r.code, 0);

  EXPECT_EQ(run({"aut-check", t, v, "--fast", "--oracle"}).code, 2);
}

TEST_F(Cli, ChowWarningGoesToStderr) {
  const auto v = write("v.json", run({"gen-flag", "--q", "2", "--m", "3", "--alpha", "1", "--seed", "3"}).out);
  const auto t = write("t.json", run({"gen-map", "--q", "2", "--m", "3", "--seed", "1"}).out);
  const auto r = run({"aut-check", t, v, "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_TRUE(json::accept(r.out));
}

TEST_F(Cli, VerifyExitCodeMatchesVerdict) {
  auto r = run({"verify", "main", "--q", "2", "--m", "4", "--l", "2", "--trials", "60", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["verdict"], "pass");
  r = run({"verify", "main", "--q", "2", "--m", "4", "--l", "2", "--trials", "200", "--json", "--mutation",
           "skip-contravariant-set"});
  EXPECT_EQ(r.code, 1);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["verdict"], "fail");
  ASSERT_FALSE(report["failures"].empty());

  // every failure replays through the CLI
  const auto d = write("d.json", report["failures"][0].dump());
  const auto rep = run({"replay", d, "--json"});
  EXPECT_EQ(rep.code, 1);
  EXPECT_TRUE(json::parse(rep.out)["reproduced"].get<bool>());

  EXPECT_EQ(run({"verify", "nope", "--q", "2", "--m", "4", "--l", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "dual-action", "--q", "2", "--m", "5", "--l", "2"}).code, 2);
  r = run({"verify", "all", "--q", "2", "--m", "4", "--l", "2", "--trials", "30", "--flags-per-alpha", "5"});
  EXPECT_EQ(r.code, 0);
}

TEST_F(Cli, JsonIsByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> cmds = {
      {"verify", "equality", "--q", "2", "--m", "4", "--l", "2", "--trials", "50", "--seed", "9", "--json"},
      {"verify", "kl", "--q", "2", "--m", "4", "--l", "2", "--flags-per-alpha", "5", "--json", "--threads", "3"},
      {"census", "--q", "2", "--m", "3", "--alpha", "1,3", "--json"},
      {"census", "--q", "3", "--m", "4", "--alpha", "2,4", "--mode", "sampled", "--samples", "200", "--json"},
      {"gen-map", "--q", "9", "--m", "4", "--seed", "4"},
      {"points", "--q", "3", "--m", "4", "--alpha", "1,4", "--json"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << c[0];
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST_F(Cli, CensusCountsLineStabilizer) {
  const auto r = run({"census", "--q", "2", "--m", "4", "--alpha", "1,4", "--flag", "standard", "--oracle-check", "all",
                      "--json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["stats"]["fast_count"], 1344);
  EXPECT_EQ(j["stats"]["oracle_count"], 1344);
  EXPECT_EQ(j["parameters"]["mode"], "exhaustive");
}

TEST_F(Cli, Field) {
  EXPECT_EQ(run({"field", "--q", "9"}).out, "q=9 p=3 e=2 modulus=1,0,1\n");
  EXPECT_EQ(run({"field", "--p", "2", "--e", "3"}).out, "q=8 p=2 e=3 modulus=1,0,1,1\n");
}
