#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Output {
  int code = -1;
  std::string text;
};

Output cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SEPPROB_CLI_PATH + "\" " + args + " 2>&1";
  Output out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.text.append(buf, n);
  const int status = pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("sepprob-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, EstimateHelpListsFlags) {
  const auto r = cli("estimate --help");
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--scenario", "--custom", "--alpha0", "--n", "--start", "--interval", "--threads", "--out",
                           "--resume", "--realign", "--conjecture"})
    EXPECT_NE(r.text.find(flag), std::string::npos) << flag;
}

TEST_F(CliTest, TopLevelHelp) {
  const auto r = cli("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"estimate", "exact", "plot", "scenarios"}) EXPECT_NE(r.text.find(sub), std::string::npos);
}

TEST_F(CliTest, ZeroSamplesWritesHeaderOnly) {
  const auto r = cli("estimate --scenario two-qubit-hs --n 0 --out " + path("zero.csv"));
  EXPECT_EQ(r.code, 0) << r.text;
  EXPECT_EQ(line_count(slurp(path("zero.csv"))), 1u);
  EXPECT_TRUE(fs::exists(path("zero.csv.json")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli("estimate --scenario no-such-scenario --n 10 --out " + path("x.csv")).code, 1);
  EXPECT_EQ(cli("estimate --n 10").code, 1);
  EXPECT_EQ(cli("estimate --scenario two-qubit-hs --custom 2,2,real,hs --n 10").code, 1);
  EXPECT_EQ(cli("estimate --scenario two-qubit-hs --bogus").code, 1);
  EXPECT_EQ(cli("exact nonsense").code, 1);
  EXPECT_EQ(cli("").code, 1);
}

TEST_F(CliTest, RunAndResume) {
  const auto direct = path("direct.csv"), split = path("split.csv");
  ASSERT_EQ(cli("estimate --scenario two-qubit-hs --n 20000 --interval 5000 --threads 2 --out " + direct).code, 0);
  const auto first = cli("estimate --scenario two-qubit-hs --n 10000 --interval 5000 --out " + split);
  ASSERT_EQ(first.code, 0) << first.text;
  const auto second = cli("estimate --scenario two-qubit-hs --n 20000 --interval 5000 --resume " + split);
  ASSERT_EQ(second.code, 0) << second.text;

  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
    return out;
  };
  EXPECT_EQ(line_count(slurp(split)), 5u);
  EXPECT_EQ(strip(slurp(split)), strip(slurp(direct)));
  EXPECT_EQ(cli("estimate --scenario two-rebit-hs --n 20000 --resume " + split).code, 2);
}

TEST_F(CliTest, CustomScenario) {
  const auto out = path("custom.csv");
  const auto r = cli("estimate --custom 2,2,real,osz,0.25 --n 3000 --interval 1000 --out " + out);
  EXPECT_EQ(r.code, 0) << r.text;
  const auto text = slurp(out);
  EXPECT_EQ(line_count(text), 4u);
  EXPECT_NE(text.find("custom-2x2-real-osz-0.25,"), std::string::npos);
}

TEST_F(CliTest, ExactPsep) {
  const auto r = cli("exact psep --alpha 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.text.find("0.2424"), std::string::npos) << r.text;
}

TEST_F(CliTest, ExactRegistry) {
  const auto r = cli("exact registry --csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.text.rfind("name,closed_form,value,status,context\n", 0), 0u);
  EXPECT_GE(line_count(r.text), 26u);
}

TEST_F(CliTest, ExactXstateIdentitiesHold) {
  const auto r = cli("exact xstate --csv");
  EXPECT_EQ(r.code, 0) << r.text;
  EXPECT_EQ(line_count(r.text), 7u);
}

TEST_F(CliTest, PlotWritesSvg) {
  const auto csv = path("p.csv"), svg = path("p.svg");
  ASSERT_EQ(cli("estimate --scenario two-qubit-hs --n 4000 --interval 1000 --out " + csv).code, 0);
  const auto r = cli("plot --csv " + csv + " --out " + svg);
  EXPECT_EQ(r.code, 0) << r.text;
  const auto text = slurp(svg);
  EXPECT_EQ(text.rfind("<svg", 0), 0u);
  EXPECT_NE(text.find("<polyline"), std::string::npos);
  EXPECT_EQ(cli("plot --csv " + path("missing.csv")).code, 2);
}

TEST_F(CliTest, ScenariosListsCatalog) {
  const auto r = cli("scenarios");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(r.text), 16u);
  EXPECT_NE(r.text.find("qubit-qudit-2x4-bures"), std::string::npos);
}
