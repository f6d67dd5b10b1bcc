#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lsp/lsp.hpp"

namespace lsp {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("lsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const CliRun gen = run({"generate", "--num-samples", "10", "--num-classes", "3", "--min-nodes", "6",
                         "--max-nodes", "12", "--node-dim", "3", "--edge-dim", "2", "--seed", "4", "--output",
                         path("data.lspg")});
    ASSERT_EQ(gen.code, 0) << gen.err;
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenerateBalancedTenBlocks) {
  const auto graphs = read_container(path("data.lspg"));
  ASSERT_EQ(graphs.size(), 10u);
  for (std::size_t i = 0; i < graphs.size(); ++i) EXPECT_EQ(graphs[i].graph_label(), static_cast<std::int64_t>(i % 3));
}

TEST_F(CliTest, GenerateDefaultsWithSampleCount) {
  const CliRun r = run({"generate", "--num-samples", "10", "--output", path("defaults.lspg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto graphs = read_container(path("defaults.lspg"));
  ASSERT_EQ(graphs.size(), 10u);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    EXPECT_EQ(graphs[i].graph_label(), static_cast<std::int64_t>(i));
    EXPECT_EQ(graphs[i].node_dim(), 10u);
  }
  EXPECT_NE(r.out.find("connectivity_rate = 0.2"), std::string::npos) << r.out;
}

TEST_F(CliTest, PruneIsByteIdenticalAcrossRuns) {
  for (const char* tag : {"a", "b"}) {
    const CliRun r = run({"prune", "--input", path("data.lspg"), "--method", "lsp-p", "--k", "4", "--l", "1.0", "--seed",
                       "7", "--output", path(std::string("p_") + tag + ".lspg"), "--report",
                       path(std::string("r_") + tag + ".tsv")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(read_file(path("p_a.lspg")), read_file(path("p_b.lspg")));
  EXPECT_EQ(read_file(path("r_a.tsv")), read_file(path("r_b.tsv")));
  EXPECT_NE(read_file(path("r_a.tsv")).find("TOTAL"), std::string::npos);
}

TEST_F(CliTest, RandomKeepAllReproducesInput) {
  const CliRun r =
      run({"prune", "--input", path("data.lspg"), "--method", "random", "--p", "1.0", "--output", path("all.lspg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path("all.lspg")), read_file(path("data.lspg")));
}

TEST_F(CliTest, EchoedConfigReplays) {
  const CliRun first = run({"prune", "--input", path("data.lspg"), "--method", "lsp-t", "--k", "3", "--m", "256",
                         "--seed", "11", "--output", path("first.lspg")});
  ASSERT_EQ(first.code, 0) << first.err;
  write_file(path("echo.cfg"), first.out);
  const CliRun again = run({"prune", "--config", path("echo.cfg")});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, first.out);

  // Flags override the file.
  const CliRun overridden = run({"prune", "--config", path("echo.cfg"), "--output", path("second.lspg")});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_EQ(read_file(path("first.lspg")), read_file(path("second.lspg")));
}

TEST_F(CliTest, FamilySidecarReplay) {
  ASSERT_EQ(run({"prune", "--input", path("data.lspg"), "--seed", "3", "--family-out", path("fam.lspf"), "--output",
                 path("x.lspg")})
                .code,
            0);
  const CliRun replay = run({"prune", "--input", path("data.lspg"), "--family-in", path("fam.lspf"), "--output",
                          path("y.lspg")});
  ASSERT_EQ(replay.code, 0) << replay.err;
  EXPECT_EQ(read_file(path("x.lspg")), read_file(path("y.lspg")));
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"prune", "--input", path("data.lspg")}).code, cli::kUsage);
  const CliRun p_with_lsh =
      run({"prune", "--input", path("data.lspg"), "--output", path("o.lspg"), "--method", "lsp-p", "--p", "0.5"});
  EXPECT_EQ(p_with_lsh.code, cli::kUsage);
  EXPECT_EQ(run({"prune", "--input", path("data.lspg"), "--output", path("o.lspg"), "--k", "zero"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"prune", "--input", path("data.lspg"), "--output", path("o.lspg"), "--method", "lsp-t", "--m",
                 "1000"})
                .code,
            cli::kUsage);
  EXPECT_EQ(run({"generate", "--output", path("o.lspg"), "--min-nodes", "0"}).code, cli::kUsage);
  write_file(path("bad.cfg"), "colour = blue\n");
  EXPECT_EQ(run({"prune", "--config", path("bad.cfg")}).code, cli::kUsage);
}

TEST(Cli, HelpPrintsOnceAndExitsZero) {
  const CliRun top = run({"--help"});
  EXPECT_EQ(top.code, cli::kOk);
  EXPECT_NE(top.out.find("Usage: lsp"), std::string::npos) << top.out;
  const CliRun sub = run({"prune", "--help"});
  EXPECT_EQ(sub.code, cli::kOk);
  const auto first = sub.out.find("--method");
  ASSERT_NE(first, std::string::npos) << sub.out;
  EXPECT_EQ(sub.out.find("--method", first + 1), std::string::npos) << sub.out;
}

TEST_F(CliTest, DataErrorsExitTwoWithOneLine) {
  write_file(path("broken.lspg"), "lspg 1\nG g\nN 3 0\nM 1 0\nnode 0\nnode 1\nnode 2\nedge 0 5\n");
  const CliRun r = run({"prune", "--input", path("broken.lspg"), "--output", path("o.lspg")});
  EXPECT_EQ(r.code, cli::kData);
  EXPECT_NE(r.err.find("out-of-range-index"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(":8:"), std::string::npos) << r.err;
  EXPECT_EQ(run({"prune", "--input", path("missing.lspg"), "--output", path("o.lspg")}).code, cli::kData);
}

TEST_F(CliTest, StatsTable) {
  const CliRun r = run({"stats", "--input", path("data.lspg"), "--graph", "1", "--depths", "1,2", "--fractions",
                     "0.5,1", "--trials", "2", "--output", path("stats.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string table = read_file(path("stats.tsv"));
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 22), "method\ttarget_fraction");
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 4u);
}

TEST_F(CliTest, CompareTable) {
  ASSERT_EQ(run({"prune", "--input", path("data.lspg"), "--k", "1", "--output", path("k1.lspg")}).code, 0);
  const CliRun r = run({"compare", "--input", path("data.lspg"), "--pruned", path("k1.lspg"), "--graph", "0",
                     "--output", path("cmp.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string table = read_file(path("cmp.tsv"));
  EXPECT_EQ(table.substr(0, table.find('\n')), "u\tv\tjaccard_before\tjaccard_after");
}

}  // namespace
}  // namespace lsp
