#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "ospan/instance_io.hpp"
#include "ospan_cli/cli.hpp"

namespace ospan::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ospan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, HelpListsCompatibility) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("l1-lattice"), std::string::npos);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"nonsense"}).code, kUsage);
  EXPECT_EQ(call({"greedy", "--t", "0.5", "--input", path("none.json")}).code, kUsage);
  EXPECT_EQ(call({"greedy", "--t", "2", "--input", path("none.json")}).code, kUsage);
}

TEST_F(Cli, InfeasibleHypercube) {
  const auto r = call({"gen", "hypercube", "--d", "16", "--eps", "0.1", "--size", "500"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_NE(r.err.find("try d >="), std::string::npos);
}

TEST_F(Cli, GenRunVerify) {
  const std::string inst = path("pts.json");
  const std::string sp = path("sp.csv");
  ASSERT_EQ(call({"--seed", "3", "--out", inst, "gen", "uniform", "--n", "60"}).code, kOk);
  EXPECT_TRUE(fs::exists(path("schedule.json")));
  const auto r = call({"--out", sp, "alg1", "--eps", "0.25", "--input", inst, "--trace", path("trace.csv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.err.find("resolved config"), std::string::npos);
  EXPECT_EQ(read_text_file(path("trace.csv")).rfind("step,level,u,v,w\n", 0), 0u);

  const auto ok = call({"verify", "--input", inst, "--spanner", sp, "--bound", "1.5625"});
  EXPECT_EQ(ok.code, kOk) << ok.err;
  EXPECT_NE(ok.out.find("\"max_stretch\""), std::string::npos);

  EXPECT_EQ(call({"verify", "--input", inst, "--spanner", sp, "--bound", "1"}).code, kVerificationFailed);
}

TEST_F(Cli, CompatibilityPairsRoundTrip) {
  struct Pair {
    std::vector<std::string> gen;
    std::vector<std::vector<std::string>> runs;
  };
  const std::vector<Pair> pairs{
      {{"uniform", "--n", "40", "--d", "3"}, {{"alg1", "--eps", "0.5"}, {"greedy", "--t", "1.5"}}},
      {{"hypercube", "--d", "64", "--eps", "0.5", "--size", "8"}, {{"greedy", "--t", "2"}}},
      {{"l1-lattice", "--d", "2", "--eps", "0.125"}, {{"greedy", "--t", "1.125"}}},
      {{"girth", "--k", "2", "--star"}, {{"greedy", "--t", "3"}}},
      {{"uniform-metric", "--n", "12"}, {{"greedy", "--t", "1.5"}, {"hst", "--alpha", "2"}, {"hst2e", "--eps", "0.25"}}},
      {{"random-hst", "--n", "40"}, {{"greedy", "--t", "2"}, {"hst", "--alpha", "3"}, {"hst2e", "--eps", "0.125"}}},
  };
  int idx = 0;
  for (const auto& p : pairs) {
    const std::string inst = path("inst" + std::to_string(idx++) + ".json");
    std::vector<std::string> gen_args{"--out", inst, "gen"};
    gen_args.insert(gen_args.end(), p.gen.begin(), p.gen.end());
    const auto g = call(gen_args);
    ASSERT_EQ(g.code, kOk) << p.gen[0] << ": " << g.err;
    for (auto run_args : p.runs) {
      run_args.insert(run_args.end(), {"--input", inst});
      run_args.insert(run_args.begin(), {"--verify", "prefix"});
      const auto r = call(run_args);
      EXPECT_EQ(r.code, kOk) << p.gen[0] << " " << run_args[2] << ": " << r.err;
      EXPECT_EQ(r.out.rfind("u,v,w\n", 0), 0u);
    }
  }
}

TEST_F(Cli, IncompatiblePairsAreUsageErrors) {
  const std::string inst = path("lattice.json");
  ASSERT_EQ(call({"--out", inst, "gen", "l1-lattice", "--d", "2", "--eps", "0.125"}).code, kOk);
  EXPECT_EQ(call({"alg1", "--eps", "0.25", "--input", inst}).code, kUsage);
  EXPECT_EQ(call({"hst", "--alpha", "2", "--input", inst}).code, kUsage);

  const std::string cube = path("cube.json");
  ASSERT_EQ(call({"--out", cube, "gen", "hypercube", "--d", "64", "--eps", "0.5", "--size", "8"}).code, kOk);
  const auto r = call({"alg1", "--eps", "0.5", "--input", cube});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("cone cover too large"), std::string::npos);
}

TEST_F(Cli, ScheduleSidecarOrder) {
  const std::string inst = path("lattice.json");
  ASSERT_EQ(call({"--out", inst, "gen", "l1-lattice", "--d", "2", "--eps", "0.125"}).code, kOk);
  const auto s = parse_schedule(read_text_file(path("schedule.json")));
  EXPECT_EQ(s.instance, "lattice.json");
  const auto with = call({"greedy", "--t", "1.125", "--input", inst});
  EXPECT_NE(with.err.find("using schedule"), std::string::npos);
  const auto shuffled = call({"--shuffle", "5", "greedy", "--t", "1.125", "--input", inst});
  EXPECT_EQ(shuffled.code, kOk);
  EXPECT_NE(with.out, shuffled.out);
}

TEST_F(Cli, JsonFormat) {
  const std::string inst = path("m.json");
  ASSERT_EQ(call({"--out", inst, "gen", "uniform-metric", "--n", "4"}).code, kOk);
  const auto r = call({"--format", "json", "hst", "--alpha", "2", "--input", inst});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"u\":1"), std::string::npos);
}

TEST_F(Cli, BenchWritesCsv) {
  const std::string spec = path("bench.json");
  write_text_file(spec, R"({"instance": {"generator": "uniform", "n": 30}, "algorithm": "alg1",
                            "grid": {"algorithm.eps": [0.5, 0.25]}})");
  const std::string csv = path("results.csv");
  const auto r = call({"--out", csv, "bench", "--spec", spec});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto text = read_text_file(csv);
  EXPECT_EQ(text.rfind("# ospan bench csv v1\ninstance,algorithm,n,", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);

  write_text_file(spec, R"({"instance": {"generator": "l1-lattice"}, "algorithm": "alg1"})");
  EXPECT_EQ(call({"--out", csv, "bench", "--spec", spec}).code, kInfeasible);
}

}  // namespace
}  // namespace ospan::cli
