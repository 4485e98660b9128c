// Drives the installed-style crq executable through the shell.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("crq_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs crq with `args`, stdout to out.csv and stderr to err.txt.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" CRQ_CLI_PATH "\" " + args + " >\"" + (dir_ / "out.csv").string() +
                            "\" 2>\"" + (dir_ / "err.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::string out() const { return read(dir_ / "out.csv"); }
  std::string err() const { return read(dir_ / "err.txt"); }
  std::string golden(const std::string& name) const { return read(fs::path(CRQ_GOLDEN_DIR) / name); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("delay"), 0);
  EXPECT_EQ(run("validate --slots 20000 --warmup 100 --set tolerance=1e-9"), 1);
  EXPECT_EQ(run("delay --set nonsense=1"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("delay --config /nonexistent/file.cfg"), 2);
}

TEST_F(Cli, ConfigErrorsNameTheLine) {
  const auto cfg = write("bad.cfg", "# comment\nf_pd = 0.3\n\np_q 0.5\n");
  EXPECT_EQ(run("delay --config \"" + cfg.string() + "\""), 2);
  EXPECT_NE(err().find("line 4"), std::string::npos) << err();
}

TEST_F(Cli, HeadersArePinned) {
  for (const std::string cmd : {"region", "delay", "simulate", "validate", "oracle", "tradeoff"}) {
    std::string args = cmd;
    if (cmd == "simulate" || cmd == "validate") args += " --slots 5000 --warmup 10 --set tolerance=1";
    if (cmd == "oracle") args += " --set truncation=60";
    ASSERT_EQ(run(args), 0) << cmd << ": " << err();
    EXPECT_EQ(first_line(out()) + "\n", golden(cmd + ".header")) << cmd;
  }
  ASSERT_EQ(run("optimize --set sweep=lambda_p --set sweep_start=0.05 --set sweep_stop=0.3 --set sweep_steps=3"), 0) << err();
  EXPECT_EQ(first_line(out()) + "\n", golden("optimize.header"));
}

TEST_F(Cli, AnalyticSweepMatchesGoldenFile) {
  ASSERT_EQ(run("delay --set p_q=0.3,0.8 --set sweep=lambda --set sweep_start=0.02 --set sweep_stop=0.2 "
                "--set sweep_steps=4"),
            0)
      << err();
  EXPECT_EQ(out(), golden("delay_sweep.csv"));
}

TEST_F(Cli, RegionPresetMatchesGoldenFile) {
  ASSERT_EQ(run("region --preset region-by-pa"), 0) << err();
  EXPECT_EQ(out(), golden("region_by_pa.csv"));
}

TEST_F(Cli, SimulationOutputIsByteIdentical) {
  const std::string args = "simulate --seed 4242 --slots 30000 --warmup 100 --set sweep=p_a --set sweep_steps=3 "
                           "--set p_q=0.3,0.8";
  ASSERT_EQ(run(args + " --out \"" + (dir_ / "a.csv").string() + "\""), 0) << err();
  ASSERT_EQ(run(args + " --threads 3 --out \"" + (dir_ / "b.csv").string() + "\""), 0) << err();
  ASSERT_EQ(run(args), 0);
  const auto a = read(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read(dir_ / "b.csv"));
  EXPECT_EQ(a, out());
}

TEST_F(Cli, SeedPrecedence) {
  const auto cfg = write("seed.cfg", "seed = 5\n");
  const std::string base = "simulate --slots 2000 --warmup 10 --config \"" + cfg.string() + "\"";
  auto seed_column = [&] {
    std::istringstream in(out());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    // point fields (8), policy, seed
    std::istringstream cells(row);
    std::string cell;
    for (int i = 0; i < 10; ++i) std::getline(cells, cell, ',');
    return cell;
  };
  ASSERT_EQ(run(base), 0) << err();
  EXPECT_EQ(seed_column(), "5");
  ASSERT_EQ(run(base, "CRQ_SEED=6"), 0) << err();
  EXPECT_EQ(seed_column(), "6");
  ASSERT_EQ(run(base + " --seed 7", "CRQ_SEED=6"), 0) << err();
  EXPECT_EQ(seed_column(), "7");
}

}  // namespace
