#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

namespace zoma::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zoma_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& text, const std::string& name = "c.json") {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::vector<std::string>> rows(const fs::path& p) {
    std::vector<std::vector<std::string>> out;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      out.push_back(cells);
    }
    return out;
  }

  fs::path dir_;
  std::ostringstream log_;
  std::ostringstream err_;
};

constexpr const char* kSmall = R"({
  "grid_resolution": 0.2,
  "threads": 1,
  "sweep": {"budgets": [29, 69, 149, 209], "noise_variances_dbm": [], "trials": 2}
})";

TEST_F(CliTest, MapWritesGrid) {
  const auto cfg = write_config(R"({"grid_resolution": 0.5})");
  EXPECT_EQ(cmd_map(cfg, dir_ / "map.csv", {}, log_, err_), kExitOk);
  const auto r = rows(dir_ / "map.csv");
  ASSERT_EQ(r.size(), 1u + 81u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"x", "y", "snr_db"}));
  EXPECT_EQ(r[1][0], "-2");
  EXPECT_EQ(r[1][1], "-2");
}

TEST_F(CliTest, MapIsReproducible) {
  const auto cfg = write_config(R"({"grid_resolution": 0.25})");
  ASSERT_EQ(cmd_map(cfg, dir_ / "a.csv", {}, log_, err_), kExitOk);
  ASSERT_EQ(cmd_map(cfg, dir_ / "b.csv", {}, log_, err_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
}

TEST_F(CliTest, MalformedConfigExitsWithoutOutput) {
  const auto cfg = write_config("{ \"seed\": ");
  EXPECT_EQ(cmd_map(cfg, dir_ / "map.csv", {}, log_, err_), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "map.csv"));
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, InvalidValueExitsWithoutOutput) {
  const auto cfg = write_config(R"({"optimizer": {"beta1": 1.5}})");
  EXPECT_EQ(cmd_compare(cfg, dir_ / "out", {}, log_, err_), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, MissingConfigIsIoError) {
  EXPECT_EQ(cmd_map(dir_ / "absent.json", dir_ / "map.csv", {}, log_, err_),
            kExitIo);
  EXPECT_FALSE(fs::exists(dir_ / "map.csv"));
}

TEST_F(CliTest, UnknownAndMistypedKeysAreAllReported) {
  try {
    parse_config(nlohmann::json::parse(
        R"({"sed": 1, "optimizer": {"step_size": "big"}, "channel": {"paths": 2.5}})"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems().size(), 3u);
  }
}

TEST_F(CliTest, DefaultsDocumentRoundTrips) {
  const ExperimentConfig c = parse_config(default_config_json());
  const ExperimentConfig d;
  EXPECT_EQ(c.master_seed, d.master_seed);
  EXPECT_EQ(c.budgets, d.budgets);
  EXPECT_EQ(c.noise_variances_dbm, d.noise_variances_dbm);
  EXPECT_EQ(c.hyper.step_size, d.hyper.step_size);
  EXPECT_EQ(c.hyper.mu, d.hyper.mu);
  EXPECT_EQ(c.baseline.elevation_count, d.baseline.elevation_count);
  EXPECT_EQ(c.trials, d.trials);
}

TEST_F(CliTest, OverridesTakePrecedence) {
  const auto cfg = write_config(R"({"seed": 3, "sweep": {"trials": 5}})");
  const auto c = resolve_config(cfg, Overrides{11, 2});
  EXPECT_EQ(c.master_seed, 11u);
  EXPECT_EQ(c.trials, 2);
  EXPECT_THROW(resolve_config(cfg, Overrides{std::nullopt, 0}), ConfigError);
}

TEST_F(CliTest, OptimizeWithoutIterationsWritesOnlyInitialization) {
  const auto cfg = write_config(R"({"optimizer": {"iterations": 0}})");
  ASSERT_EQ(cmd_optimize(cfg, dir_ / "t.csv", {}, log_, err_), kExitOk);
  const auto r = rows(dir_ / "t.csv");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1][0], "0");
  EXPECT_NE(log_.str().find("measurements=9"), std::string::npos);
}

TEST_F(CliTest, OptimizeReportsMeasurementCount) {
  const auto cfg = write_config(R"({"optimizer": {"iterations": 30}})");
  ASSERT_EQ(cmd_optimize(cfg, dir_ / "t.csv", {}, log_, err_), kExitOk);
  EXPECT_EQ(rows(dir_ / "t.csv").size(), 32u);
  EXPECT_NE(log_.str().find("measurements=69"), std::string::npos);
  EXPECT_NE(log_.str().find("final_snr_db="), std::string::npos);
  EXPECT_NE(log_.str().find("reference_snr_db="), std::string::npos);
}

TEST_F(CliTest, CompareProducesOnePointPerBudgetAndMethod) {
  const auto cfg = write_config(kSmall);
  ASSERT_EQ(cmd_compare(cfg, dir_ / "out", {}, log_, err_), kExitOk) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "out" / "noise_sweep.csv"));

  const auto raw = rows(dir_ / "out" / "budget_sweep.csv");
  const auto summary = rows(dir_ / "out" / "summary.csv");
  ASSERT_EQ(summary.size(), 1u + 8u);

  std::map<std::string, int> per_method;
  for (std::size_t i = 1; i < summary.size(); ++i) per_method[summary[i][1]]++;
  EXPECT_EQ(per_method["proposed"], 4);
  EXPECT_EQ(per_method["baseline"], 4);

  // Aggregates recomputed from the raw rows.
  for (std::size_t i = 1; i < summary.size(); ++i) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t j = 1; j < raw.size(); ++j) {
      if (raw[j][0] == summary[i][1] && raw[j][1] == summary[i][2]) {
        sum += std::stod(raw[j][3]);
        ++n;
      }
    }
    ASSERT_EQ(n, 2);
    EXPECT_NEAR(sum / n, std::stod(summary[i][3]), 1e-12);
  }
}

TEST_F(CliTest, CompareIsByteIdenticalAcrossRuns) {
  const auto cfg = write_config(R"({
    "grid_resolution": 0.2,
    "sweep": {"budgets": [29, 69], "noise_variances_dbm": [0], "noise_budget": 69, "trials": 2}
  })");
  ASSERT_EQ(cmd_compare(cfg, dir_ / "a", {}, log_, err_), kExitOk);
  ASSERT_EQ(cmd_compare(cfg, dir_ / "b", {}, log_, err_), kExitOk);
  for (const char* f : {"budget_sweep.csv", "noise_sweep.csv", "summary.csv"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(CliTest, CompareRejectsEmptySweeps) {
  const auto cfg = write_config(R"({"sweep": {"budgets": [], "noise_variances_dbm": []}})");
  EXPECT_EQ(cmd_compare(cfg, dir_ / "out", {}, log_, err_), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, ChannelTableListsEveryPath) {
  const auto cfg = write_config(R"({"channel": {"paths": 4}})");
  ASSERT_EQ(cmd_channel(cfg, dir_ / "ch.csv", {}, log_, err_), kExitOk);
  EXPECT_EQ(rows(dir_ / "ch.csv").size(), 5u);
}

}  // namespace
}  // namespace zoma::cli
