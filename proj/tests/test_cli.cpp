#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace smartload;
using namespace smartload::test;

namespace {

const std::string kFixtureDir{SMARTLOAD_FIXTURE_DIR};

// Late 2012 into early 2013, so split year 2012 leaves a short test year.
SyntheticOptions small_synthetic() {
  SyntheticOptions s;
  s.first_year = 2012;
  s.start_day = 320;
  s.days = 60;
  s.seed = 5;
  return s;
}

void write_small_config(const TempDir& dir) {
  write_file(dir.path() / "run.toml",
             "[input]\n"
             "meter_csv = \"meter.csv\"\n"
             "holiday_csv = \"holidays.csv\"\n"
             "[model]\n"
             "num_leaves = 8\n"
             "min_leaf_instances = 5\n"
             "learning_rate = 0.3\n"
             "num_trees = 10\n"
             "[forest]\n"
             "tree_count = 2\n"
             "num_leaves = 16\n"
             "[tuning]\n"
             "split_year = 2012\n"
             "m = 3\n"
             "num_trees = [5, 15]\n"
             "num_leaves = [2, 16]\n");
}

std::string predictions_csv(int days) {
  std::ostringstream out;
  out << "timestamp,actual,gbdt\n";
  LoadSeries clock{*parse_date("2014-03-01"), {}};
  for (std::size_t i = 0; i < static_cast<std::size_t>(days) * kSlotsPerDay; ++i) {
    out << format_slot_time(clock.timestamp(i)) << ',' << 1.0 + i % 7 << ',' << 2.0 << '\n';
  }
  return out.str();
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("validate-fixture"), std::string::npos);
  EXPECT_EQ(run_cli({"tune", "--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"tune", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run_cli({"tune", "--metric", "mape"}).code, 2);

  TempDir dir;
  write_synthetic(dir, small_synthetic());
  r = run_cli({"tune", "--meter", dir.str("meter.csv"), "--out", dir.str("out")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
  EXPECT_EQ(run_cli({"ingest", "--out", dir.str("out")}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--seed", "1", "--out", dir.str("s"), "--gap-fraction", "1.5"}).code, 2);
}

TEST(Cli, DataErrorsExitWithOne) {
  TempDir dir;
  auto r = run_cli({"ingest", "--meter", dir.str("missing.csv"), "--out", dir.str("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  write_file(dir.path() / "bad.csv", "not,a,meter,file\n");
  EXPECT_EQ(run_cli({"ingest", "--meter", dir.str("bad.csv"), "--out", dir.str("out")}).code, 1);
  write_file(dir.path() / "model.json", "{\"schema\": \"nope\"}");
  write_synthetic(dir, small_synthetic());
  EXPECT_EQ(run_cli({"predict", "--meter", dir.str("meter.csv"), "--model", dir.str("model.json"), "--out",
                 dir.str("out")}).code,
            1);
}

TEST(Cli, ValidateFixture) {
  TempDir dir;
  auto r = run_cli({"validate-fixture", kFixtureDir + "/appendix_a.csv", "--table2", kFixtureDir + "/table2.csv", "--out",
                dir.str("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fixture consistent (80 rows)"), std::string::npos);
  const auto j = Json::parse(slurp(dir.path() / "out" / "fixture_report.json"));
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["tables"].size(), 5u);
  EXPECT_EQ(j["published_test_nrmse"].size(), 5u);

  auto text = slurp(kFixtureDir + "/appendix_a.csv");
  text.replace(text.find("0.264028"), 8, "0.274028");
  write_file(dir.path() / "tampered.csv", text);
  r = run_cli({"validate-fixture", dir.str("tampered.csv"), "--out", dir.str("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("INCONSISTENT"), std::string::npos);
}

TEST(Cli, EvaluateIdenticalFilesScoresPerfectly) {
  TempDir dir;
  write_file(dir.path() / "p.csv", "value\n1\n2\n3.5\n4\n");
  auto r = run_cli({"evaluate", "--pred", dir.str("p.csv"), "--actual", dir.str("p.csv"), "--out", dir.str("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = Json::parse(slurp(dir.path() / "out" / "metrics.json"))["metrics"];
  EXPECT_EQ(m["mae"].get<double>(), 0.0);
  EXPECT_EQ(m["rmse"].get<double>(), 0.0);
  EXPECT_EQ(m["rse"].get<double>(), 0.0);
  EXPECT_EQ(m["cod"].get<double>(), 1.0);
  EXPECT_EQ(m["n"].get<int>(), 4);
  EXPECT_EQ(run_cli({"evaluate", "--pred", dir.str("p.csv"), "--out", dir.str("out")}).code, 2);
}

TEST(Cli, ReportEmitsOneWeekOfSlots) {
  TempDir dir;
  write_file(dir.path() / "pred.csv", predictions_csv(10));
  auto r = run_cli({"report", "--pred", dir.str("pred.csv"), "--days", "7", "--scale", "1000", "--out", dir.str("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream plot(slurp(dir.path() / "out" / "plot_data.csv"));
  std::string line;
  std::getline(plot, line);
  EXPECT_EQ(line, "period_index,actual_scaled,predicted_scaled");
  std::size_t rows = 0;
  while (std::getline(plot, line)) {
    if (rows == 0) {
      EXPECT_EQ(line, "0,1000,2000");
    }
    ++rows;
  }
  EXPECT_EQ(rows, 336u);

  r = run_cli({"report", "--pred", dir.str("pred.csv"), "--start", "2015-01-01", "--out", dir.str("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no predictions"), std::string::npos);
}

TEST(Cli, EndToEndIsDeterministic) {
  TempDir dir;
  write_small_config(dir);
  auto r = run_cli({"synth", "--seed", "5", "--first-year", "2012", "--start-day", "320", "--days", "60", "--out",
                dir.str("")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir.path() / "meter.csv"), [] {
    std::ostringstream s;
    write_wide_csv(s, generate_synthetic(small_synthetic()).records);
    return s.str();
  }());

  const auto config = dir.str("run.toml");
  for (const auto* cmd : {"ingest", "impute", "featurize"}) {
    r = run_cli({cmd, "--config", config, "--out", dir.str("prep")});
    ASSERT_EQ(r.code, 0) << cmd << ": " << r.err;
  }
  const auto imputation = Json::parse(slurp(dir.path() / "prep" / "imputation_report.json"));
  EXPECT_EQ(imputation["short_gap_threshold"].get<int>(), 4);
  EXPECT_EQ(imputation["provenance"]["command"], "impute");
  EXPECT_EQ(Json::parse(slurp(dir.path() / "prep" / "featurize_report.json"))["columns"].size(), 30u);

  for (const auto* out : {"a", "b"}) {
    r = run_cli({"tune", "--config", config, "--seed", "9", "--out", dir.str(out)});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run_cli({"predict", "--config", config, "--model", dir.str(out) + "/model.json", "--out", dir.str(out)});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run_cli({"evaluate", "--config", config, "--model", dir.str(out) + "/model.json", "--out", dir.str(out)});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const auto* file : {"tuning_result.json", "model.json", "predictions.csv", "metrics.json"}) {
    EXPECT_EQ(slurp(dir.path() / "a" / file), slurp(dir.path() / "b" / file)) << file;
  }

  const auto tuning = Json::parse(slurp(dir.path() / "a" / "tuning_result.json"));
  EXPECT_EQ(tuning["candidates"].size(), 3u);
  EXPECT_EQ(tuning["selection_metric"], "mae");
  EXPECT_EQ(tuning["provenance"]["seed"].get<int>(), 9);
  EXPECT_EQ(tuning["provenance"]["config_hash"].get<std::string>().empty(), false);
  const auto metrics = Json::parse(slurp(dir.path() / "a" / "metrics.json"));
  EXPECT_EQ(metrics["split_year"].get<int>(), 2012);
  EXPECT_GT(metrics["rows"].get<int>(), 0);
  for (const auto* key : {"gbdt", "forest", "stack", "day_minus_1_baseline"}) {
    EXPECT_TRUE(metrics[key].contains("nrmse")) << key;
  }

  // Every predicted row is after the split year.
  std::istringstream pred(slurp(dir.path() / "a" / "predictions.csv"));
  std::string line;
  std::getline(pred, line);
  EXPECT_EQ(line, "timestamp,actual,gbdt,forest,stack,day_minus_1");
  while (std::getline(pred, line)) EXPECT_EQ(line.substr(0, 4), "2013");
}

TEST(Cli, FlagsOverrideConfig) {
  TempDir dir;
  write_synthetic(dir, small_synthetic());
  write_small_config(dir);
  const auto config = dir.str("run.toml");
  auto r = run_cli({"train", "--config", config, "--seed", "3", "--out", dir.str("cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto model = Json::parse(slurp(dir.path() / "cfg" / "model.json"));
  EXPECT_EQ(model["gbdt"]["hyperparams"]["num_trees"].get<int>(), 10);
  EXPECT_EQ(model["forest"]["trees"].size(), 2u);
  EXPECT_EQ(model["split_year"].get<int>(), 2012);

  // A split year past the data leaves no test rows.
  r = run_cli({"train", "--config", config, "--seed", "3", "--split-year", "2013", "--out", dir.str("cfg")});
  EXPECT_EQ(r.code, 1);

  r = run_cli({"tune", "--config", config, "--seed", "3", "--m", "2", "--metric", "rmse", "--out", dir.str("flags")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto tuning = Json::parse(slurp(dir.path() / "flags" / "tuning_result.json"));
  EXPECT_EQ(tuning["candidates"].size(), 2u);
  EXPECT_EQ(tuning["selection_metric"], "rmse");

  write_file(dir.path() / "typo.toml", "[model]\nnum_leafs = 3\n");
  EXPECT_EQ(run_cli({"train", "--config", dir.str("typo.toml"), "--seed", "1", "--out", dir.str("x")}).code, 1);
}
