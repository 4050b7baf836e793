#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saqc/experiments.hpp"

using namespace saqc;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.n = 4;
  c.instance_count = 3;
  c.delta_grid = {1.0, 2.0};
  c.grid_points = 21;
  c.seed = 77;
  return c;
}

const SweepResult& small_sweep() {
  static const SweepResult r = run_sweep(small_config());
  return r;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_rows_csv(os, rows);
  return os.str();
}

SweepRow synthetic(int instance, double delta, Mode mode, double g, int bf = -1, int uc = -1) {
  SweepRow r;
  r.instance_id = instance;
  r.n = 4;
  r.m = 17;
  r.solution = Assignment(4, 0);
  r.delta = delta;
  r.mode = mode;
  r.g_min = g;
  if (mode == Mode::saqc) {
    r.guess = Assignment(4, static_cast<std::uint64_t>(bf));
    r.bf = bf;
    r.uc = uc;
  }
  return r;
}

}  // namespace

TEST(Sweep, RowCountArithmetic) {
  const SweepResult& r = small_sweep();
  EXPECT_EQ(r.instances.size(), 3U);
  EXPECT_EQ(r.rows.size(), 3U * 2U * (1U + 16U));
  for (const SweepRow& row : r.rows) EXPECT_TRUE(row.error.empty()) << row.error;
}

TEST(Sweep, InstancesHaveDistinctSolutions) {
  std::set<std::uint64_t> sols;
  for (const CnfInstance& inst : small_sweep().instances) {
    EXPECT_EQ(count_satisfying(inst), 1U);
    sols.insert(inst.solution().bits());
  }
  EXPECT_EQ(sols.size(), 3U);
}

TEST(Sweep, GuessAtSolutionHasZeroMetrics) {
  for (const SweepRow& row : small_sweep().rows)
    if (row.guess && *row.guess == row.solution) {
      EXPECT_EQ(row.bf, 0);
      EXPECT_EQ(row.uc, 0);
    }
}

TEST(Sweep, BitFlipHistogramIsBinomial) {
  std::map<std::tuple<int, double, int>, int> hist;
  for (const SweepRow& row : small_sweep().rows)
    if (row.mode == Mode::saqc) ++hist[{row.instance_id, row.delta, row.bf}];
  const int binom[] = {1, 4, 6, 4, 1};
  for (const auto& [key, count] : hist) EXPECT_EQ(count, binom[std::get<2>(key)]);
}

TEST(Sweep, RowsSortedAndBaselineAttached) {
  const auto& rows = small_sweep().rows;
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); }));
  for (const SweepRow& row : rows) {
    if (row.mode == Mode::saqc) {
      EXPECT_FALSE(std::isnan(row.g_min_caqc));
      EXPECT_EQ(row.gap_at_start, 1.0);
    }
    EXPECT_GT(row.g_min, 0.0);
    EXPECT_LE(row.e_measured, row.e_bound);
  }
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  SweepConfig c = small_config();
  c.jobs = 3;
  EXPECT_EQ(csv_of(run_sweep(c).rows), csv_of(small_sweep().rows));
}

TEST(Sweep, GuessSubsetIsSeeded) {
  SweepConfig c = small_config();
  c.guess_count = 5;
  const auto a = sweep_guesses(c, 1), b = sweep_guesses(c, 1);
  ASSERT_EQ(a.size(), 5U);
  EXPECT_EQ(a, b);
  EXPECT_NE(sweep_guesses(c, 2), a);
}

TEST(Sweep, ResumesFromCheckpoint) {
  const std::string path = (std::filesystem::temp_directory_path() / "saqc_ckpt_test.jsonl").string();
  std::filesystem::remove(path);
  SweepConfig c = small_config();
  c.instance_count = 2;
  c.delta_grid = {1.5};
  c.checkpoint_path = path;
  const SweepResult first = run_sweep(c);
  EXPECT_EQ(first.resumed, 0U);

  // Keep the first ten lines and a torn eleventh, as after an interruption.
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  ASSERT_EQ(lines.size(), first.rows.size());
  {
    std::ofstream out(path, std::ios::trunc);
    for (int i = 0; i < 10; ++i) out << lines[static_cast<std::size_t>(i)] << '\n';
    out << lines[10].substr(0, lines[10].size() / 2);
  }
  const SweepResult second = run_sweep(c);
  EXPECT_EQ(second.resumed, 10U);
  EXPECT_EQ(csv_of(second.rows), csv_of(first.rows));
  std::filesystem::remove(path);
}

TEST(Config, ValidationListsEveryProblem) {
  SweepConfig c;
  c.n = 2;
  c.delta_grid = {1.0, -1.0};
  c.jobs = 0;
  c.hat = "bogus";
  const auto errs = validate(c);
  EXPECT_EQ(errs.size(), 4U);
  try {
    require_valid(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
    const std::string msg = e.what();
    for (const char* field : {"n:", "deltas:", "jobs:", "hat:"}) EXPECT_NE(msg.find(field), std::string::npos);
  }
}

TEST(Config, Presets) {
  const SweepConfig d = preset("desk7");
  EXPECT_EQ(d.n, 7);
  EXPECT_EQ(d.instances(), 16);
  EXPECT_EQ(d.delta_grid.size(), 6U);
  EXPECT_EQ(preset("full6").instances(), 64);
  EXPECT_EQ(preset("full6").delta_grid.size(), 20U);
  EXPECT_THROW(preset("nope"), Error);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  const SweepConfig c = small_config();
  const SweepConfig back = sweep_config_from_json(to_json(c));
  EXPECT_EQ(back.n, c.n);
  EXPECT_EQ(back.delta_grid, c.delta_grid);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_THROW(sweep_config_from_json(nlohmann::json{{"n", 6}, {"nn", 7}}), Error);
  EXPECT_THROW(sweep_config_from_json(nlohmann::json{{"n", "six"}}), Error);
}

TEST(Rows, CsvRoundTrip) {
  const auto& rows = small_sweep().rows;
  std::istringstream in(csv_of(rows));
  const auto back = read_rows_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].key(), rows[i].key());
    EXPECT_EQ(back[i].g_min, rows[i].g_min);
    EXPECT_EQ(back[i].e_bound, rows[i].e_bound);
    EXPECT_EQ(back[i].bf, rows[i].bf);
  }
  EXPECT_EQ(csv_of(back), csv_of(rows));
}

TEST(Rows, CsvHeaderAndCaqcBlanks) {
  const std::string text = csv_of({synthetic(0, 1.0, Mode::caqc, 0.5)});
  EXPECT_EQ(text, std::string(kRowsCsvHeader) + "\n0,4,17,0000,,,,1,CAQC,0.5,0,0,0\n");
}

TEST(Rows, JsonRoundTrip) {
  const SweepRow r = small_sweep().rows.at(5);
  const SweepRow back = row_from_json(to_json(r));
  EXPECT_EQ(back.key(), r.key());
  EXPECT_EQ(back.s_star, r.s_star);
}

TEST(Stats, MedianConventions) {
  EXPECT_EQ(median({3.0}), 3.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0}), 3.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(median({}), Error);
}

TEST(Stats, GroupMedians) {
  std::vector<SweepRow> rows{synthetic(0, 1.0, Mode::caqc, 0.2), synthetic(0, 1.0, Mode::saqc, 0.1, 1, 2),
                             synthetic(0, 1.0, Mode::saqc, 0.3, 1, 2), synthetic(0, 1.0, Mode::saqc, 0.9, 2, 0)};
  const auto by_bf = median_by_group(rows, GroupKey::bf);
  ASSERT_EQ(by_bf.size(), 2U);
  EXPECT_EQ(by_bf[0].value, 1);
  EXPECT_DOUBLE_EQ(by_bf[0].median_g_min, 0.2);
  EXPECT_EQ(by_bf[0].count, 2U);
  const auto by_uc = median_by_group(rows, GroupKey::uc);
  EXPECT_EQ(by_uc[0].value, 0);
  EXPECT_EQ(caqc_medians(rows).at(0).median_g_min, 0.2);
  EXPECT_DOUBLE_EQ(pooled_saqc_medians(rows).at(1.0), 0.3);
}

TEST(Curves, CriteriaAndConditioning) {
  const double gc = 0.2;
  std::vector<SweepRow> rows{synthetic(0, 1.0, Mode::caqc, gc),
                             synthetic(0, 1.0, Mode::saqc, gc, 3, 1),                     // equal: counts for >=
                             synthetic(0, 1.0, Mode::saqc, std::sqrt(2.0) * gc, 4, 1),    // exactly sqrt2
                             synthetic(0, 1.0, Mode::saqc, 0.1, 1, 0)};
  const auto curves = probability_curves(rows);
  EXPECT_DOUBLE_EQ(find_curve(curves, kCriterionGe).at(1.0)->probability, 2.0 / 3);
  EXPECT_DOUBLE_EQ(find_curve(curves, kCriterionGeSqrt2).at(1.0)->probability, 1.0 / 3);
  const auto bf34 = *find_curve(curves, kCriterionGeSqrt2Bf34).at(1.0);
  EXPECT_EQ(bf34.count, 2U);
  EXPECT_DOUBLE_EQ(bf34.probability, 0.5);
  EXPECT_EQ(find_curve(curves, "saqc_ge_sqrt2_caqc|uc=0").at(1.0)->probability, 0.0);
  EXPECT_FALSE(find_curve(curves, kCriterionGe).at(2.0).has_value());
  EXPECT_THROW(find_curve(curves, "saqc_ge_sqrt2_caqc|uc=9"), Error);
}

TEST(Curves, EmptyConditionalCurveHasNoPoints) {
  std::vector<SweepRow> rows{synthetic(0, 1.0, Mode::caqc, 0.2), synthetic(0, 1.0, Mode::saqc, 0.3, 1, 0)};
  EXPECT_TRUE(find_curve(probability_curves(rows), kCriterionGeSqrt2Bf34).points.empty());
}

TEST(Curves, MissingBaselineIsStateError) {
  try {
    probability_curves({synthetic(0, 1.0, Mode::saqc, 0.3, 1, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::state);
  }
}

TEST(Curves, CsvShape) {
  std::ostringstream os;
  write_curves_csv(os, probability_curves(small_sweep().rows));
  EXPECT_EQ(os.str().rfind("criterion,delta,probability,count\n", 0), 0U);
}

TEST(TwoTrial, KnownValues) {
  EXPECT_NEAR(two_trial_success(0.39), 0.6279, 1e-12);
  EXPECT_EQ(two_trial_success(0.0), 0.0);
  EXPECT_EQ(two_trial_success(1.0), 1.0);
  EXPECT_THROW(two_trial_success(1.5), Error);
}
