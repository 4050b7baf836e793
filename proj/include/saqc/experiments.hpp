#pragma once

// Instances x guesses x delta sweeps comparing sombrero and conventional
// schedules by minimum gap, plus the grouped statistics built on them.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "saqc/error.hpp"
#include "saqc/hamiltonians.hpp"
#include "saqc/random.hpp"
#include "saqc/sat.hpp"
#include "saqc/spectral.hpp"

namespace saqc {

inline std::vector<double> default_delta_grid() {
  std::vector<double> d;
  for (int k = 1; k <= 20; ++k) d.push_back(0.5 * k);
  return d;
}

struct SweepConfig {
  int n = 6;
  int m = 0;                 // 0: round(4.26 n)
  int instance_count = 16;
  bool cover = false;        // all 2^n distinct-solution instances
  int guess_count = 0;       // 0: every one of the 2^n guesses
  std::vector<double> delta_grid = default_delta_grid();
  int grid_points = 201;
  std::uint64_t seed = 1;
  bool run_caqc = true;
  bool run_saqc = true;
  std::string hat = "three_s_one_minus_s";
  int jobs = 1;
  std::string checkpoint_path;  // empty: no checkpointing

  int clause_count() const { return m > 0 ? m : default_clause_count(n); }
  int instances() const { return cover ? (1 << n) : instance_count; }
  int guesses() const { return guess_count > 0 ? guess_count : (1 << n); }
};

/// Every offending field, one message each.
inline std::vector<std::string> validate(const SweepConfig& c) {
  std::vector<std::string> errs;
  if (c.n < 3 || c.n > 8) errs.push_back("n: must lie in [3, 8] (got " + std::to_string(c.n) + ")");
  if (c.m < 0) errs.push_back("m: must be positive or 0 for the default");
  if (!c.cover && c.instance_count < 1) errs.push_back("instances: must be at least 1");
  if (c.n >= 3 && c.n <= 8 && !c.cover && c.instance_count > (1 << c.n))
    errs.push_back("instances: at most 2^n distinct-solution instances exist");
  if (c.n >= 3 && c.n <= 8 && (c.guess_count < 0 || c.guess_count > (1 << c.n)))
    errs.push_back("guesses: must lie in [0, 2^n]");
  if (c.delta_grid.empty()) errs.push_back("deltas: grid is empty");
  for (double d : c.delta_grid)
    if (!(std::isfinite(d) && d > 0.0)) {
      errs.push_back("deltas: every value must be positive and finite");
      break;
    }
  if (c.grid_points < 3) errs.push_back("grid_points: must be at least 3");
  if (!c.run_caqc && !c.run_saqc) errs.push_back("modes: at least one of CAQC, SAQC");
  if (c.jobs < 1) errs.push_back("jobs: must be at least 1");
  try {
    (void)HatFunction::from_name(c.hat);
  } catch (const Error&) {
    errs.push_back("hat: unknown hat function '" + c.hat + "'");
  }
  return errs;
}

inline void require_valid(const SweepConfig& c) {
  const auto errs = validate(c);
  if (errs.empty()) return;
  std::string msg = "invalid sweep config:";
  for (const auto& e : errs) msg += "\n  " + e;
  fail(ErrorKind::input, msg);
}

/// desk6/desk7: 16 instances, delta in {0.5, ..., 3.0}.
/// full6/full7: one instance per possible solution, delta in {0.5, ..., 10}.
inline SweepConfig preset(const std::string& name) {
  SweepConfig c;
  if (name == "desk6") {
    c.n = 6;
  } else if (name == "desk7") {
    c.n = 7;
  } else if (name == "full6" || name == "full7") {
    c.n = name == "full6" ? 6 : 7;
    c.cover = true;
    return c;
  } else {
    fail(ErrorKind::input, "unknown preset '" + name + "'");
  }
  c.instance_count = 16;
  c.delta_grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  return c;
}

/// Applies the keys present in j on top of `base`; unknown keys are errors.
inline SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base = {}) {
  std::vector<std::string> errs;
  require(j.is_object(), ErrorKind::input, "sweep config must be a JSON object");
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      errs.push_back(std::string(key) + ": wrong type");
    }
  };
  static const std::set<std::string> known{"preset", "n", "m", "instances", "cover", "guesses", "deltas",
                                           "grid_points", "seed", "modes", "hat", "jobs", "checkpoint"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) errs.push_back(key + ": unknown field");
  if (j.contains("preset")) {
    try {
      base = preset(j.at("preset").get<std::string>());
    } catch (const std::exception& e) {
      errs.push_back(std::string("preset: ") + e.what());
    }
  }
  get("n", base.n);
  get("m", base.m);
  get("instances", base.instance_count);
  get("cover", base.cover);
  if (j.contains("guesses")) {
    const auto& g = j.at("guesses");
    if (g.is_string() && g.get<std::string>() == "all")
      base.guess_count = 0;
    else if (g.is_number_integer())
      base.guess_count = g.get<int>();
    else
      errs.push_back("guesses: expected \"all\" or an integer");
  }
  get("deltas", base.delta_grid);
  get("grid_points", base.grid_points);
  get("seed", base.seed);
  get("hat", base.hat);
  get("jobs", base.jobs);
  get("checkpoint", base.checkpoint_path);
  if (j.contains("modes")) {
    std::vector<std::string> modes;
    get("modes", modes);
    base.run_caqc = base.run_saqc = false;
    for (const auto& mname : modes) {
      if (mname == "CAQC" || mname == "caqc")
        base.run_caqc = true;
      else if (mname == "SAQC" || mname == "saqc")
        base.run_saqc = true;
      else
        errs.push_back("modes: unknown mode '" + mname + "'");
    }
  }
  for (const auto& e : validate(base)) errs.push_back(e);
  if (!errs.empty()) {
    std::string msg = "invalid sweep config:";
    for (const auto& e : errs) msg += "\n  " + e;
    fail(ErrorKind::input, msg);
  }
  return base;
}

inline nlohmann::json to_json(const SweepConfig& c) {
  std::vector<std::string> modes;
  if (c.run_caqc) modes.push_back("CAQC");
  if (c.run_saqc) modes.push_back("SAQC");
  return {{"n", c.n},
          {"m", c.clause_count()},
          {"instances", c.instances()},
          {"cover", c.cover},
          {"guesses", c.guess_count > 0 ? nlohmann::json(c.guess_count) : nlohmann::json("all")},
          {"deltas", c.delta_grid},
          {"grid_points", c.grid_points},
          {"seed", c.seed},
          {"modes", modes},
          {"hat", c.hat},
          {"jobs", c.jobs}};
}

// ---------------------------------------------------------------------------
// Rows

struct SweepRow {
  int instance_id = 0;
  int n = 0;
  int m = 0;
  Assignment solution;
  std::optional<Assignment> guess;  // SAQC only
  int bf = -1;                      // SAQC only
  int uc = -1;                      // SAQC only
  double delta = 0.0;
  Mode mode = Mode::saqc;
  double g_min = 0.0;
  double s_star = 0.0;
  double e_measured = 0.0;
  double e_bound = 0.0;

  // In-memory diagnostics, not part of the CSV schema.
  double g_min_caqc = std::nan("");
  double gap_at_start = std::nan("");
  double gap_at_end = std::nan("");
  bool interior = false;
  std::string error;

  /// (instance, delta, CAQC before SAQC, guess) ordering used for output.
  auto key() const {
    return std::make_tuple(instance_id, delta, mode == Mode::caqc ? 0 : 1, guess ? guess->bits() : 0ULL);
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* kRowsCsvHeader = "instance_id,n,m,solution,guess,bf,uc,delta,mode,g_min,s_star,e_measured,e_bound";

inline void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kRowsCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    if (!r.error.empty()) continue;
    os << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.solution.to_string() << ','
       << (r.guess ? r.guess->to_string() : "") << ',' << (r.guess ? std::to_string(r.bf) : "") << ','
       << (r.guess ? std::to_string(r.uc) : "") << ',' << format_double(r.delta) << ',' << to_string(r.mode) << ','
       << format_double(r.g_min) << ',' << format_double(r.s_star) << ',' << format_double(r.e_measured) << ','
       << format_double(r.e_bound) << '\n';
  }
}

inline std::vector<SweepRow> read_rows_csv(std::istream& is, const std::string& source = "<rows>") {
  std::vector<SweepRow> rows;
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& msg) { fail(ErrorKind::parse, source + ":" + std::to_string(lineno) + ": " + msg); };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != kRowsCsvHeader) bad("unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 13) bad("expected 13 fields, found " + std::to_string(f.size()));
    try {
      SweepRow r;
      r.instance_id = std::stoi(f[0]);
      r.n = std::stoi(f[1]);
      r.m = std::stoi(f[2]);
      r.solution = Assignment::parse(f[3]);
      if (!f[4].empty()) {
        r.guess = Assignment::parse(f[4]);
        r.bf = std::stoi(f[5]);
        r.uc = std::stoi(f[6]);
      }
      r.delta = std::stod(f[7]);
      r.mode = mode_from_string(f[8]);
      r.g_min = std::stod(f[9]);
      r.s_star = std::stod(f[10]);
      r.e_measured = std::stod(f[11]);
      r.e_bound = std::stod(f[12]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      bad(e.what());
    }
  }
  if (lineno == 0) fail(ErrorKind::parse, source + ": empty file");
  return rows;
}

inline nlohmann::json to_json(const SweepRow& r) {
  nlohmann::json j{{"instance_id", r.instance_id},
                   {"n", r.n},
                   {"m", r.m},
                   {"solution", r.solution.to_string()},
                   {"delta", r.delta},
                   {"mode", to_string(r.mode)},
                   {"g_min", r.g_min},
                   {"s_star", r.s_star},
                   {"e_measured", r.e_measured},
                   {"e_bound", r.e_bound},
                   {"interior", r.interior},
                   {"gap_at_start", r.gap_at_start},
                   {"gap_at_end", r.gap_at_end}};
  if (r.guess) {
    j["guess"] = r.guess->to_string();
    j["bf"] = r.bf;
    j["uc"] = r.uc;
  }
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline SweepRow row_from_json(const nlohmann::json& j) {
  SweepRow r;
  r.instance_id = j.at("instance_id").get<int>();
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.solution = Assignment::parse(j.at("solution").get<std::string>());
  r.delta = j.at("delta").get<double>();
  r.mode = mode_from_string(j.at("mode").get<std::string>());
  auto number = [&](const char* k) {
    const auto& v = j.at(k);
    return v.is_null() ? std::nan("") : v.get<double>();
  };
  r.g_min = number("g_min");
  r.s_star = number("s_star");
  r.e_measured = number("e_measured");
  r.e_bound = number("e_bound");
  if (j.contains("interior")) r.interior = j.at("interior").get<bool>();
  if (j.contains("gap_at_start")) r.gap_at_start = number("gap_at_start");
  if (j.contains("gap_at_end")) r.gap_at_end = number("gap_at_end");
  if (j.contains("guess")) {
    r.guess = Assignment::parse(j.at("guess").get<std::string>());
    r.bf = j.at("bf").get<int>();
    r.uc = j.at("uc").get<int>();
  }
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

inline void write_rows_jsonl(std::ostream& os, const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows) os << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepResult {
  std::vector<CnfInstance> instances;
  std::vector<SweepRow> rows;  // sorted by SweepRow::key()
  std::size_t resumed = 0;     // rows taken from the checkpoint
};

inline std::vector<CnfInstance> sweep_instances(const SweepConfig& cfg) {
  require_valid(cfg);
  Rng rng = substream(cfg.seed, "generation");
  return generate_distinct_solution_set(cfg.n, cfg.clause_count(), cfg.instances(), rng);
}

inline std::vector<Assignment> sweep_guesses(const SweepConfig& cfg, int instance_id) {
  const std::uint64_t states = 1ULL << cfg.n;
  std::vector<std::uint64_t> all(states);
  std::iota(all.begin(), all.end(), 0ULL);
  if (cfg.guess_count > 0 && static_cast<std::uint64_t>(cfg.guess_count) < states) {
    Rng rng = substream(cfg.seed, "guess-selection", static_cast<std::uint64_t>(instance_id));
    std::vector<std::uint64_t> pick;
    std::sample(all.begin(), all.end(), std::back_inserter(pick), cfg.guess_count, rng);
    all = std::move(pick);
  }
  std::vector<Assignment> out;
  for (std::uint64_t z : all) out.emplace_back(cfg.n, z);
  return out;
}

namespace detail {

struct WorkItem {
  int instance_id;
  double delta;
  Mode mode;
  std::optional<Assignment> guess;

  auto key() const {
    return std::make_tuple(instance_id, delta, mode == Mode::caqc ? 0 : 1, guess ? guess->bits() : 0ULL);
  }
};

inline SweepRow run_item(const WorkItem& item, const std::shared_ptr<const CnfInstance>& inst, const SweepConfig& cfg) {
  SweepRow row;
  row.instance_id = item.instance_id;
  row.n = inst->n();
  row.m = inst->m();
  row.solution = inst->solution();
  row.delta = item.delta;
  row.mode = item.mode;
  row.guess = item.guess;
  try {
    if (item.guess) {
      const GuessMetrics gm = guess_metrics(*inst, *item.guess);
      row.bf = gm.bf;
      row.uc = gm.uc;
    }
    const ScheduleSpec sched = item.mode == Mode::saqc
                                   ? ScheduleSpec::saqc(inst, *item.guess, item.delta, HatFunction::from_name(cfg.hat))
                                   : ScheduleSpec::caqc(inst, item.delta);
    const GapAndEpsilon r = scan_gap_and_epsilon(sched, ScanOptions{cfg.grid_points});
    row.g_min = r.gap.g_min;
    row.s_star = r.gap.s_star;
    row.interior = r.gap.interior;
    row.gap_at_start = r.gap.samples.front().gap();
    row.gap_at_end = r.gap.samples.back().gap();
    row.e_measured = r.epsilon.value;
    row.e_bound = item.mode == Mode::saqc ? epsilon_upper_bound(inst->n(), inst->alpha(), item.delta)
                                          : caqc_epsilon_upper_bound(inst->n(), inst->alpha(), item.delta);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.g_min = row.s_star = row.e_measured = row.e_bound = std::nan("");
  }
  return row;
}

inline std::vector<SweepRow> read_checkpoint(const std::string& path) {
  std::vector<SweepRow> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      rows.push_back(row_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception&) {
      // A torn final line from an interrupted run; that item is redone.
    }
  }
  return rows;
}

}  // namespace detail

/// Fills g_min_caqc on SAQC rows from the CAQC row of the same (instance, delta).
inline void attach_caqc_baseline(std::vector<SweepRow>& rows) {
  std::map<std::pair<int, double>, double> base;
  for (const SweepRow& r : rows)
    if (r.mode == Mode::caqc && r.error.empty()) base[{r.instance_id, r.delta}] = r.g_min;
  for (SweepRow& r : rows) {
    if (r.mode != Mode::saqc) continue;
    auto it = base.find({r.instance_id, r.delta});
    if (it != base.end()) r.g_min_caqc = it->second;
  }
}

/// Runs every (instance, delta) CAQC scan and every (instance, guess, delta)
/// SAQC scan on the given instances. Output order and content depend only on
/// the config, never on the worker count. Completed rows are appended to the
/// checkpoint file when one is configured, and rows already there are reused.
inline SweepResult run_sweep(const SweepConfig& cfg, std::vector<CnfInstance> instances) {
  require_valid(cfg);
  SweepResult out;
  out.instances = std::move(instances);
  std::vector<std::shared_ptr<const CnfInstance>> shared;
  for (const CnfInstance& inst : out.instances) {
    require(inst.n() == cfg.n, ErrorKind::input, "instance size does not match the sweep config");
    require(inst.unique_solution().has_value(), ErrorKind::state, "sweep instances need unique solutions");
    shared.push_back(std::make_shared<const CnfInstance>(inst));
  }

  std::vector<detail::WorkItem> items;
  for (int i = 0; i < static_cast<int>(shared.size()); ++i) {
    const auto guesses = sweep_guesses(cfg, i);
    for (double delta : cfg.delta_grid) {
      if (cfg.run_caqc) items.push_back({i, delta, Mode::caqc, std::nullopt});
      if (cfg.run_saqc)
        for (const Assignment& g : guesses) items.push_back({i, delta, Mode::saqc, g});
    }
  }

  std::map<decltype(items.front().key()), SweepRow> done;
  if (!cfg.checkpoint_path.empty())
    for (SweepRow& r : detail::read_checkpoint(cfg.checkpoint_path))
      if (r.error.empty()) done.emplace(r.key(), std::move(r));

  std::vector<std::size_t> todo;
  std::vector<SweepRow> rows(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    auto it = done.find(items[k].key());
    if (it != done.end()) {
      rows[k] = it->second;
      ++out.resumed;
    } else {
      todo.push_back(k);
    }
  }

  std::ofstream checkpoint;
  if (!cfg.checkpoint_path.empty()) {
    checkpoint.open(cfg.checkpoint_path, std::ios::app);
    require(static_cast<bool>(checkpoint), ErrorKind::input, "cannot open checkpoint " + cfg.checkpoint_path);
  }
  std::mutex checkpoint_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < todo.size(); t = next++) {
      const std::size_t k = todo[t];
      rows[k] = detail::run_item(items[k], shared[static_cast<std::size_t>(items[k].instance_id)], cfg);
      if (checkpoint.is_open()) {
        const std::string line = to_json(rows[k]).dump();
        std::lock_guard<std::mutex> lock(checkpoint_mutex);
        checkpoint << line << '\n' << std::flush;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int workers = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(todo.size())));
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.key() < b.key(); });
  attach_caqc_baseline(rows);
  out.rows = std::move(rows);
  return out;
}

inline SweepResult run_sweep(const SweepConfig& cfg) { return run_sweep(cfg, sweep_instances(cfg)); }

// ---------------------------------------------------------------------------
// Statistics

/// Median with the midpoint average for even counts.
inline double median(std::vector<double> v) {
  require(!v.empty(), ErrorKind::input, "median of an empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

enum class GroupKey { bf, uc };

inline std::string to_string(GroupKey k) { return k == GroupKey::bf ? "bf" : "uc"; }

inline GroupKey group_key_from_string(const std::string& s) {
  if (s == "bf" || s == "BF") return GroupKey::bf;
  if (s == "uc" || s == "UC") return GroupKey::uc;
  fail(ErrorKind::input, "unknown group key '" + s + "' (expected bf or uc)");
}

struct GroupStats {
  std::string key;  // "bf", "uc" or "caqc"
  int value = 0;    // group value; 0 for the CAQC baseline
  double delta = 0.0;
  double median_g_min = 0.0;
  std::size_t count = 0;
};

/// Median SAQC g_min per (group value, delta); groups without rows are absent.
inline std::vector<GroupStats> median_by_group(const std::vector<SweepRow>& rows, GroupKey key) {
  require(!rows.empty(), ErrorKind::input, "no rows to group");
  std::map<std::pair<int, double>, std::vector<double>> groups;
  for (const SweepRow& r : rows) {
    if (r.mode != Mode::saqc || !r.error.empty()) continue;
    groups[{key == GroupKey::bf ? r.bf : r.uc, r.delta}].push_back(r.g_min);
  }
  std::vector<GroupStats> out;
  for (auto& [k, v] : groups) out.push_back({to_string(key), k.first, k.second, median(v), v.size()});
  return out;
}

/// Median CAQC g_min per delta.
inline std::vector<GroupStats> caqc_medians(const std::vector<SweepRow>& rows) {
  std::map<double, std::vector<double>> groups;
  for (const SweepRow& r : rows)
    if (r.mode == Mode::caqc && r.error.empty()) groups[r.delta].push_back(r.g_min);
  std::vector<GroupStats> out;
  for (auto& [d, v] : groups) out.push_back({"caqc", 0, d, median(v), v.size()});
  return out;
}

/// Median SAQC g_min per delta over all guesses and instances.
inline std::map<double, double> pooled_saqc_medians(const std::vector<SweepRow>& rows) {
  std::map<double, std::vector<double>> groups;
  for (const SweepRow& r : rows)
    if (r.mode == Mode::saqc && r.error.empty()) groups[r.delta].push_back(r.g_min);
  std::map<double, double> out;
  for (auto& [d, v] : groups) out[d] = median(v);
  return out;
}

inline void write_group_stats_csv(std::ostream& os, const std::vector<GroupStats>& stats) {
  os << "group,value,delta,median_g_min,count\n";
  for (const GroupStats& g : stats)
    os << g.key << ',' << g.value << ',' << format_double(g.delta) << ',' << format_double(g.median_g_min) << ','
       << g.count << '\n';
}

struct CurvePoint {
  double delta = 0.0;
  double probability = 0.0;
  std::size_t count = 0;  // denominator
};

struct ProbabilityCurve {
  std::string criterion;
  std::vector<CurvePoint> points;  // ascending delta; zero-denominator deltas absent

  std::optional<CurvePoint> at(double delta) const {
    for (const CurvePoint& p : points)
      if (p.delta == delta) return p;
    return std::nullopt;
  }
};

inline const char* kCriterionGe = "saqc_ge_caqc";
inline const char* kCriterionGeSqrt2 = "saqc_ge_sqrt2_caqc";
inline const char* kCriterionGeSqrt2Bf34 = "saqc_ge_sqrt2_caqc|bf=3,4";

/// Fraction of SAQC rows meeting each criterion against the CAQC g_min of the
/// same (instance, delta). Conditional curves restrict the denominator.
inline std::vector<ProbabilityCurve> probability_curves(const std::vector<SweepRow>& rows) {
  std::map<std::pair<int, double>, double> base;
  for (const SweepRow& r : rows)
    if (r.mode == Mode::caqc && r.error.empty()) base[{r.instance_id, r.delta}] = r.g_min;

  struct Tally {
    std::size_t hits = 0, total = 0;
  };
  std::map<std::string, std::map<double, Tally>> tallies;
  std::set<int> ucs;
  const double root2 = std::sqrt(2.0);
  for (const SweepRow& r : rows) {
    if (r.mode != Mode::saqc || !r.error.empty()) continue;
    auto it = base.find({r.instance_id, r.delta});
    require(it != base.end(), ErrorKind::state,
            "no CAQC baseline for instance " + std::to_string(r.instance_id) + " at delta " + format_double(r.delta));
    const double g_c = it->second;
    const bool ge = r.g_min >= g_c;
    const bool ge2 = r.g_min >= root2 * g_c;
    auto add = [&](const std::string& name, bool hit) {
      Tally& t = tallies[name][r.delta];
      ++t.total;
      t.hits += hit ? 1 : 0;
    };
    add(kCriterionGe, ge);
    add(kCriterionGeSqrt2, ge2);
    if (r.bf == 3 || r.bf == 4) add(kCriterionGeSqrt2Bf34, ge2);
    add(std::string(kCriterionGeSqrt2) + "|uc=" + std::to_string(r.uc), ge2);
    ucs.insert(r.uc);
  }

  std::vector<std::string> order{kCriterionGe, kCriterionGeSqrt2, kCriterionGeSqrt2Bf34};
  for (int uc : ucs) order.push_back(std::string(kCriterionGeSqrt2) + "|uc=" + std::to_string(uc));
  std::vector<ProbabilityCurve> out;
  for (const std::string& name : order) {
    ProbabilityCurve c{name, {}};
    auto it = tallies.find(name);
    if (it != tallies.end())
      for (const auto& [delta, t] : it->second)
        c.points.push_back({delta, static_cast<double>(t.hits) / static_cast<double>(t.total), t.total});
    out.push_back(std::move(c));
  }
  return out;
}

inline const ProbabilityCurve& find_curve(const std::vector<ProbabilityCurve>& curves, const std::string& name) {
  for (const ProbabilityCurve& c : curves)
    if (c.criterion == name) return c;
  fail(ErrorKind::state, "no probability curve '" + name + "'");
}

inline void write_curves_csv(std::ostream& os, const std::vector<ProbabilityCurve>& curves) {
  os << "criterion,delta,probability,count\n";
  for (const ProbabilityCurve& c : curves)
    for (const CurvePoint& p : c.points)
      os << c.criterion << ',' << format_double(p.delta) << ',' << format_double(p.probability) << ',' << p.count
         << '\n';
}

/// Success over two independent tries at per-try probability p.
inline double two_trial_success(double p1) {
  require(p1 >= 0.0 && p1 <= 1.0, ErrorKind::input, "probability must lie in [0,1]");
  return 1.0 - (1.0 - p1) * (1.0 - p1);
}

}  // namespace saqc
