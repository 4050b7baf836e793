#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "saqc/saqc.hpp"

#ifndef SAQC_VERSION
#define SAQC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace saqc;

namespace {

enum ExitCode { ok = 0, other = 1, usage = 2, parse_failure = 3, generation_failure = 4, accuracy_failure = 5 };

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
      return usage;
    case ErrorKind::parse:
      return parse_failure;
    case ErrorKind::generation:
      return generation_failure;
    case ErrorKind::accuracy:
      return accuracy_failure;
    default:
      return other;
  }
}

std::string sha256_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::input, "cannot read " + p.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Provenance record written next to every artifact.
struct RunManifest {
  std::string subcommand;
  json config = json::object();
  std::uint64_t seed = 0;
  std::string started = utc_now();
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;

  void write(const fs::path& path) const {
    json in = json::object(), out = json::object();
    for (const auto& p : inputs) in[p.string()] = sha256_file(p);
    for (const auto& p : outputs) out[p.string()] = sha256_file(p);
    const json j{{"tool", "saqc"},          {"version", SAQC_VERSION}, {"subcommand", subcommand},
                 {"config", config},        {"seed", seed},            {"started", started},
                 {"finished", utc_now()},   {"inputs", in},            {"outputs", out}};
    std::ofstream os(path);
    require(static_cast<bool>(os), ErrorKind::input, "cannot write " + path.string());
    os << j.dump(2) << '\n';
  }
};

fs::path manifest_for_file(const fs::path& p) { return fs::path(p.string() + ".manifest.json"); }

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p);
  require(static_cast<bool>(os), ErrorKind::input, "cannot write " + p.string());
  return os;
}

int default_jobs() {
  if (const char* env = std::getenv("SAQC_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring SAQC_JOBS='" << env << "'\n";
  }
  return 1;
}

Mode parse_mode(const std::string& s) {
  if (s == "saqc" || s == "SAQC") return Mode::saqc;
  if (s == "caqc" || s == "CAQC") return Mode::caqc;
  fail(ErrorKind::input, "unknown mode '" + s + "' (expected saqc or caqc)");
}

std::shared_ptr<const CnfInstance> load_instance(const std::string& path) {
  return std::make_shared<const CnfInstance>(load_dimacs(path));
}

/// Guess from --guess, or the all-zeros string when none is given.
Assignment resolve_guess(const std::string& bits, int n) {
  if (bits.empty()) return Assignment(n, 0);
  const Assignment g = Assignment::parse(bits);
  require(g.size() == n, ErrorKind::input,
          "guess has " + std::to_string(g.size()) + " bits but the instance has " + std::to_string(n));
  return g;
}

ScheduleSpec make_schedule(const std::shared_ptr<const CnfInstance>& inst, Mode mode, const std::string& guess,
                           double delta, const std::string& hat) {
  if (mode == Mode::caqc) {
    if (!guess.empty()) std::cerr << "warning: --guess is ignored in CAQC mode\n";
    return ScheduleSpec::caqc(inst, delta);
  }
  return ScheduleSpec::saqc(inst, resolve_guess(guess, inst->n()), delta, HatFunction::from_name(hat));
}

// ---------------------------------------------------------------------------

struct GenArgs {
  int n = 6;
  int m = 0;
  int count = 1;
  bool cover = false;
  std::uint64_t seed = 1;
  std::string out = "instances";
};

int cmd_gen(const GenArgs& a) {
  const int m = a.m > 0 ? a.m : default_clause_count(a.n);
  Rng rng = substream(a.seed, "generation");
  const std::vector<CnfInstance> set = a.cover ? generate_solution_cover_set(a.n, m, rng)
                                               : generate_distinct_solution_set(a.n, m, a.count, rng);
  RunManifest man{"gen", {{"n", a.n}, {"m", m}, {"count", set.size()}, {"cover", a.cover}, {"seed", a.seed}}, a.seed};
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const int width = std::max<int>(3, static_cast<int>(std::to_string(set.size()).size()));
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::ostringstream name;
    name << "usa_n" << a.n << '_' << std::setw(width) << std::setfill('0') << i << ".cnf";
    const fs::path p = dir / name.str();
    save_dimacs(p.string(), set[i]);
    man.outputs.push_back(p);
  }
  man.write(dir / "manifest.json");
  std::cout << "wrote " << set.size() << " instances to " << dir.string() << '\n';
  return ok;
}

struct GapArgs {
  std::string instance;
  std::string mode = "saqc";
  std::string guess;
  double delta = 1.5;
  int grid = 201;
  std::string hat = "three_s_one_minus_s";
  std::string out;
  std::vector<double> export_s;
  std::string export_path;
};

int cmd_gap(const GapArgs& a) {
  const auto inst = load_instance(a.instance);
  const Mode mode = parse_mode(a.mode);
  const ScheduleSpec sched = make_schedule(inst, mode, a.guess, a.delta, a.hat);
  const GapAndEpsilon r = scan_gap_and_epsilon(sched, ScanOptions{a.grid});

  json summary{{"mode", to_string(mode)}, {"n", inst->n()},        {"m", inst->m()},
               {"delta", a.delta},        {"g_min", r.gap.g_min},  {"s_star", r.gap.s_star},
               {"interior", r.gap.interior}, {"e_measured", r.epsilon.value}};
  if (inst->unique_solution()) summary["solution"] = inst->solution().to_string();
  if (mode == Mode::saqc) {
    summary["guess"] = sched.guess()->to_string();
    if (inst->unique_solution()) {
      const GuessMetrics gm = guess_metrics(*inst, *sched.guess());
      summary["bf"] = gm.bf;
      summary["uc"] = gm.uc;
    }
  }
  if (inst->alpha() > 0) {
    const double upper = mode == Mode::saqc ? epsilon_upper_bound(inst->n(), inst->alpha(), a.delta)
                                            : caqc_epsilon_upper_bound(inst->n(), inst->alpha(), a.delta);
    summary["e_bound"] = upper;
  }
  if (r.gap.g_min > 0) summary["runtime_estimate"] = runtime_estimate(r.epsilon.value, r.gap.g_min);
  if (!r.epsilon.degenerate_points.empty()) summary["degenerate_points"] = r.epsilon.degenerate_points;

  RunManifest man{"gap",
                  {{"instance", a.instance}, {"mode", to_string(mode)}, {"guess", a.guess}, {"delta", a.delta},
                   {"grid", a.grid}, {"hat", a.hat}},
                  0};
  man.inputs.push_back(a.instance);
  if (!a.out.empty()) {
    const fs::path csv(a.out);
    {
      std::ofstream os = open_out(csv);
      write_gap_csv(os, r.gap);
    }
    const fs::path sum(a.out + ".summary.json");
    open_out(sum) << summary.dump(2) << '\n';
    man.outputs = {csv, sum};
  }
  if (!a.export_path.empty()) {
    json mats = json::array();
    for (double s : a.export_s) mats.push_back(to_json(assemble(sched, s), inst->n(), s, mode));
    open_out(a.export_path) << mats.dump() << '\n';
    man.outputs.push_back(a.export_path);
  }
  if (!man.outputs.empty()) man.write(manifest_for_file(man.outputs.front()));
  std::cout << summary.dump(2) << '\n';
  return ok;
}

struct SweepArgs {
  std::string config;
  std::string preset;
  std::string out = "sweep";
  std::optional<int> n, m, instances, guesses, grid, jobs;
  std::optional<std::uint64_t> seed;
  std::vector<double> deltas;
  std::optional<bool> cover;
  std::string checkpoint;
  bool jsonl = false;
};

int cmd_sweep(const SweepArgs& a) {
  SweepConfig cfg;
  cfg.jobs = default_jobs();
  if (!a.preset.empty()) cfg = preset(a.preset), cfg.jobs = default_jobs();
  RunManifest man{"sweep", {}, 0};
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    require(static_cast<bool>(in), ErrorKind::input, "cannot read " + a.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::parse, a.config + ": " + e.what());
    }
    cfg = sweep_config_from_json(j, cfg);
    man.inputs.push_back(a.config);
  }
  if (a.n) cfg.n = *a.n;
  if (a.m) cfg.m = *a.m;
  if (a.instances) cfg.instance_count = *a.instances;
  if (a.guesses) cfg.guess_count = *a.guesses;
  if (a.grid) cfg.grid_points = *a.grid;
  if (a.jobs) cfg.jobs = *a.jobs;
  if (a.seed) cfg.seed = *a.seed;
  if (a.cover) cfg.cover = *a.cover;
  if (!a.deltas.empty()) cfg.delta_grid = a.deltas;
  const fs::path dir(a.out);
  fs::create_directories(dir);
  cfg.checkpoint_path = a.checkpoint;
  require_valid(cfg);

  const SweepResult res = run_sweep(cfg);
  man.config = to_json(cfg);
  man.seed = cfg.seed;

  const fs::path inst_dir = dir / "instances";
  fs::create_directories(inst_dir);
  for (std::size_t i = 0; i < res.instances.size(); ++i) {
    std::ostringstream name;
    name << "instance_" << std::setw(3) << std::setfill('0') << i << ".cnf";
    save_dimacs((inst_dir / name.str()).string(), res.instances[i]);
    man.outputs.push_back(inst_dir / name.str());
  }
  const fs::path rows = dir / "rows.csv";
  {
    std::ofstream os = open_out(rows);
    write_rows_csv(os, res.rows);
  }
  man.outputs.push_back(rows);
  if (a.jsonl) {
    std::ofstream os = open_out(dir / "rows.jsonl");
    write_rows_jsonl(os, res.rows);
    os.close();
    man.outputs.push_back(dir / "rows.jsonl");
  }
  std::size_t failed = 0;
  for (const SweepRow& r : res.rows)
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "error: instance " << r.instance_id << " delta " << r.delta << ' ' << to_string(r.mode)
                << (r.guess ? " guess " + r.guess->to_string() : "") << ": " << r.error << '\n';
    }
  man.write(dir / "manifest.json");
  std::cout << "rows: " << res.rows.size() - failed << " (resumed " << res.resumed << ", failed " << failed
            << ") -> " << rows.string() << '\n';
  return failed ? accuracy_failure : ok;
}

struct StatsArgs {
  std::string rows;
  std::string group = "bf";
  std::string out;
  std::string curves;
  std::string baseline;
};

int cmd_stats(const StatsArgs& a) {
  std::ifstream in(a.rows);
  require(static_cast<bool>(in), ErrorKind::input, "cannot read " + a.rows);
  const std::vector<SweepRow> rows = read_rows_csv(in, a.rows);
  const std::vector<GroupStats> stats = median_by_group(rows, group_key_from_string(a.group));

  RunManifest man{"stats", {{"rows", a.rows}, {"group", a.group}}, 0};
  man.inputs.push_back(a.rows);
  if (a.out.empty()) {
    write_group_stats_csv(std::cout, stats);
  } else {
    std::ofstream os = open_out(a.out);
    write_group_stats_csv(os, stats);
    os.close();
    man.outputs.push_back(a.out);
  }
  if (!a.baseline.empty()) {
    std::ofstream os = open_out(a.baseline);
    write_group_stats_csv(os, caqc_medians(rows));
    os.close();
    man.outputs.push_back(a.baseline);
  }
  if (!a.curves.empty()) {
    std::ofstream os = open_out(a.curves);
    write_curves_csv(os, probability_curves(rows));
    os.close();
    man.outputs.push_back(a.curves);
  }
  if (!man.outputs.empty()) man.write(manifest_for_file(man.outputs.front()));
  return ok;
}

struct PropagateArgs {
  std::string instance;
  std::string mode = "saqc";
  std::string guess;
  double delta = 1.5;
  double tau = 10.0;
  double tolerance = 1e-8;
  int fixed_steps = 0;
  std::string hat = "three_s_one_minus_s";
  std::string trajectory;
  int shots = 0;
  std::uint64_t seed = 1;
};

int cmd_propagate(const PropagateArgs& a) {
  const auto inst = load_instance(a.instance);
  const Mode mode = parse_mode(a.mode);
  const ScheduleSpec sched = make_schedule(inst, mode, a.guess, a.delta, a.hat);
  PropagationConfig cfg;
  cfg.tau = a.tau;
  cfg.tolerance = a.tolerance;
  cfg.fixed_steps = a.fixed_steps;
  cfg.record_overlaps = !a.trajectory.empty();
  const PropagationResult r = propagate(sched, cfg, default_initial_state(sched));

  json summary{{"mode", to_string(mode)},         {"tau", a.tau},
               {"delta", a.delta},                {"accepted_steps", r.accepted_steps},
               {"rejected_steps", r.rejected_steps}, {"max_norm_drift", r.max_norm_drift},
               {"final_energy", energy_expectation(r.psi, final_hamiltonian(*inst))}};
  if (mode == Mode::saqc) summary["guess"] = sched.guess()->to_string();
  if (inst->unique_solution()) {
    summary["solution"] = inst->solution().to_string();
    summary["success_probability"] = success_probability(r.psi, *inst);
  }
  if (a.shots > 0) {
    Rng rng = substream(a.seed, "measurement");
    std::map<std::string, int> counts;
    for (int i = 0; i < a.shots; ++i) ++counts[sample_measurement(r.psi, inst->n(), rng).to_string()];
    summary["counts"] = counts;
  }
  RunManifest man{"propagate",
                  {{"instance", a.instance}, {"mode", to_string(mode)}, {"guess", a.guess}, {"delta", a.delta},
                   {"tau", a.tau}, {"tolerance", a.tolerance}, {"fixed_steps", a.fixed_steps}, {"hat", a.hat},
                   {"shots", a.shots}},
                  a.seed};
  man.inputs.push_back(a.instance);
  if (!a.trajectory.empty()) {
    std::ofstream os = open_out(a.trajectory);
    write_trajectory_csv(os, r.trajectory);
    os.close();
    man.outputs.push_back(a.trajectory);
    man.write(manifest_for_file(a.trajectory));
  }
  std::cout << summary.dump(2) << '\n';
  return ok;
}

struct RestartArgs {
  std::string instance;
  std::string guess;
  std::string mode = "refine";
  int rounds = 3;
  int trials = 1;
  double delta = 1.5;
  double tau = 10.0;
  double tolerance = 1e-8;
  std::string hat = "three_s_one_minus_s";
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_restart(const RestartArgs& a) {
  const auto inst = load_instance(a.instance);
  require(inst->unique_solution().has_value() || count_satisfying(*inst) >= 1, ErrorKind::state,
          "restart needs a satisfiable instance");
  RestartConfig cfg;
  cfg.propagation.tau = a.tau;
  cfg.propagation.tolerance = a.tolerance;
  cfg.delta = a.delta;
  cfg.hat = HatFunction::from_name(a.hat);
  cfg.max_rounds = a.rounds;
  cfg.policy = restart_policy_from_string(a.mode);

  std::ofstream file;
  if (!a.out.empty()) file = open_out(a.out);
  std::ostream& os = a.out.empty() ? std::cout : file;
  Rng guess_rng = substream(a.seed, "guess-selection");
  std::uniform_int_distribution<std::uint64_t> pick(0, (1ULL << inst->n()) - 1);
  int successes = 0;
  for (int t = 0; t < a.trials; ++t) {
    const Assignment guess = a.guess.empty() ? Assignment(inst->n(), pick(guess_rng)) : resolve_guess(a.guess, inst->n());
    Rng rng = substream(a.seed, "measurement", static_cast<std::uint64_t>(t));
    json j = to_json(run_restart_protocol(inst, guess, cfg, rng));
    j["trial"] = t;
    successes += j.at("succeeded").get<bool>() ? 1 : 0;
    os << j.dump() << '\n';
  }
  if (!a.out.empty()) {
    file.close();
    RunManifest man{"restart",
                    {{"instance", a.instance}, {"guess", a.guess}, {"mode", a.mode}, {"rounds", a.rounds},
                     {"trials", a.trials}, {"delta", a.delta}, {"tau", a.tau}, {"tolerance", a.tolerance},
                     {"hat", a.hat}},
                    a.seed};
    man.inputs.push_back(a.instance);
    man.outputs.push_back(a.out);
    man.write(manifest_for_file(a.out));
    std::cerr << successes << '/' << a.trials << " trials succeeded\n";
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic 3-SAT gap and dynamics simulator"};
  app.set_version_flag("--version", SAQC_VERSION);
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate USA 3-SAT instances as DIMACS files");
  g->add_option("--n", gen.n, "Variables")->check(CLI::Range(3, kDefaultEnumerationCap));
  g->add_option("--m", gen.m, "Clauses (default round(4.26 n))")->check(CLI::NonNegativeNumber);
  auto* count_opt = g->add_option("--count", gen.count, "Instances with distinct solutions")->check(CLI::PositiveNumber);
  g->add_flag("--cover", gen.cover, "One instance per possible solution (2^n)")->excludes(count_opt);
  g->add_option("--seed", gen.seed, "Master seed");
  g->add_option("--out", gen.out, "Output directory");

  GapArgs gap;
  auto* gp = app.add_subcommand("gap", "Scan the spectral gap along one schedule");
  gp->add_option("instance", gap.instance, "DIMACS file")->required();
  gp->add_option("--mode", gap.mode, "saqc or caqc");
  gp->add_option("--guess", gap.guess, "Guess bits x_n..x_1 (SAQC)");
  gp->add_option("--delta", gap.delta, "Transverse-field intensity")->check(CLI::PositiveNumber);
  gp->add_option("--grid", gap.grid, "Grid points on [0,1]")->check(CLI::Range(3, 1000000));
  gp->add_option("--hat", gap.hat, "Driver profile");
  gp->add_option("--out", gap.out, "Gap curve CSV");
  gp->add_option("--export-s", gap.export_s, "Schedule points for matrix export");
  gp->add_option("--export-matrix", gap.export_path, "JSON file for the exported matrices")->needs("--export-s");

  SweepArgs sw;
  auto* sp = app.add_subcommand("sweep", "Run a CAQC/SAQC gap sweep");
  sp->add_option("--config", sw.config, "JSON config file (flags override it)");
  sp->add_option("--preset", sw.preset, "desk6, desk7, full6 or full7");
  sp->add_option("--out", sw.out, "Output directory");
  sp->add_option("--n", sw.n, "Variables");
  sp->add_option("--m", sw.m, "Clauses");
  sp->add_option("--instances", sw.instances, "Instance count");
  sp->add_option("--cover", sw.cover, "Use all 2^n solutions (true/false)");
  sp->add_option("--guesses", sw.guesses, "Guesses per instance (0 = all)");
  sp->add_option("--deltas", sw.deltas, "Delta grid")->delimiter(',');
  sp->add_option("--grid", sw.grid, "Grid points on [0,1]");
  sp->add_option("--seed", sw.seed, "Master seed");
  sp->add_option("--jobs", sw.jobs, "Worker threads (default $SAQC_JOBS or 1)");
  sp->add_option("--checkpoint", sw.checkpoint, "JSONL checkpoint to resume from and append to");
  sp->add_flag("--jsonl", sw.jsonl, "Also write rows.jsonl");

  StatsArgs st;
  auto* stp = app.add_subcommand("stats", "Group medians and probability curves from sweep rows");
  stp->add_option("rows", st.rows, "rows.csv from sweep")->required()->check(CLI::ExistingFile);
  stp->add_option("--group", st.group, "bf or uc")->check(CLI::IsMember({"bf", "uc", "BF", "UC"}));
  stp->add_option("--out", st.out, "Group medians CSV (default stdout)");
  stp->add_option("--curves", st.curves, "Probability-curve CSV");
  stp->add_option("--baseline", st.baseline, "CAQC median CSV");

  PropagateArgs pr;
  auto* pp = app.add_subcommand("propagate", "Integrate the Schrodinger equation along a schedule");
  pp->add_option("instance", pr.instance, "DIMACS file")->required();
  pp->add_option("--mode", pr.mode, "saqc or caqc");
  pp->add_option("--guess", pr.guess, "Guess bits (SAQC)");
  pp->add_option("--delta", pr.delta, "Transverse-field intensity")->check(CLI::PositiveNumber);
  pp->add_option("--tau", pr.tau, "Total evolution time")->check(CLI::NonNegativeNumber);
  pp->add_option("--tol", pr.tolerance, "Local error tolerance")->check(CLI::PositiveNumber);
  pp->add_option("--steps", pr.fixed_steps, "Fixed step count (disables error control)");
  pp->add_option("--hat", pr.hat, "Driver profile");
  pp->add_option("--trajectory", pr.trajectory, "Trajectory CSV");
  pp->add_option("--shots", pr.shots, "Measurements to sample from the final state");
  pp->add_option("--seed", pr.seed, "Master seed");

  RestartArgs rs;
  auto* rp = app.add_subcommand("restart", "Simulate the measure-and-restart protocol");
  rp->add_option("instance", rs.instance, "DIMACS file")->required();
  rp->add_option("--guess", rs.guess, "Initial guess (default: seeded random)");
  rp->add_option("--mode", rs.mode, "refine or random")->check(CLI::IsMember({"refine", "random"}));
  rp->add_option("--rounds", rs.rounds, "Maximum rounds")->check(CLI::PositiveNumber);
  rp->add_option("--trials", rs.trials, "Independent trials")->check(CLI::PositiveNumber);
  rp->add_option("--delta", rs.delta, "Transverse-field intensity")->check(CLI::PositiveNumber);
  rp->add_option("--tau", rs.tau, "Evolution time per round")->check(CLI::NonNegativeNumber);
  rp->add_option("--tol", rs.tolerance, "Local error tolerance")->check(CLI::PositiveNumber);
  rp->add_option("--hat", rs.hat, "Driver profile");
  rp->add_option("--seed", rs.seed, "Master seed");
  rp->add_option("--out", rs.out, "JSON-lines output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*gp) return cmd_gap(gap);
    if (*sp) return cmd_sweep(sw);
    if (*stp) return cmd_stats(st);
    if (*pp) return cmd_propagate(pr);
    if (*rp) return cmd_restart(rs);
  } catch (const Error& e) {
    std::cerr << "saqc: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "saqc: " << e.what() << '\n';
    return other;
  }
  return usage;
}
