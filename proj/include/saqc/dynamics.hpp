#pragma once

// Time-dependent Schroedinger propagation along a schedule (hbar = 1),
// projective measurement, and the measure-and-restart protocol.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "saqc/error.hpp"
#include "saqc/hamiltonians.hpp"
#include "saqc/random.hpp"
#include "saqc/sat.hpp"

namespace saqc {

using Complex = std::complex<double>;

class WaveState {
 public:
  WaveState() = default;
  explicit WaveState(Eigen::VectorXcd amplitudes) : amp_(std::move(amplitudes)) {}

  static WaveState basis(int n_qubits, std::uint64_t z) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    a(static_cast<Eigen::Index>(z)) = 1.0;
    return WaveState(std::move(a));
  }

  static WaveState uniform(int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    return WaveState(Eigen::VectorXcd::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
  }

  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  Eigen::Index dimension() const { return amp_.size(); }
  double norm() const { return amp_.norm(); }
  double probability(std::uint64_t z) const { return std::norm(amp_(static_cast<Eigen::Index>(z))); }

 private:
  Eigen::VectorXcd amp_;
};

/// Ground state of the schedule's s=0 Hamiltonian: the guess basis state for
/// SAQC, the uniform superposition for CAQC.
inline WaveState default_initial_state(const ScheduleSpec& sched) {
  if (sched.mode() == Mode::saqc) return WaveState::basis(sched.n_qubits(), sched.guess()->bits());
  return WaveState::uniform(sched.n_qubits());
}

struct PropagationConfig {
  double tau = 1.0;
  double tolerance = 1e-8;      // max local error per accepted step
  int fixed_steps = 0;          // >0 disables error control
  double initial_step = 1e-3;   // in s
  double norm_tolerance = 1e-6; // allowed | ||psi|| - 1 |
  std::uint64_t max_steps = 50'000'000;
  bool record_overlaps = false;
};

struct TrajectoryPoint {
  double s = 0.0;
  double success_probability = 0.0;
  double norm = 1.0;
};

struct PropagationResult {
  WaveState psi;
  std::uint64_t accepted_steps = 0;
  std::uint64_t rejected_steps = 0;
  double max_norm_drift = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

inline double success_probability(const WaveState& psi, const CnfInstance& inst) {
  const Assignment& sol = inst.solution();
  require(psi.dimension() == (Eigen::Index{1} << inst.n()), ErrorKind::input, "state dimension does not match n");
  return psi.probability(sol.bits());
}

/// <psi| diag |psi>
inline double energy_expectation(const WaveState& psi, const DiagonalOperator& diag) {
  require(static_cast<std::size_t>(psi.dimension()) == diag.dimension(), ErrorKind::input,
          "state and operator dimensions differ");
  double e = 0.0;
  for (Eigen::Index z = 0; z < psi.dimension(); ++z)
    e += std::norm(psi.amplitudes()(z)) * diag.diag[static_cast<std::size_t>(z)];
  return e;
}

namespace detail {

// psi <- exp(-i t A) psi for real symmetric A.
inline void apply_exponential(const Eigen::MatrixXd& a, double t, Eigen::VectorXcd& psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  require(es.info() == Eigen::Success, ErrorKind::accuracy, "eigendecomposition failed in propagation");
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd c = v.transpose().cast<Complex>() * psi;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -t * es.eigenvalues()(i));
  psi = v.cast<Complex>() * c;
}

// Fourth-order commutator-free Magnus step (two exponentials, Gauss nodes).
inline void cf4_step(const ScheduleSpec& sched, double tau, double s, double h, Eigen::VectorXcd& psi) {
  static const double r3 = std::sqrt(3.0);
  const double c1 = 0.5 - r3 / 6.0;
  const double c2 = 0.5 + r3 / 6.0;
  const double a1 = (3.0 - 2.0 * r3) / 12.0;
  const double a2 = (3.0 + 2.0 * r3) / 12.0;
  const Eigen::MatrixXd h1 = assemble(sched, std::min(1.0, s + c1 * h)).matrix();
  const Eigen::MatrixXd h2 = assemble(sched, std::min(1.0, s + c2 * h)).matrix();
  apply_exponential(a2 * h1 + a1 * h2, tau * h, psi);
  apply_exponential(a1 * h1 + a2 * h2, tau * h, psi);
}

}  // namespace detail

/// psi(tau) from i dpsi/dt = H(t/tau) psi. Integrated in s with a unitary
/// fourth-order Magnus scheme; step doubling controls the local error.
/// The norm is monitored and never renormalized.
inline PropagationResult propagate(const ScheduleSpec& sched, const PropagationConfig& cfg, const WaveState& psi0,
                                   const CnfInstance* overlap_instance = nullptr) {
  require(std::isfinite(cfg.tau) && cfg.tau >= 0.0, ErrorKind::input, "tau must be non-negative");
  require(psi0.dimension() == static_cast<Eigen::Index>(sched.dimension()), ErrorKind::input,
          "initial state dimension does not match the schedule");
  require(std::abs(psi0.norm() - 1.0) <= 1e-8, ErrorKind::input, "initial state is not normalized");
  require(cfg.tolerance > 0.0, ErrorKind::input, "tolerance must be positive");

  PropagationResult out;
  out.psi = psi0;
  Eigen::VectorXcd& psi = out.psi.amplitudes();
  const CnfInstance* track = overlap_instance ? overlap_instance : &sched.instance();
  const bool have_solution = track->unique_solution().has_value();

  auto record = [&](double s) {
    const double nrm = psi.norm();
    const double drift = std::abs(nrm - 1.0);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
    if (drift > cfg.norm_tolerance)
      fail(ErrorKind::accuracy, "norm drift " + std::to_string(drift) + " at s=" + std::to_string(s) + " after " +
                                    std::to_string(out.accepted_steps) + " steps");
    if (cfg.record_overlaps)
      out.trajectory.push_back({s, have_solution ? std::norm(psi(static_cast<Eigen::Index>(track->solution().bits())))
                                                 : std::nan(""),
                                nrm});
  };

  record(0.0);
  if (cfg.tau == 0.0) return out;

  if (cfg.fixed_steps > 0) {
    const double h = 1.0 / cfg.fixed_steps;
    for (int k = 0; k < cfg.fixed_steps; ++k) {
      detail::cf4_step(sched, cfg.tau, k * h, h, psi);
      ++out.accepted_steps;
      record((k + 1) * h);
    }
    return out;
  }

  double s = 0.0;
  double h = std::min(cfg.initial_step, 1.0);
  Eigen::VectorXcd full, half;
  while (s < 1.0) {
    require(out.accepted_steps + out.rejected_steps < cfg.max_steps, ErrorKind::accuracy,
            "step budget exhausted at s=" + std::to_string(s));
    const bool last = s + h >= 1.0;
    const double step = last ? 1.0 - s : h;
    full = psi;
    detail::cf4_step(sched, cfg.tau, s, step, full);
    half = psi;
    detail::cf4_step(sched, cfg.tau, s, 0.5 * step, half);
    detail::cf4_step(sched, cfg.tau, s + 0.5 * step, 0.5 * step, half);
    // Local error of the two half steps: difference / (2^4 - 1).
    const double err = (half - full).norm() / 15.0;
    if (err <= cfg.tolerance) {
      psi = half;
      s = last ? 1.0 : s + step;
      ++out.accepted_steps;
      record(s);
    } else {
      ++out.rejected_steps;
      require(step > 1e-14, ErrorKind::accuracy, "step size underflow at s=" + std::to_string(s));
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(cfg.tolerance / err, 0.2) : 4.0;
    h = step * std::clamp(factor, 0.2, 4.0);
  }
  return out;
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj) {
  os << "s,success_probability,norm\n";
  os.precision(17);
  for (const TrajectoryPoint& p : traj) os << p.s << ',' << p.success_probability << ',' << p.norm << '\n';
}

/// Projective computational-basis measurement.
inline Assignment sample_measurement(const WaveState& psi, int n_qubits, Rng& rng) {
  require(psi.dimension() == (Eigen::Index{1} << n_qubits), ErrorKind::input, "state dimension does not match n");
  std::vector<double> weights(static_cast<std::size_t>(psi.dimension()));
  for (Eigen::Index z = 0; z < psi.dimension(); ++z) weights[static_cast<std::size_t>(z)] = psi.probability(z);
  std::discrete_distribution<std::uint64_t> dist(weights.begin(), weights.end());
  return Assignment(n_qubits, dist(rng));
}

// ---------------------------------------------------------------------------
// Restart protocol

enum class RestartPolicy { refine, random };

inline std::string to_string(RestartPolicy p) { return p == RestartPolicy::refine ? "refine" : "random"; }

inline RestartPolicy restart_policy_from_string(const std::string& s) {
  if (s == "refine") return RestartPolicy::refine;
  if (s == "random") return RestartPolicy::random;
  fail(ErrorKind::input, "unknown restart mode '" + s + "' (expected refine or random)");
}

struct RestartConfig {
  PropagationConfig propagation;
  double delta = 1.5;
  HatFunction hat = HatFunction::three_s_one_minus_s();
  int max_rounds = 3;
  RestartPolicy policy = RestartPolicy::refine;
};

struct RestartRound {
  Assignment guess;
  Assignment measured;
  bool success = false;
};

struct RestartRecord {
  std::vector<RestartRound> rounds;
  int total_rounds = 0;
  bool succeeded = false;
};

/// Sombrero run from a guess, measure, stop on a solution; otherwise restart
/// from the measured string (refine) or a fresh uniform guess (random).
inline RestartRecord run_restart_protocol(const std::shared_ptr<const CnfInstance>& inst,
                                          const Assignment& initial_guess, const RestartConfig& cfg, Rng& rng) {
  require(inst != nullptr, ErrorKind::input, "restart protocol needs an instance");
  require(cfg.max_rounds >= 1, ErrorKind::input, "max_rounds must be at least 1");
  require(initial_guess.size() == inst->n(), ErrorKind::input, "guess length does not match n");
  RestartRecord rec;
  Assignment guess = initial_guess;
  std::uniform_int_distribution<std::uint64_t> fresh(0, (1ULL << inst->n()) - 1);
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    WaveState psi;
    try {
      const ScheduleSpec sched = ScheduleSpec::saqc(inst, guess, cfg.delta, cfg.hat);
      psi = propagate(sched, cfg.propagation, WaveState::basis(inst->n(), guess.bits())).psi;
    } catch (const Error& e) {
      fail(e.kind(), "restart round " + std::to_string(round) + ": " + e.what());
    }
    const Assignment measured = sample_measurement(psi, inst->n(), rng);
    const bool ok = unsatisfied_count(*inst, measured) == 0;
    rec.rounds.push_back({guess, measured, ok});
    rec.total_rounds = round;
    if (ok) {
      rec.succeeded = true;
      break;
    }
    guess = cfg.policy == RestartPolicy::refine ? measured : Assignment(inst->n(), fresh(rng));
  }
  return rec;
}

inline nlohmann::json to_json(const RestartRecord& rec) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const RestartRound& r : rec.rounds)
    rounds.push_back({{"guess", r.guess.to_string()}, {"measured", r.measured.to_string()}, {"success", r.success}});
  return {{"rounds", std::move(rounds)}, {"total_rounds", rec.total_rounds}, {"succeeded", rec.succeeded}};
}

}  // namespace saqc
