#pragma once

// Computational-basis Hamiltonians for guess-seeded (sombrero) and
// conventional adiabatic schedules over 3-SAT penalty functions.
//
// Basis index z holds qubit q_n in bit n-1, the same convention as
// Assignment, so a basis state and an assignment share one integer.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "saqc/error.hpp"
#include "saqc/sat.hpp"

namespace saqc {

inline constexpr int kMaxDenseQubits = 14;

/// Diagonal operator in the computational basis.
struct DiagonalOperator {
  int n_qubits = 0;
  std::vector<double> diag;

  std::size_t dimension() const { return diag.size(); }
  double operator[](std::uint64_t z) const { return diag[z]; }
};

/// Diagonal of H_i = sum_n (x_n I + q_n (1 - 2 x_n)): the Hamming distance
/// from each basis state to the guess.
inline DiagonalOperator initial_hamiltonian(const Assignment& guess) {
  require(guess.size() >= 1, ErrorKind::input, "initial Hamiltonian needs at least one qubit");
  require(guess.size() <= kMaxDenseQubits, ErrorKind::capacity, "too many qubits for a dense diagonal");
  DiagonalOperator h{guess.size(), std::vector<double>(1ULL << guess.size())};
  for (std::uint64_t z = 0; z < h.diag.size(); ++z) h.diag[z] = std::popcount(z ^ guess.bits());
  return h;
}

/// Diagonal of H_f = sum_i h_{C_i}: the number of clauses each basis state
/// leaves unsatisfied.
inline DiagonalOperator final_hamiltonian(const CnfInstance& inst) {
  require(inst.n() <= kMaxDenseQubits, ErrorKind::capacity, "too many qubits for a dense diagonal");
  DiagonalOperator h{inst.n(), std::vector<double>(1ULL << inst.n())};
  for (std::uint64_t z = 0; z < h.diag.size(); ++z) h.diag[z] = inst.unsatisfied_bits(z);
  return h;
}

// ---------------------------------------------------------------------------
// Clause penalty as a polynomial in the x_j

/// Multilinear polynomial with integer coefficients; keys are sorted variable
/// lists, the empty key is the constant term.
struct MultilinearPolynomial {
  std::map<std::vector<int>, int> terms;

  int evaluate(std::uint64_t bits) const {
    int total = 0;
    for (const auto& [vars, coeff] : terms) {
      int prod = coeff;
      for (int v : vars) prod *= static_cast<int>((bits >> (v - 1)) & 1U);
      total += prod;
    }
    return total;
  }

  int degree() const {
    int d = 0;
    for (const auto& [vars, coeff] : terms) d = std::max(d, static_cast<int>(vars.size()));
    return d;
  }
};

/// h_C = prod (1 - a) over the clause literals, with each negated literal
/// rewritten as 1 - x. Expanded, zero coefficients dropped.
inline MultilinearPolynomial clause_penalty_polynomial(const Clause& clause) {
  require(clause[0].variable != clause[1].variable && clause[0].variable != clause[2].variable &&
              clause[1].variable != clause[2].variable,
          ErrorKind::input, "clause repeats a variable");
  // (1 - a) is x for a negated literal and (1 - x) for a positive one.
  std::map<std::vector<int>, int> acc{{{}, 1}};
  for (const Literal& lit : clause) {
    std::map<std::vector<int>, int> next;
    for (const auto& [vars, coeff] : acc) {
      std::vector<int> with = vars;
      with.insert(std::upper_bound(with.begin(), with.end(), lit.variable), lit.variable);
      if (lit.negated) {
        next[with] += coeff;
      } else {
        next[vars] += coeff;
        next[with] -= coeff;
      }
    }
    acc = std::move(next);
  }
  MultilinearPolynomial p;
  for (auto& [vars, coeff] : acc)
    if (coeff != 0) p.terms.emplace(vars, coeff);
  return p;
}

// ---------------------------------------------------------------------------
// Transverse driver  delta * sum_n q^x_n,  q^x = (I - sigma^x) / 2

inline double driver_matrix_element(int n_qubits, double delta, std::uint64_t z, std::uint64_t zp) {
  if (z == zp) return 0.5 * delta * n_qubits;
  return std::popcount(z ^ zp) == 1 ? -0.5 * delta : 0.0;
}

struct DriverOperator {
  int n_qubits = 0;
  double delta = 1.0;

  DriverOperator(int n, double d) : n_qubits(n), delta(d) {
    require(n >= 1, ErrorKind::input, "driver needs at least one qubit");
    require(std::isfinite(d) && d > 0.0, ErrorKind::input, "transverse-field intensity must be positive");
  }

  std::uint64_t dimension() const { return 1ULL << n_qubits; }
  double element(std::uint64_t z, std::uint64_t zp) const { return driver_matrix_element(n_qubits, delta, z, zp); }

  /// y = D x without forming D.
  template <typename Vec>
  Vec apply(const Vec& x) const {
    Vec y = x * (0.5 * delta * n_qubits);
    for (std::uint64_t z = 0; z < dimension(); ++z)
      for (int k = 0; k < n_qubits; ++k)
        y[static_cast<Eigen::Index>(z)] -= 0.5 * delta * x[static_cast<Eigen::Index>(z ^ (1ULL << k))];
    return y;
  }
};

// ---------------------------------------------------------------------------
// Driver time profiles

enum class HatKind { three_s_one_minus_s, sin_sq_pi_s, s_one_minus_s, tabulated };

/// Driver intensity profile for the sombrero schedule; zero at both ends.
class HatFunction {
 public:
  HatFunction() = default;

  static HatFunction three_s_one_minus_s() { return HatFunction(HatKind::three_s_one_minus_s); }
  static HatFunction sin_sq_pi_s() { return HatFunction(HatKind::sin_sq_pi_s); }
  static HatFunction s_one_minus_s() { return HatFunction(HatKind::s_one_minus_s); }

  /// Values (and optionally derivatives) on a uniform grid over [0,1],
  /// linearly interpolated.
  static HatFunction tabulated(std::vector<double> values, std::optional<std::vector<double>> derivatives = {}) {
    require(values.size() >= 2, ErrorKind::input, "tabulated hat needs at least two samples");
    require(values.front() == 0.0 && values.back() == 0.0, ErrorKind::input,
            "tabulated hat must vanish at s=0 and s=1");
    for (double v : values) require(std::isfinite(v), ErrorKind::input, "tabulated hat has non-finite values");
    if (derivatives)
      require(derivatives->size() == values.size(), ErrorKind::input,
              "tabulated hat derivative table must match the value table");
    HatFunction h(HatKind::tabulated);
    h.values_ = std::move(values);
    h.derivatives_ = std::move(derivatives);
    return h;
  }

  static HatFunction from_name(const std::string& name) {
    if (name == "3s(1-s)" || name == "three_s_one_minus_s" || name == "default") return three_s_one_minus_s();
    if (name == "sin2" || name == "sin_sq_pi_s") return sin_sq_pi_s();
    if (name == "s(1-s)" || name == "s_one_minus_s") return s_one_minus_s();
    fail(ErrorKind::input, "unknown hat function '" + name + "'");
  }

  HatKind kind() const { return kind_; }

  std::string name() const {
    switch (kind_) {
      case HatKind::three_s_one_minus_s: return "three_s_one_minus_s";
      case HatKind::sin_sq_pi_s: return "sin_sq_pi_s";
      case HatKind::s_one_minus_s: return "s_one_minus_s";
      case HatKind::tabulated: return "tabulated";
    }
    return "?";
  }

  double value(double s) const {
    switch (kind_) {
      case HatKind::three_s_one_minus_s: return 3.0 * s * (1.0 - s);
      case HatKind::sin_sq_pi_s: {
        const double x = std::sin(std::numbers::pi * s);
        return x * x;
      }
      case HatKind::s_one_minus_s: return s * (1.0 - s);
      case HatKind::tabulated: return interpolate(values_, s);
    }
    return 0.0;
  }

  double derivative(double s) const {
    switch (kind_) {
      case HatKind::three_s_one_minus_s: return 3.0 - 6.0 * s;
      case HatKind::sin_sq_pi_s: return std::numbers::pi * std::sin(2.0 * std::numbers::pi * s);
      case HatKind::s_one_minus_s: return 1.0 - 2.0 * s;
      case HatKind::tabulated:
        if (!derivatives_) fail(ErrorKind::unsupported, "tabulated hat has no derivative table");
        return interpolate(*derivatives_, s);
    }
    return 0.0;
  }

 private:
  explicit HatFunction(HatKind kind) : kind_(kind) {}

  static double interpolate(const std::vector<double>& table, double s) {
    const double pos = std::clamp(s, 0.0, 1.0) * static_cast<double>(table.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), table.size() - 2);
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * table[i] + t * table[i + 1];
  }

  HatKind kind_ = HatKind::three_s_one_minus_s;
  std::vector<double> values_;
  std::optional<std::vector<double>> derivatives_;
};

// ---------------------------------------------------------------------------
// Schedules

enum class Mode { caqc, saqc };

inline std::string to_string(Mode m) { return m == Mode::caqc ? "CAQC" : "SAQC"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "CAQC" || s == "caqc") return Mode::caqc;
  if (s == "SAQC" || s == "saqc") return Mode::saqc;
  fail(ErrorKind::input, "unknown mode '" + s + "' (expected caqc or saqc)");
}

/// Real symmetric matrix in the computational basis.
class DenseSymmetricMatrix {
 public:
  DenseSymmetricMatrix() = default;
  explicit DenseSymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols(), ErrorKind::input, "matrix is not square");
  }

  Eigen::Index dimension() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::MatrixXd& mutable_matrix() { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Assembly rule for one adiabatic run:
///   CAQC: (1-s) D + s H_f
///   SAQC: (1-s) H_i + hat(s) D + s H_f
class ScheduleSpec {
 public:
  static ScheduleSpec caqc(std::shared_ptr<const CnfInstance> inst, double delta) {
    require(inst != nullptr, ErrorKind::input, "schedule needs an instance");
    return ScheduleSpec(Mode::caqc, std::move(inst), delta, HatFunction(), std::nullopt);
  }

  static ScheduleSpec saqc(std::shared_ptr<const CnfInstance> inst, const Assignment& guess, double delta,
                           HatFunction hat = HatFunction::three_s_one_minus_s()) {
    require(inst != nullptr, ErrorKind::input, "schedule needs an instance");
    require(guess.size() == inst->n(), ErrorKind::input,
            "guess length " + std::to_string(guess.size()) + " does not match N=" + std::to_string(inst->n()));
    return ScheduleSpec(Mode::saqc, std::move(inst), delta, std::move(hat), guess);
  }

  Mode mode() const { return mode_; }
  int n_qubits() const { return instance_->n(); }
  std::uint64_t dimension() const { return 1ULL << n_qubits(); }
  double delta() const { return driver_.delta; }
  const HatFunction& hat() const { return hat_; }
  const std::optional<Assignment>& guess() const { return guess_; }
  const CnfInstance& instance() const { return *instance_; }
  std::shared_ptr<const CnfInstance> instance_ptr() const { return instance_; }
  const DriverOperator& driver() const { return driver_; }
  const DiagonalOperator& final_diag() const { return final_; }

  const DiagonalOperator& initial_diag() const {
    require(initial_.has_value(), ErrorKind::state, "CAQC schedule has no guess Hamiltonian");
    return *initial_;
  }

  /// Weight of the driver term at s.
  double driver_weight(double s) const { return mode_ == Mode::caqc ? 1.0 - s : hat_.value(s); }
  double driver_weight_derivative(double s) const { return mode_ == Mode::caqc ? -1.0 : hat_.derivative(s); }

  /// Diagonal entries other than the driver's.
  double problem_diag(std::uint64_t z, double s) const {
    const double f = s * final_.diag[z];
    return mode_ == Mode::caqc ? f : f + (1.0 - s) * initial_->diag[z];
  }

 private:
  ScheduleSpec(Mode mode, std::shared_ptr<const CnfInstance> inst, double delta, HatFunction hat,
               std::optional<Assignment> guess)
      : mode_(mode),
        instance_(std::move(inst)),
        driver_(instance_->n(), delta),
        hat_(std::move(hat)),
        guess_(guess),
        final_(final_hamiltonian(*instance_)) {
    if (guess_) initial_ = initial_hamiltonian(*guess_);
  }

  Mode mode_;
  std::shared_ptr<const CnfInstance> instance_;
  DriverOperator driver_;
  HatFunction hat_;
  std::optional<Assignment> guess_;
  DiagonalOperator final_;
  std::optional<DiagonalOperator> initial_;
};

namespace detail {

inline void check_schedule_point(double s) {
  require(std::isfinite(s) && s >= 0.0 && s <= 1.0, ErrorKind::input,
          "schedule point s=" + std::to_string(s) + " outside [0,1]");
}

// out = diag(d) + w * D, written element by element so the result is exactly
// symmetric.
inline void fill_with_driver(const ScheduleSpec& sched, double w, const std::vector<double>& d,
                             Eigen::MatrixXd& out) {
  const auto dim = static_cast<Eigen::Index>(sched.dimension());
  const int n = sched.n_qubits();
  out.setZero(dim, dim);
  const double on = w * 0.5 * sched.delta() * n;
  const double off = w * -0.5 * sched.delta();
  for (Eigen::Index z = 0; z < dim; ++z) {
    out(z, z) = d[static_cast<std::size_t>(z)] + on;
    if (w == 0.0) continue;
    for (int k = 0; k < n; ++k) out(z ^ (Eigen::Index{1} << k), z) = off;
  }
}

}  // namespace detail

inline void assemble_into(const ScheduleSpec& sched, double s, Eigen::MatrixXd& out) {
  detail::check_schedule_point(s);
  require(sched.n_qubits() <= kMaxDenseQubits, ErrorKind::capacity, "too many qubits for dense assembly");
  std::vector<double> d(sched.dimension());
  for (std::uint64_t z = 0; z < d.size(); ++z) d[z] = sched.problem_diag(z, s);
  detail::fill_with_driver(sched, sched.driver_weight(s), d, out);
}

inline DenseSymmetricMatrix assemble(const ScheduleSpec& sched, double s) {
  Eigen::MatrixXd m;
  assemble_into(sched, s, m);
  return DenseSymmetricMatrix(std::move(m));
}

/// dH/ds. CAQC: H_f - D. SAQC: H_f - H_i + hat'(s) D.
inline DenseSymmetricMatrix derivative(const ScheduleSpec& sched, double s) {
  detail::check_schedule_point(s);
  require(sched.n_qubits() <= kMaxDenseQubits, ErrorKind::capacity, "too many qubits for dense assembly");
  std::vector<double> d(sched.dimension());
  for (std::uint64_t z = 0; z < d.size(); ++z) {
    d[z] = sched.final_diag().diag[z];
    if (sched.mode() == Mode::saqc) d[z] -= sched.initial_diag().diag[z];
  }
  Eigen::MatrixXd m;
  detail::fill_with_driver(sched, sched.driver_weight_derivative(s), d, m);
  return DenseSymmetricMatrix(std::move(m));
}

// ---------------------------------------------------------------------------
// Export

inline nlohmann::json to_json(const DenseSymmetricMatrix& m, int n_qubits, double s, Mode mode) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.dimension(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.dimension(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n_qubits", n_qubits}, {"s", s}, {"mode", to_string(mode)}, {"entries", std::move(rows)}};
}

inline nlohmann::json to_json(const DiagonalOperator& d, double s, Mode mode) {
  return {{"n_qubits", d.n_qubits}, {"s", s}, {"mode", to_string(mode)}, {"diag", d.diag}};
}

}  // namespace saqc
