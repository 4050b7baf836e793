#pragma once

// Low-lying spectrum along a schedule: two lowest eigenpairs, minimum gap
// with its location, and the matrix element max_s |<E1| dH/ds |E0>|.

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "saqc/error.hpp"
#include "saqc/hamiltonians.hpp"

namespace saqc {

struct EigenPair2 {
  double e0 = 0.0;
  double e1 = 0.0;
  std::optional<Eigen::VectorXd> v0;
  std::optional<Eigen::VectorXd> v1;

  double gap() const { return e1 - e0; }
};

/// The k algebraically smallest eigenvalues, ascending, with eigenvectors in
/// the columns of `vectors` when requested.
struct LowSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // empty unless requested
};

namespace detail {

inline bool is_diagonal(const Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0.0) return false;
  return true;
}

inline void check_finite(const Eigen::MatrixXd& m) {
  require(m.allFinite(), ErrorKind::input, "matrix has non-finite entries");
}

// Diagonal matrices are solved exactly: the spectrum is the diagonal.
inline LowSpectrum diagonal_low_spectrum(const Eigen::MatrixXd& m, int k, bool vectors) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return m(a, a) < m(b, b); });
  LowSpectrum out;
  out.values.resize(k);
  if (vectors) out.vectors = Eigen::MatrixXd::Zero(m.rows(), k);
  for (int i = 0; i < k; ++i) {
    const Eigen::Index idx = order[static_cast<std::size_t>(i)];
    out.values(i) = m(idx, idx);
    if (vectors) out.vectors(idx, i) = 1.0;
  }
  return out;
}

}  // namespace detail

/// k lowest eigenpairs of a real symmetric matrix (LAPACK dsyevr, lower
/// triangle referenced).
inline LowSpectrum lowest_eigenpairs(const Eigen::MatrixXd& m, int k, bool vectors) {
  const auto n = m.rows();
  require(m.cols() == n, ErrorKind::input, "matrix is not square");
  require(k >= 1 && k <= n, ErrorKind::input, "requested eigenpair count out of range");
  detail::check_finite(m);
  if (detail::is_diagonal(m)) return detail::diagonal_low_spectrum(m, k, vectors);

  Eigen::MatrixXd a = m;  // dsyevr overwrites its input
  const auto ln = static_cast<lapack_int>(n);
  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  LowSpectrum out;
  if (vectors) out.vectors.resize(n, k);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'I', 'L', ln, a.data(), ln, 0.0, 0.0, 1,
                     static_cast<lapack_int>(k), 2.0 * LAPACKE_dlamch('S'), &found, w.data(),
                     vectors ? out.vectors.data() : nullptr, vectors ? ln : 1, support.data());
  require(info == 0 && found == k, ErrorKind::accuracy, "dsyevr failed (info=" + std::to_string(info) + ")");
  out.values = Eigen::Map<Eigen::VectorXd>(w.data(), k);
  return out;
}

inline EigenPair2 lowest_two(const DenseSymmetricMatrix& h, bool with_vectors = true) {
  require(h.dimension() >= 2, ErrorKind::input, "need dimension >= 2 for two eigenpairs");
  LowSpectrum low = lowest_eigenpairs(h.matrix(), 2, with_vectors);
  EigenPair2 out{low.values(0), low.values(1), std::nullopt, std::nullopt};
  if (with_vectors) {
    out.v0 = low.vectors.col(0);
    out.v1 = low.vectors.col(1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix element |<E1| D |E0>| with degenerate levels

struct MatrixElement {
  double value = 0.0;
  bool degenerate = false;  // a level cluster touched E0 or E1
};

inline double degeneracy_tolerance(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

/// |<E1|D|E0>| for the lowest two levels of H. When E1 is degenerate the
/// maximum over unit vectors of its eigenspace is taken; when E0 and E1
/// coincide, the maximum over orthonormal pairs in the common eigenspace.
inline MatrixElement transition_element(const Eigen::MatrixXd& h, const Eigen::MatrixXd& d) {
  const auto n = h.rows();
  const int k = n >= 3 ? 3 : 2;
  LowSpectrum low = lowest_eigenpairs(h, k, true);
  const double tol = degeneracy_tolerance(low.values.cwiseAbs().maxCoeff());
  const bool cluster = (low.values(1) - low.values(0) <= tol) || (k == 3 && low.values(2) - low.values(1) <= tol);
  if (!cluster) {
    const double v = low.vectors.col(1).dot(d * low.vectors.col(0));
    return {std::abs(v), false};
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& vec = es.eigenvectors();
  Eigen::Index c0 = 1;
  while (c0 < n && lam(c0) - lam(0) <= tol) ++c0;
  if (c0 >= 2) {
    const Eigen::MatrixXd w = vec.leftCols(c0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ce(w.transpose() * d * w, Eigen::EigenvaluesOnly);
    return {0.5 * (ce.eigenvalues().maxCoeff() - ce.eigenvalues().minCoeff()), true};
  }
  Eigen::Index c1 = 2;
  while (c1 < n && lam(c1) - lam(1) <= tol) ++c1;
  const Eigen::MatrixXd w = vec.middleCols(1, c1 - 1);
  return {(w.transpose() * (d * vec.col(0))).norm(), true};
}

// ---------------------------------------------------------------------------
// Gap scan

struct GapSample {
  double s = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  double gap() const { return e1 - e0; }
};

struct GapScanResult {
  std::vector<GapSample> samples;  // uniform grid, s ascending
  double g_min = 0.0;
  double s_star = 0.0;
  bool refined = false;
  bool interior = false;  // s_star strictly inside (0,1)
};

struct ScanOptions {
  int grid_points = 201;
  double s_tolerance = 1e-6;  // golden-section bracket width
};

struct Minimum1D {
  double x = 0.0;
  double fx = 0.0;
};

/// Golden-section search for a minimum of f on [a, b] until the bracket is
/// no wider than tol. Returns the best point evaluated.
inline Minimum1D golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  Minimum1D best = fc <= fd ? Minimum1D{c, fc} : Minimum1D{d, fd};
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
      if (fc < best.fx) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
      if (fd < best.fx) best = {d, fd};
    }
  }
  return best;
}

inline double grid_point(int k, int grid_points) {
  return static_cast<double>(k) / static_cast<double>(grid_points - 1);
}

/// Minimum of e1 - e0 along s for any s -> symmetric matrix map: uniform grid,
/// bracket around the best sample, golden-section refinement.
template <typename MatrixAt>
GapScanResult scan_gap_with(MatrixAt&& matrix_at, const ScanOptions& opts = {},
                            const std::function<void(double, const LowSpectrum&)>& on_sample = {}) {
  require(opts.grid_points >= 3, ErrorKind::input, "gap scan needs at least 3 grid points");
  GapScanResult out;
  out.samples.reserve(static_cast<std::size_t>(opts.grid_points));
  const bool want_vectors = static_cast<bool>(on_sample);
  for (int k = 0; k < opts.grid_points; ++k) {
    const double s = grid_point(k, opts.grid_points);
    const Eigen::MatrixXd h = matrix_at(s);
    require(h.rows() >= 2, ErrorKind::input, "need dimension >= 2 for a gap");
    const int count = want_vectors && h.rows() >= 3 ? 3 : 2;
    LowSpectrum low = lowest_eigenpairs(h, count, want_vectors);
    out.samples.push_back({s, low.values(0), low.values(1)});
    if (want_vectors) on_sample(s, low);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.samples.size(); ++i)
    if (out.samples[i].gap() < out.samples[best].gap()) best = i;
  out.g_min = out.samples[best].gap();
  out.s_star = out.samples[best].s;

  const double lo = out.samples[best == 0 ? 0 : best - 1].s;
  const double hi = out.samples[std::min(best + 1, out.samples.size() - 1)].s;
  auto gap_at = [&](double s) {
    LowSpectrum low = lowest_eigenpairs(matrix_at(s), 2, false);
    return low.values(1) - low.values(0);
  };
  const Minimum1D m = golden_section_minimize(gap_at, lo, hi, opts.s_tolerance);
  out.refined = true;
  if (m.fx < out.g_min) {
    out.g_min = m.fx;
    out.s_star = m.x;
  }
  out.g_min = std::max(out.g_min, 0.0);
  out.interior = out.s_star > 0.0 && out.s_star < 1.0;
  return out;
}

inline GapScanResult scan_gap(const ScheduleSpec& sched, const ScanOptions& opts = {}) {
  Eigen::MatrixXd work;
  return scan_gap_with(
      [&](double s) -> const Eigen::MatrixXd& {
        assemble_into(sched, s, work);
        return work;
      },
      opts);
}

// ---------------------------------------------------------------------------
// Matrix-element quantity and runtime indicator

struct EpsilonResult {
  double value = 0.0;
  double s_at_max = 0.0;
  std::vector<double> degenerate_points;  // grid points where a level cluster was met
};

namespace detail {

inline void accumulate_epsilon(EpsilonResult& acc, double s, const MatrixElement& me) {
  if (me.degenerate) acc.degenerate_points.push_back(s);
  if (me.value > acc.value) {
    acc.value = me.value;
    acc.s_at_max = s;
  }
}

}  // namespace detail

/// max over the s-grid of |<E1(s)| dH/ds |E0(s)>|.
inline EpsilonResult epsilon_measured(const ScheduleSpec& sched, int grid_points = 201) {
  require(grid_points >= 2, ErrorKind::input, "epsilon grid needs at least 2 points");
  EpsilonResult out;
  Eigen::MatrixXd h;
  for (int k = 0; k < grid_points; ++k) {
    const double s = grid_point(k, grid_points);
    assemble_into(sched, s, h);
    detail::accumulate_epsilon(out, s, transition_element(h, derivative(sched, s).matrix()));
  }
  return out;
}

struct GapAndEpsilon {
  GapScanResult gap;
  EpsilonResult epsilon;
};

/// One pass over the grid producing both the gap scan and epsilon_measured.
inline GapAndEpsilon scan_gap_and_epsilon(const ScheduleSpec& sched, const ScanOptions& opts = {}) {
  GapAndEpsilon out;
  Eigen::MatrixXd work;
  auto matrix_at = [&](double s) -> const Eigen::MatrixXd& {
    assemble_into(sched, s, work);
    return work;
  };
  auto on_sample = [&](double s, const LowSpectrum& low) {
    const Eigen::MatrixXd d = derivative(sched, s).matrix();
    const double tol = degeneracy_tolerance(low.values.cwiseAbs().maxCoeff());
    const bool cluster = low.values(1) - low.values(0) <= tol ||
                         (low.values.size() > 2 && low.values(2) - low.values(1) <= tol);
    MatrixElement me;
    if (cluster) {
      me = transition_element(work, d);
    } else {
      me = {std::abs(low.vectors.col(1).dot(d * low.vectors.col(0))), false};
    }
    detail::accumulate_epsilon(out.epsilon, s, me);
  };
  out.gap = scan_gap_with(matrix_at, opts, on_sample);
  return out;
}

/// N (alpha + 1 + 9|delta|): the triangle/Schwarz bound for the sombrero
/// schedule with hat(s) = 3s(1-s).
inline double epsilon_upper_bound(int n, double alpha, double delta) {
  require(n >= 1, ErrorKind::input, "N must be positive");
  require(alpha > 0.0, ErrorKind::input, "alpha must be positive");
  return n * (alpha + 1.0 + 9.0 * std::abs(delta));
}

/// N (alpha + |delta|) = M + |delta| N: the same bound for dH/ds = H_f - D.
inline double caqc_epsilon_upper_bound(int n, double alpha, double delta) {
  require(n >= 1, ErrorKind::input, "N must be positive");
  require(alpha > 0.0, ErrorKind::input, "alpha must be positive");
  return n * (alpha + std::abs(delta));
}

/// E / g_min^2. A scale indicator for the evolution time, not a guarantee.
inline double runtime_estimate(double e_measured, double g_min) {
  require(std::isfinite(g_min) && g_min > 0.0, ErrorKind::degenerate,
          "runtime estimate needs a positive minimum gap");
  return e_measured / (g_min * g_min);
}

struct EBound {
  double e_measured = 0.0;
  double e_upper = 0.0;
  double tau_lower_estimate = 0.0;
};

inline EBound e_bound(const ScheduleSpec& sched, double e_measured, double g_min) {
  const auto& inst = sched.instance();
  const double upper = sched.mode() == Mode::saqc ? epsilon_upper_bound(inst.n(), inst.alpha(), sched.delta())
                                                  : caqc_epsilon_upper_bound(inst.n(), inst.alpha(), sched.delta());
  return {e_measured, upper, runtime_estimate(e_measured, g_min)};
}

inline void write_gap_csv(std::ostream& os, const GapScanResult& r) {
  os << "s,e0,e1,gap\n";
  os.precision(17);
  for (const GapSample& p : r.samples) os << p.s << ',' << p.e0 << ',' << p.e1 << ',' << p.gap() << '\n';
}

}  // namespace saqc
