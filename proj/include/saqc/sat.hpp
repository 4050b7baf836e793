#pragma once

// Random 3-SAT with unique satisfying assignments (USA): representation,
// evaluation by direct substitution, exhaustive counting and generation.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "saqc/error.hpp"
#include "saqc/random.hpp"

namespace saqc {

/// Largest variable count any Assignment can hold.
inline constexpr int kMaxVariables = 63;

struct Literal {
  int variable = 1;  // 1-based
  bool negated = false;

  /// DIMACS form: +v or -v.
  int signed_index() const { return negated ? -variable : variable; }
  static Literal from_signed(int v) { return Literal{v < 0 ? -v : v, v < 0}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// Variable x_j lives in bit j-1 (x_1 least significant), matching the ket
/// order |q_N ... q_1> used for basis indices.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    require(n >= 0 && n <= kMaxVariables, ErrorKind::input, "assignment length out of range");
    require(n == 64 || (bits >> n) == 0, ErrorKind::input, "assignment has bits beyond its length");
  }

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool value(int variable) const { return (bits_ >> (variable - 1)) & 1U; }

  Assignment complement() const { return Assignment(n_, ~bits_ & mask()); }
  std::uint64_t mask() const { return n_ == 64 ? ~0ULL : ((1ULL << n_) - 1); }

  /// Bitstring printed as x_n ... x_1.
  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int j = 0; j < n_; ++j)
      if ((bits_ >> j) & 1U) s[static_cast<std::size_t>(n_ - 1 - j)] = '1';
    return s;
  }

  static Assignment parse(std::string_view text) {
    require(!text.empty() && text.size() <= kMaxVariables, ErrorKind::input,
            "bitstring length out of range");
    std::uint64_t bits = 0;
    for (char c : text) {
      require(c == '0' || c == '1', ErrorKind::input,
              "bitstring must contain only 0 and 1: '" + std::string(text) + "'");
      bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return Assignment(static_cast<int>(text.size()), bits);
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

inline int hamming_distance(const Assignment& a, const Assignment& b) {
  require(a.size() == b.size(), ErrorKind::input, "hamming distance of different lengths");
  return std::popcount(a.bits() ^ b.bits());
}

inline bool literal_satisfied(const Literal& lit, std::uint64_t bits) {
  return static_cast<bool>((bits >> (lit.variable - 1)) & 1U) != lit.negated;
}

inline bool evaluate_clause(const Clause& clause, const Assignment& a) {
  for (const Literal& lit : clause)
    require(lit.variable >= 1 && lit.variable <= a.size(), ErrorKind::input,
            "clause variable " + std::to_string(lit.variable) + " out of range for assignment of length " +
                std::to_string(a.size()));
  return std::any_of(clause.begin(), clause.end(),
                     [&](const Literal& lit) { return literal_satisfied(lit, a.bits()); });
}

/// Clause in sorted literal order; equal clauses compare equal.
inline Clause canonical(Clause c) {
  std::sort(c.begin(), c.end());
  return c;
}

/// A clause is falsified by z iff (z & mask) == pattern.
struct ClauseMask {
  std::uint64_t mask = 0;
  std::uint64_t pattern = 0;

  explicit ClauseMask(const Clause& c) {
    for (const Literal& lit : c) {
      const std::uint64_t bit = 1ULL << (lit.variable - 1);
      mask |= bit;
      if (lit.negated) pattern |= bit;
    }
  }
  bool falsified_by(std::uint64_t z) const { return (z & mask) == pattern; }
};

class CnfInstance {
 public:
  CnfInstance() = default;

  /// Validates literals; the unique solution, when given, is verified by
  /// exhaustive enumeration.
  CnfInstance(int n, std::vector<Clause> clauses, std::optional<Assignment> unique_solution = std::nullopt)
      : n_(n), clauses_(std::move(clauses)) {
    require(n >= 1 && n <= kMaxVariables, ErrorKind::input, "variable count out of range");
    for (const Clause& c : clauses_) {
      for (const Literal& lit : c)
        require(lit.variable >= 1 && lit.variable <= n, ErrorKind::input,
                "literal variable " + std::to_string(lit.variable) + " outside [1.." + std::to_string(n) + "]");
      require(c[0].variable != c[1].variable && c[0].variable != c[2].variable && c[1].variable != c[2].variable,
              ErrorKind::input, "clause repeats a variable");
      masks_.emplace_back(c);
    }
    if (unique_solution) set_unique_solution(*unique_solution);
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(clauses_.size()); }
  double alpha() const { return static_cast<double>(m()) / n_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<ClauseMask>& masks() const { return masks_; }
  const std::optional<Assignment>& unique_solution() const { return solution_; }

  const Assignment& solution() const {
    require(solution_.has_value(), ErrorKind::state, "instance has no recorded unique solution");
    return *solution_;
  }

  /// Number of clauses falsified by the basis index z (no range checks).
  int unsatisfied_bits(std::uint64_t z) const {
    int count = 0;
    for (const ClauseMask& cm : masks_) count += cm.falsified_by(z) ? 1 : 0;
    return count;
  }

  void set_unique_solution(const Assignment& a);

 private:
  int n_ = 0;
  std::vector<Clause> clauses_;
  std::vector<ClauseMask> masks_;
  std::optional<Assignment> solution_;
};

inline int unsatisfied_count(const CnfInstance& inst, const Assignment& a) {
  require(a.size() == inst.n(), ErrorKind::input,
          "assignment length " + std::to_string(a.size()) + " does not match n=" + std::to_string(inst.n()));
  return inst.unsatisfied_bits(a.bits());
}

inline constexpr int kDefaultEnumerationCap = 24;

inline std::uint64_t count_satisfying(const CnfInstance& inst, int cap = kDefaultEnumerationCap) {
  require(inst.n() <= cap, ErrorKind::capacity,
          "n=" + std::to_string(inst.n()) + " exceeds the enumeration cap " + std::to_string(cap));
  std::uint64_t count = 0;
  const std::uint64_t states = 1ULL << inst.n();
  for (std::uint64_t z = 0; z < states; ++z) {
    bool sat = true;
    for (const ClauseMask& cm : inst.masks()) {
      if (cm.falsified_by(z)) {
        sat = false;
        break;
      }
    }
    count += sat ? 1 : 0;
  }
  return count;
}

/// First satisfying assignment in index order, if any.
inline std::optional<Assignment> first_satisfying(const CnfInstance& inst, int cap = kDefaultEnumerationCap) {
  require(inst.n() <= cap, ErrorKind::capacity, "n exceeds the enumeration cap");
  const std::uint64_t states = 1ULL << inst.n();
  for (std::uint64_t z = 0; z < states; ++z)
    if (inst.unsatisfied_bits(z) == 0) return Assignment(inst.n(), z);
  return std::nullopt;
}

inline void CnfInstance::set_unique_solution(const Assignment& a) {
  require(a.size() == n_, ErrorKind::input, "solution length does not match n");
  require(unsatisfied_bits(a.bits()) == 0, ErrorKind::input,
          "recorded solution " + a.to_string() + " does not satisfy every clause");
  require(count_satisfying(*this) == 1, ErrorKind::input, "instance does not have a unique satisfying assignment");
  solution_ = a;
}

struct GuessMetrics {
  int bf = 0;  // Hamming distance guess <-> solution
  int uc = 0;  // clauses the guess leaves unsatisfied
};

inline GuessMetrics guess_metrics(const CnfInstance& inst, const Assignment& guess) {
  const Assignment& sol = inst.solution();
  return GuessMetrics{hamming_distance(guess, sol), unsatisfied_count(inst, guess)};
}

// ---------------------------------------------------------------------------
// Generation

struct GenerationOptions {
  std::uint64_t max_attempts = 1'000'000;  // candidate instances
  int enumeration_cap = kDefaultEnumerationCap;
  int cover_cap = 8;  // largest n for which a solution cover set is allowed
};

/// Default clause count round(4.26 n).
inline int default_clause_count(int n) { return static_cast<int>(std::lround(4.26 * n)); }

namespace detail {

inline double distinct_clause_count(int n) {
  return 8.0 * n * (n - 1.0) * (n - 2.0) / 6.0;
}

inline void check_generation_args(int n, int m) {
  require(n >= 3, ErrorKind::input, "3-SAT generation needs n >= 3 (got " + std::to_string(n) + ")");
  require(n <= kMaxVariables, ErrorKind::input, "n too large");
  require(m >= 1, ErrorKind::input, "clause count must be positive");
  require(m <= distinct_clause_count(n), ErrorKind::input,
          "m=" + std::to_string(m) + " exceeds the number of distinct 3-clauses over n=" + std::to_string(n));
}

// Three distinct variables uniformly without replacement, fair-coin polarity.
inline Clause random_clause(int n, Rng& rng) {
  std::uniform_int_distribution<int> var(1, n);
  std::bernoulli_distribution coin(0.5);
  Clause c;
  for (std::size_t k = 0; k < 3; ++k) {
    int v = 0;
    do {
      v = var(rng);
    } while (std::any_of(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k),
                         [v](const Literal& l) { return l.variable == v; }));
    c[k] = Literal{v, coin(rng)};
  }
  return c;
}

inline std::vector<Clause> random_formula(int n, int m, Rng& rng) {
  std::vector<Clause> clauses;
  std::set<Clause> seen;
  clauses.reserve(static_cast<std::size_t>(m));
  while (static_cast<int>(clauses.size()) < m) {
    Clause c = random_clause(n, rng);
    if (seen.insert(canonical(c)).second) clauses.push_back(c);
  }
  return clauses;
}

// One candidate formula; returns its solution when it has exactly one.
inline std::optional<CnfInstance> try_usa_candidate(int n, int m, Rng& rng, int cap) {
  CnfInstance inst(n, random_formula(n, m, rng));
  if (count_satisfying(inst, cap) != 1) return std::nullopt;
  auto sol = first_satisfying(inst, cap);
  CnfInstance out(n, inst.clauses());
  out.set_unique_solution(*sol);
  return out;
}

}  // namespace detail

inline CnfInstance generate_usa_instance(int n, int m, Rng& rng, const GenerationOptions& opts = {}) {
  detail::check_generation_args(n, m);
  require(n <= opts.enumeration_cap, ErrorKind::capacity, "n exceeds the enumeration cap");
  for (std::uint64_t attempt = 0; attempt < opts.max_attempts; ++attempt)
    if (auto inst = detail::try_usa_candidate(n, m, rng, opts.enumeration_cap)) return *std::move(inst);
  fail(ErrorKind::generation, "no USA instance for n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                  " within " + std::to_string(opts.max_attempts) + " candidates");
}

/// USA instances whose unique solutions are pairwise distinct, in discovery
/// order. The attempt budget is shared by the whole set.
inline std::vector<CnfInstance> generate_distinct_solution_set(int n, int m, int count, Rng& rng,
                                                               const GenerationOptions& opts = {}) {
  detail::check_generation_args(n, m);
  require(n <= opts.cover_cap, ErrorKind::capacity,
          "n=" + std::to_string(n) + " exceeds the cover-set cap " + std::to_string(opts.cover_cap));
  const std::uint64_t states = 1ULL << n;
  require(count >= 1 && static_cast<std::uint64_t>(count) <= states, ErrorKind::input,
          "instance count must lie in [1, 2^n]");

  std::vector<CnfInstance> out;
  std::vector<bool> used(states, false);
  for (std::uint64_t attempt = 0; attempt < opts.max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    auto inst = detail::try_usa_candidate(n, m, rng, opts.enumeration_cap);
    if (!inst) continue;
    const std::uint64_t z = inst->solution().bits();
    if (used[z]) continue;
    used[z] = true;
    out.push_back(*std::move(inst));
  }
  if (static_cast<int>(out.size()) < count) {
    std::string missing;
    int listed = 0;
    for (std::uint64_t z = 0; z < states && listed < 16; ++z) {
      if (used[z]) continue;
      missing += (listed ? "," : "") + Assignment(n, z).to_string();
      ++listed;
    }
    fail(ErrorKind::generation, "found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                    " distinct-solution instances; missing solutions include " + missing);
  }
  return out;
}

/// 2^n USA instances covering every assignment exactly once as a solution.
inline std::vector<CnfInstance> generate_solution_cover_set(int n, int m, Rng& rng,
                                                            const GenerationOptions& opts = {}) {
  require(n >= 3, ErrorKind::input, "cover set needs n >= 3");
  require(n <= opts.cover_cap, ErrorKind::capacity, "n exceeds the cover-set cap");
  return generate_distinct_solution_set(n, m, 1 << n, rng, opts);
}

}  // namespace saqc
