#pragma once

#include <memory>
#include <vector>

#include "saqc/sat.hpp"

namespace fixtures {

/// The 27-clause, 6-variable worked instance, clauses in signed DIMACS form.
inline const std::vector<std::vector<int>>& worked_instance_clauses() {
  static const std::vector<std::vector<int>> clauses{
      {-1, -4, -5}, {-2, -3, -4}, {1, 2, -5},   {3, 4, 5},    {4, 5, -6},   {-1, -3, -5}, {1, -2, -5},
      {2, -3, -6},  {-1, -2, -6}, {3, -5, -6},  {-1, -2, -4}, {2, 3, -4},   {2, 5, -6},   {2, -3, -5},
      {-2, -3, -4}, {2, 3, 6},    {-1, -2, -3}, {-1, -4, -5}, {-3, -4, -6}, {-4, -5, 6},  {-2, 3, -6},
      {2, 5, 6},    {3, 5, -6},   {-1, 3, -6},  {3, -5, 6},   {4, 5, 6},    {1, 2, -3}};
  return clauses;
}

inline saqc::Clause to_clause(const std::vector<int>& c) {
  return {saqc::Literal::from_signed(c[0]), saqc::Literal::from_signed(c[1]), saqc::Literal::from_signed(c[2])};
}

inline saqc::CnfInstance worked_instance() {
  std::vector<saqc::Clause> clauses;
  for (const auto& c : worked_instance_clauses()) clauses.push_back(to_clause(c));
  return saqc::CnfInstance(6, std::move(clauses));
}

inline std::vector<std::vector<int>> signed_clauses(const saqc::CnfInstance& inst) {
  std::vector<std::vector<int>> out;
  for (const auto& c : inst.clauses()) out.push_back({c[0].signed_index(), c[1].signed_index(), c[2].signed_index()});
  return out;
}

/// n=3 toy: the seven clauses falsified by every pattern except 101
/// (x3=1, x2=0, x1=1), so 101 is the only solution.
inline std::shared_ptr<const saqc::CnfInstance> toy3() {
  std::vector<saqc::Clause> clauses;
  for (std::uint64_t z = 0; z < 8; ++z) {
    if (z == 0b101) continue;
    saqc::Clause c;
    // Clause falsified exactly at z: literal x_j negated iff bit j-1 of z is 1.
    for (int j = 1; j <= 3; ++j) c[static_cast<std::size_t>(j - 1)] = saqc::Literal{j, ((z >> (j - 1)) & 1U) != 0};
    clauses.push_back(c);
  }
  return std::make_shared<const saqc::CnfInstance>(3, std::move(clauses), saqc::Assignment(3, 0b101));
}

}  // namespace fixtures
