#pragma once

// DIMACS CNF with one extension comment, "c usa-solution <x_n ... x_1>",
// that carries the verified unique solution.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "saqc/error.hpp"
#include "saqc/sat.hpp"

namespace saqc {

inline void write_dimacs(std::ostream& os, const CnfInstance& inst) {
  if (inst.unique_solution()) os << "c usa-solution " << inst.unique_solution()->to_string() << '\n';
  os << "p cnf " << inst.n() << ' ' << inst.m() << '\n';
  for (const Clause& c : inst.clauses())
    os << c[0].signed_index() << ' ' << c[1].signed_index() << ' ' << c[2].signed_index() << " 0\n";
}

inline std::string to_dimacs(const CnfInstance& inst) {
  std::ostringstream os;
  write_dimacs(os, inst);
  return os.str();
}

inline CnfInstance read_dimacs(std::istream& is, const std::string& source = "<input>") {
  auto parse_fail = [&](int line, const std::string& msg) {
    fail(ErrorKind::parse, source + ":" + std::to_string(line) + ": " + msg);
  };

  int n = -1;
  int m = -1;
  int header_line = 0;
  std::optional<std::string> solution_text;
  int solution_line = 0;
  std::vector<Clause> clauses;
  std::vector<int> pending;
  int pending_line = 0;

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") {
      std::string tag;
      if (ls >> tag && tag == "usa-solution") {
        std::string bits;
        if (!(ls >> bits)) parse_fail(lineno, "usa-solution comment without a bitstring");
        solution_text = bits;
        solution_line = lineno;
      }
      continue;
    }
    if (first == "p") {
      std::string fmt;
      if (n >= 0) parse_fail(lineno, "duplicate problem line");
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 0)
        parse_fail(lineno, "expected 'p cnf <n> <m>'");
      header_line = lineno;
      continue;
    }
    if (n < 0) parse_fail(lineno, "clause data before the 'p cnf' header");

    std::istringstream vs(line);
    std::string tok;
    while (vs >> tok) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_fail(lineno, "not an integer literal: '" + tok + "'");
      }
      if (v == 0) {
        if (pending.size() != 3)
          parse_fail(pending_line ? pending_line : lineno,
                     "clause has " + std::to_string(pending.size()) + " literals, expected 3");
        Clause c{Literal::from_signed(pending[0]), Literal::from_signed(pending[1]),
                 Literal::from_signed(pending[2])};
        for (const Literal& lit : c)
          if (lit.variable > n) parse_fail(lineno, "variable " + std::to_string(lit.variable) + " exceeds n");
        if (c[0].variable == c[1].variable || c[0].variable == c[2].variable || c[1].variable == c[2].variable)
          parse_fail(lineno, "clause repeats a variable");
        clauses.push_back(c);
        pending.clear();
        pending_line = 0;
      } else {
        if (pending.empty()) pending_line = lineno;
        pending.push_back(v);
      }
    }
  }
  if (n < 0) parse_fail(lineno, "missing 'p cnf' header");
  if (!pending.empty()) parse_fail(pending_line, "unterminated clause (missing 0)");
  if (static_cast<int>(clauses.size()) != m)
    parse_fail(header_line, "header declares " + std::to_string(m) + " clauses, found " +
                                std::to_string(clauses.size()));

  CnfInstance inst(n, std::move(clauses));
  if (solution_text) {
    Assignment sol;
    try {
      sol = Assignment::parse(*solution_text);
    } catch (const Error& e) {
      parse_fail(solution_line, e.what());
    }
    if (sol.size() != n) parse_fail(solution_line, "usa-solution length does not match n");
    try {
      inst.set_unique_solution(sol);
    } catch (const Error& e) {
      parse_fail(solution_line, std::string("usa-solution rejected: ") + e.what());
    }
  }
  return inst;
}

inline CnfInstance parse_dimacs(const std::string& text, const std::string& source = "<string>") {
  std::istringstream is(text);
  return read_dimacs(is, source);
}

inline CnfInstance load_dimacs(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::parse, "cannot open " + path);
  return read_dimacs(in, path);
}

inline void save_dimacs(const std::string& path, const CnfInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::input, "cannot write " + path);
  write_dimacs(out, inst);
}

}  // namespace saqc
