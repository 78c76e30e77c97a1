#pragma once

// Weighted CNF formulas, DIMACS I/O, and their characteristic functions on C_2^n.
//
// Assignments map to group points through tau(False) = +1, tau(True) = -1, i.e.
// variable i set to True <=> coordinate g_i = 1 (z_i = (-1)^{g_i} = -1).

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "fsos/gfunc.hpp"

namespace fsos {

struct Clause {
  std::vector<int> pos;  // 1-based variables appearing positively
  std::vector<int> neg;  // 1-based variables appearing negated
  long long weight = 1;

  std::size_t size() const { return pos.size() + neg.size(); }
};

class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(int n_vars, std::vector<Clause> clauses);

  int n_vars() const { return n_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t m() const { return clauses_.size(); }
  long long total_weight() const;
  std::size_t max_clause_length() const;
  bool weighted() const;

 private:
  int n_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Reads DIMACS cnf or wcnf. Errors carry the offending line number.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
CnfFormula read_dimacs_file(const std::string& path);
/// Writes "p cnf" when every weight is 1, "p wcnf" otherwise.
std::string to_dimacs(const CnfFormula& phi);

/// f(z) = sum_j w_j 2^{-l_j} prod_{i in S+_j}(1 + z_i) prod_{i in S-_j}(1 - z_i),
/// with l_j the literal count of clause j.
GroupFunction characteristic_function(const CnfFormula& phi);

/// Total weight of clauses with every literal false under the assignment.
long long count_falsified(const CnfFormula& phi, const std::vector<bool>& assignment);

GroupElement encode_assignment(const std::vector<bool>& assignment);
std::vector<bool> decode_assignment(const GroupElement& g);
/// "1 -2 3 ..." style signed literal list for an assignment.
std::string format_assignment(const std::vector<bool>& assignment);

}  // namespace fsos
