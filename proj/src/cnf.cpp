#include "fsos/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "fsos/error.hpp"

namespace fsos {

CnfFormula::CnfFormula(int n_vars, std::vector<Clause> clauses) : n_vars_(n_vars), clauses_(std::move(clauses)) {
  if (n_vars_ < 1) throw Error(ErrorKind::kInvalidArgument, "formula needs at least one variable");
  if (clauses_.empty()) throw Error(ErrorKind::kInvalidArgument, "formula needs at least one clause");
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    Clause& c = clauses_[j];
    const std::string where = "clause " + std::to_string(j + 1);
    if (c.size() == 0) throw Error(ErrorKind::kInvalidArgument, where + " is empty");
    if (c.weight < 1) throw Error(ErrorKind::kInvalidArgument, where + " has weight < 1");
    std::sort(c.pos.begin(), c.pos.end());
    c.pos.erase(std::unique(c.pos.begin(), c.pos.end()), c.pos.end());
    std::sort(c.neg.begin(), c.neg.end());
    c.neg.erase(std::unique(c.neg.begin(), c.neg.end()), c.neg.end());
    for (const auto* side : {&c.pos, &c.neg}) {
      for (int v : *side) {
        if (v < 1 || v > n_vars_) throw Error(ErrorKind::kInvalidArgument, where + " mentions variable out of range");
      }
    }
    std::vector<int> both;
    std::set_intersection(c.pos.begin(), c.pos.end(), c.neg.begin(), c.neg.end(), std::back_inserter(both));
    if (!both.empty()) throw Error(ErrorKind::kInvalidArgument, where + " is tautological");
  }
}

long long CnfFormula::total_weight() const {
  long long s = 0;
  for (const Clause& c : clauses_) s += c.weight;
  return s;
}

std::size_t CnfFormula::max_clause_length() const {
  std::size_t k = 0;
  for (const Clause& c : clauses_) k = std::max(k, c.size());
  return k;
}

bool CnfFormula::weighted() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.weight != 1; });
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  bool have_header = false;
  bool wcnf = false;
  long long n_vars = 0;
  long long n_clauses = 0;
  std::optional<long long> top;

  std::vector<Clause> clauses;
  std::set<long long> literals;
  long long weight = 1;
  std::size_t clause_line = 0;
  bool clause_open = false;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0].front() == '%') break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (toks.size() < 4 || (toks[1] != "cnf" && toks[1] != "wcnf")) {
        throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>' or 'p wcnf <vars> <clauses> [top]'");
      }
      wcnf = toks[1] == "wcnf";
      if (toks.size() > (wcnf ? 5u : 4u)) throw ParseError(lineno, "malformed header: too many fields");
      n_vars = parse_int(toks[2], lineno);
      n_clauses = parse_int(toks[3], lineno);
      if (wcnf && toks.size() == 5) top = parse_int(toks[4], lineno);
      if (n_vars < 1 || n_clauses < 1) throw ParseError(lineno, "header needs positive variable and clause counts");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause data before the problem line");

    for (std::string_view tok : toks) {
      const long long v = parse_int(tok, lineno);
      if (!clause_open) {
        clause_open = true;
        clause_line = lineno;
        literals.clear();
        weight = 1;
        if (wcnf) {
          if (v < 1) throw ParseError(lineno, "clause weight must be a positive integer");
          if (top && v >= *top) {
            throw ParseError(lineno, "hard clause (weight >= top) is not supported; only soft weighted clauses are");
          }
          weight = v;
          continue;
        }
      }
      if (v == 0) {
        if (literals.empty()) throw ParseError(clause_line, "empty clause");
        if (static_cast<long long>(clauses.size()) >= n_clauses) {
          throw ParseError(lineno, "more clauses than the header declares (" + std::to_string(n_clauses) + ")");
        }
        Clause c;
        c.weight = weight;
        for (long long lit : literals) {
          if (literals.count(-lit) > 0) throw ParseError(clause_line, "tautological clause contains x and -x");
          (lit > 0 ? c.pos : c.neg).push_back(static_cast<int>(lit > 0 ? lit : -lit));
        }
        clauses.push_back(std::move(c));
        clause_open = false;
        continue;
      }
      if (v > n_vars || -v > n_vars) {
        throw ParseError(lineno, "literal " + std::to_string(v) + " out of range for " + std::to_string(n_vars) +
                                     " variables");
      }
      literals.insert(v);
    }
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (clause_open) throw ParseError(clause_line, "clause not terminated by 0");
  if (static_cast<long long>(clauses.size()) != n_clauses) {
    throw ParseError(lineno, "header declares " + std::to_string(n_clauses) + " clauses, found " +
                                 std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<int>(n_vars), std::move(clauses));
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

CnfFormula read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  return parse_dimacs(in);
}

std::string to_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  const bool weighted = phi.weighted();
  out << "p " << (weighted ? "wcnf " : "cnf ") << phi.n_vars() << ' ' << phi.m() << '\n';
  for (const Clause& c : phi.clauses()) {
    if (weighted) out << c.weight << ' ';
    for (int v : c.pos) out << v << ' ';
    for (int v : c.neg) out << -v << ' ';
    out << "0\n";
  }
  return out.str();
}

GroupFunction characteristic_function(const CnfFormula& phi) {
  const GroupSpec spec = GroupSpec::power(2, static_cast<std::size_t>(phi.n_vars()));
  std::map<DualIndex, double, MixedRadixLess> acc;
  DualIndex alpha = spec.identity();
  for (const Clause& c : phi.clauses()) {
    // Expand prod (1 + s_i z_i) over the literals; s_i = +1 for positive, -1 for negated.
    std::vector<std::pair<int, int>> lits;
    for (int v : c.pos) lits.emplace_back(v - 1, +1);
    for (int v : c.neg) lits.emplace_back(v - 1, -1);
    const std::size_t l = lits.size();
    const double scale = static_cast<double>(c.weight) / static_cast<double>(std::uint64_t{1} << l);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
      int sign = 1;
      for (std::size_t t = 0; t < l; ++t) {
        const bool on = (mask >> t) & 1U;
        alpha.exps[lits[t].first] = on ? 1 : 0;
        if (on) sign *= lits[t].second;
      }
      acc[alpha] += sign * scale;
    }
    for (const auto& lit : lits) alpha.exps[lit.first] = 0;
  }
  GroupFunction::Terms terms;
  for (const auto& [a, v] : acc) {
    if (v != 0.0) terms.emplace_hint(terms.end(), a, Complex(v, 0.0));
  }
  return GroupFunction(spec, std::move(terms));
}

long long count_falsified(const CnfFormula& phi, const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(phi.n_vars())) {
    throw Error(ErrorKind::kDimensionMismatch, "assignment length " + std::to_string(assignment.size()) +
                                                   " does not match " + std::to_string(phi.n_vars()) + " variables");
  }
  long long total = 0;
  for (const Clause& c : phi.clauses()) {
    const bool sat = std::any_of(c.pos.begin(), c.pos.end(), [&](int v) { return assignment[v - 1]; }) ||
                     std::any_of(c.neg.begin(), c.neg.end(), [&](int v) { return !assignment[v - 1]; });
    if (!sat) total += c.weight;
  }
  return total;
}

GroupElement encode_assignment(const std::vector<bool>& assignment) {
  GroupElement g{std::vector<int>(assignment.size())};
  for (std::size_t i = 0; i < assignment.size(); ++i) g.coords[i] = assignment[i] ? 1 : 0;
  return g;
}

std::vector<bool> decode_assignment(const GroupElement& g) {
  std::vector<bool> x(g.coords.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.coords[i] != 0;
  return x;
}

std::string format_assignment(const std::vector<bool>& assignment) {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i > 0) out += ' ';
    out += (assignment[i] ? "" : "-") + std::to_string(i + 1);
  }
  return out;
}

}  // namespace fsos
