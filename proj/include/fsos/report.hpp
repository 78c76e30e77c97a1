#pragma once

// End-to-end runs as used by the command line: presets, bound + rounding + self-check,
// and the per-instance report in JSON, Markdown and CSV.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fsos/certify.hpp"
#include "fsos/cnf.hpp"
#include "fsos/rounding.hpp"
#include "json.hpp"

namespace fsos {

enum class RoundMode { kNone, kGram, kStickelberger, kMoment, kAll };

RoundMode parse_round_mode(const std::string& s);
std::string to_string(RoundMode m);

/// Named parameter sets:
///   max2sat  d=1, k=|supp f|,           l=0, m=total weight
///   max3sat  d=2, k=ceil(1.5 |supp f|), l=0, m=total weight
///   random   d=2, k=3 |supp f|,          l=0, m=sum |fhat|  (or the generator's hint)
void apply_preset(const std::string& name, const GroupFunction& f, long long m_value, LowerBoundParams& params);

/// M1 plus the product monomial of every clause: the size target of the rounding protocol.
SupportSet clause_monomials(const CnfFormula& phi);

struct RunOptions {
  LowerBoundParams params;
  RoundMode round = RoundMode::kNone;
  std::uint64_t seed = 0;
  /// Compute the exact minimum by enumeration when the group is small enough.
  bool oracle = false;
};

struct RunReport {
  std::string id;
  std::string group;
  std::size_t sparsity = 0;
  long long l = 0;
  long long m = 0;
  int d = 0;
  std::size_t k = 0;
  std::size_t support_size = 0;
  double bound = 0.0;
  std::optional<double> integer_bound;
  std::optional<double> oracle_min;
  std::optional<std::string> round_method;
  std::optional<double> rounded_value;
  std::optional<std::string> rounded_point;
  std::optional<double> gap;
  bool low_confidence = false;
  std::string status;
  long iterations = 0;
  bool verified = false;
  double t_select = 0.0;
  double t_solve = 0.0;
  double t_refine = 0.0;
  double t_round = 0.0;
  /// MAX-SAT view: total weight and the implied bounds on the satisfiable weight.
  std::optional<long long> total_weight;
  std::optional<double> maxsat_upper;
  std::optional<double> maxsat_lower;
  std::optional<std::string> assignment;

  double total_time() const { return t_select + t_solve + t_refine + t_round; }
};

struct RunResult {
  RunReport report;
  LowerBoundResult bound;
  Verification verification;
  std::optional<RoundedSolution> rounded;
};

/// Bound, optional rounding, then verification of the emitted certificate.
RunResult run_instance(const std::string& id, const GroupFunction& f, const RunOptions& opts);
/// Same, plus the MAX-SAT translation of the numbers.
RunResult run_maxsat(const std::string& id, const CnfFormula& phi, const RunOptions& opts);

nlohmann::json report_to_json(const RunReport& r, bool with_times = true);
void write_markdown(std::ostream& out, const std::vector<RunReport>& rows);
void write_csv(std::ostream& out, const std::vector<RunReport>& rows);

}  // namespace fsos
