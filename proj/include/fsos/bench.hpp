#pragma once

// Benchmark suites: a JSON description of generated or file instances, run in a worker pool,
// reported one row per instance plus per-group aggregates.
//
// {
//   "name": "desk",
//   "workers": 1,
//   "groups": [
//     {"name": "c2", "generator": "c2", "n": 10, "degree": 3, "sparsity": 50, "coeff_bound": 5,
//      "seed_start": 1, "count": 10, "preset": "random", "time_cap": 60, "oracle": true},
//     {"name": "r", "generator": "2sat", "n": 15, "clauses": 45, "seeds": [1, 2],
//      "round": "moment", "support": "clauses"},
//     {"name": "f", "generator": "file", "path": "a.wcnf", "preset": "max3sat"}
//   ]
// }
//
// Generators: c2 (n, degree, sparsity, coeff_bound), c3 (n, floor, h_bound), 2sat (n, clauses),
// file (path: DIMACS, or a function JSON when it ends in .json). Optional per group: preset,
// l, m, d, k, round, support ("clauses" sizes S as in the rounding protocol), max_iter,
// time_cap, tol, refine_iter, oracle.

#include <vector>

#include "fsos/report.hpp"
#include "json.hpp"

namespace fsos {

struct GroupSummary {
  std::string name;
  std::size_t instances = 0;
  std::size_t verified = 0;
  /// Rows whose integer bound equals the enumerated minimum.
  std::size_t bound_hits = 0;
  /// Rows whose rounded value equals the enumerated minimum.
  std::size_t round_hits = 0;
  std::size_t with_oracle = 0;
  /// Rows with both an enumerated minimum and a rounded point.
  std::size_t with_rounding = 0;
  double mean_time = 0.0;
  double max_time = 0.0;
};

struct BenchResult {
  std::string name;
  std::vector<RunReport> rows;
  std::vector<GroupSummary> groups;
};

/// Throws Error(kMalformed) on schema violations. workers = 0 uses the suite's setting.
BenchResult run_suite(const nlohmann::json& suite, unsigned workers = 0);

nlohmann::json bench_to_json(const BenchResult& r, bool with_times = true);
void write_summary_markdown(std::ostream& out, const BenchResult& r);

}  // namespace fsos
