#include "fsos/bench.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <thread>

#include "fsos/error.hpp"
#include "fsos/generators.hpp"

namespace fsos {

namespace {

struct Job {
  std::size_t group = 0;
  std::string id;
  std::uint64_t seed = 0;
};

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorKind::kMalformed, "suite: " + what); }

template <typename T>
T field(const nlohmann::json& g, const char* key) {
  if (!g.contains(key)) schema_error(std::string("group is missing '") + key + "'");
  try {
    return g.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    schema_error(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const nlohmann::json& g, const char* key, T fallback) {
  return g.contains(key) ? field<T>(g, key) : fallback;
}

std::vector<std::uint64_t> seeds_of(const nlohmann::json& g) {
  if (g.contains("seeds")) return field<std::vector<std::uint64_t>>(g, "seeds");
  const auto start = field_or<std::uint64_t>(g, "seed_start", 1);
  const auto count = field_or<std::uint64_t>(g, "count", 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(start + i);
  return out;
}

RunReport run_job(const nlohmann::json& g, const Job& job) {
  const auto gen = field<std::string>(g, "generator");
  RunOptions opts;
  opts.seed = job.seed;
  opts.oracle = field_or<bool>(g, "oracle", false);
  opts.round = parse_round_mode(field_or<std::string>(g, "round", "none"));
  opts.params.solver.max_iter = field_or<long>(g, "max_iter", opts.params.solver.max_iter);
  opts.params.solver.time_cap = field_or<double>(g, "time_cap", 0.0);
  opts.params.solver.tol = field_or<double>(g, "tol", opts.params.solver.tol);
  opts.params.refine.max_iter = field_or<long>(g, "refine_iter", opts.params.refine.max_iter);

  std::optional<CnfFormula> phi;
  GroupFunction f;
  long long m_hint = 0;
  std::string preset = "random";
  if (gen == "c2") {
    const auto r = gen_random_c2(field<int>(g, "n"), field_or<int>(g, "degree", 3), field<std::size_t>(g, "sparsity"),
                                 field_or<int>(g, "coeff_bound", 5), job.seed);
    f = r.f;
    m_hint = r.m;
  } else if (gen == "c3") {
    const auto r = gen_random_c3(field<int>(g, "n"), field<std::size_t>(g, "floor"), field_or<int>(g, "h_bound", 10),
                                 job.seed);
    f = r.f;
    m_hint = r.m;
  } else if (gen == "2sat") {
    phi = gen_random_2sat(field<int>(g, "n"), field<std::size_t>(g, "clauses"), job.seed);
    preset = "max2sat";
  } else if (gen == "file") {
    const auto path = field<std::string>(g, "path");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
      std::ifstream in(path);
      if (!in) schema_error("cannot open " + path);
      const nlohmann::json j = nlohmann::json::parse(in);
      f = function_from_json(j);
      m_hint = j.value("m", static_cast<long long>(std::ceil(f.l1_norm())));
    } else {
      phi = read_dimacs_file(path);
      preset = phi->max_clause_length() <= 2 ? "max2sat" : "max3sat";
    }
  } else {
    schema_error("unknown generator '" + gen + "'");
  }
  if (phi) {
    f = characteristic_function(*phi);
    m_hint = phi->total_weight();
  }
  apply_preset(field_or<std::string>(g, "preset", preset), f, m_hint, opts.params);
  opts.params.l = field_or<long long>(g, "l", opts.params.l);
  opts.params.m = field_or<long long>(g, "m", opts.params.m);
  opts.params.d = field_or<int>(g, "d", opts.params.d);
  opts.params.k = field_or<std::size_t>(g, "k", opts.params.k);
  if (field_or<std::string>(g, "support", "") == "clauses") {
    if (!phi) schema_error("support 'clauses' needs a CNF instance");
    opts.params.k = clause_monomials(*phi).size();
    opts.params.d = field_or<int>(g, "d", 2);
    opts.params.round = true;
    opts.params.round_fixed_size = true;
  }
  RunResult r = phi ? run_maxsat(job.id, *phi, opts) : run_instance(job.id, f, opts);
  return r.report;
}

}  // namespace

BenchResult run_suite(const nlohmann::json& suite, unsigned workers) {
  if (!suite.is_object()) schema_error("top level must be an object");
  BenchResult out;
  out.name = suite.value("name", "suite");
  const nlohmann::json groups = suite.value("groups", nlohmann::json::array());
  if (!groups.is_array()) schema_error("'groups' must be an array");

  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (!g.is_object()) schema_error("each group must be an object");
    field<std::string>(g, "generator");
    const std::string name = g.value("name", "g" + std::to_string(gi + 1));
    GroupSummary s;
    s.name = name;
    out.groups.push_back(s);
    for (std::uint64_t seed : seeds_of(g)) jobs.push_back({gi, name + "-" + std::to_string(seed), seed});
  }

  if (workers == 0) workers = suite.value("workers", 1U);
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
  out.rows.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out.rows[i] = run_job(groups[jobs[i].group], jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    GroupSummary& s = out.groups[jobs[i].group];
    const RunReport& r = out.rows[i];
    ++s.instances;
    if (r.verified) ++s.verified;
    s.mean_time += r.total_time();
    s.max_time = std::max(s.max_time, r.total_time());
    if (r.oracle_min) {
      ++s.with_oracle;
      if (r.integer_bound && std::abs(*r.integer_bound - *r.oracle_min) < 1e-6) ++s.bound_hits;
      if (r.rounded_value) ++s.with_rounding;
      if (r.rounded_value && std::abs(*r.rounded_value - *r.oracle_min) < 1e-6) ++s.round_hits;
    }
  }
  for (GroupSummary& s : out.groups) {
    if (s.instances > 0) s.mean_time /= static_cast<double>(s.instances);
  }
  return out;
}

nlohmann::json bench_to_json(const BenchResult& r, bool with_times) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RunReport& row : r.rows) rows.push_back(report_to_json(row, with_times));
  nlohmann::json groups = nlohmann::json::array();
  for (const GroupSummary& s : r.groups) {
    nlohmann::json g = {{"name", s.name},         {"instances", s.instances},   {"verified", s.verified},
                        {"with_oracle", s.with_oracle}, {"bound_hits", s.bound_hits}, {"round_hits", s.round_hits},
                        {"with_rounding", s.with_rounding}};
    if (with_times) {
      g["mean_time"] = s.mean_time;
      g["max_time"] = s.max_time;
    }
    groups.push_back(std::move(g));
  }
  return {{"name", r.name}, {"rows", rows}, {"groups", groups}};
}

void write_summary_markdown(std::ostream& out, const BenchResult& r) {
  out << "| group | instances | verified | bound = min | rounding = min | mean time | max time |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const GroupSummary& s : r.groups) {
    out << "| " << s.name << " | " << s.instances << " | " << s.verified << " | " << s.bound_hits << "/"
        << s.with_oracle << " | " << s.round_hits << "/" << s.with_rounding << " | " << std::setprecision(4)
        << s.mean_time << " | " << s.max_time << " |\n";
  }
}

}  // namespace fsos
