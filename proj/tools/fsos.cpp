// fsos: lower bounds, rounding and certificates for functions on finite abelian groups.

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fsos/bench.hpp"
#include "fsos/error.hpp"
#include "fsos/generators.hpp"
#include "fsos/report.hpp"

namespace {

using namespace fsos;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

struct BoundFlags {
  std::optional<long long> l;
  std::optional<long long> m;
  std::optional<int> d;
  std::optional<std::size_t> k;
  std::string preset;
  std::uint64_t seed = 0;
  long max_iter = 50'000;
  double time_cap = 0.0;
  double tol = 1e-7;
  double rho = 1.0;
  long refine_iter = RefineOptions{}.max_iter;
  std::string round = "none";
  std::string out = "json";
  std::string cert_path;
  bool telemetry = false;
  bool prefer_lower_degree = false;
};

void add_bound_flags(CLI::App* cmd, BoundFlags& f) {
  cmd->add_option("--l", f.l, "lower end of the fitting range");
  cmd->add_option("--m", f.m, "upper end of the fitting range");
  cmd->add_option("--d", f.d, "degree of the square-root fit");
  cmd->add_option("--k", f.k, "support size");
  cmd->add_option("--preset", f.preset, "max2sat, max3sat or random");
  cmd->add_option("--seed", f.seed, "seed for randomized rounding");
  cmd->add_option("--max-iter", f.max_iter, "solver iteration cap");
  cmd->add_option("--time-cap", f.time_cap, "solver time cap in seconds (0: none)");
  cmd->add_option("--tol", f.tol, "solver tolerance");
  cmd->add_option("--rho", f.rho, "initial penalty");
  cmd->add_option("--refine-iter", f.refine_iter, "subgradient refinement steps");
  cmd->add_option("--round", f.round, "gram, stick, moment, all or none");
  cmd->add_option("--out", f.out, "json, md or csv")->check(CLI::IsMember({"json", "md", "csv"}));
  cmd->add_option("--cert", f.cert_path, "write the certificate to this file");
  cmd->add_flag("--telemetry", f.telemetry, "CSV checkpoint lines on stderr");
  cmd->add_flag("--prefer-lower-degree", f.prefer_lower_degree, "break coefficient ties toward lower degree");
}

RunOptions make_options(const BoundFlags& flags, const GroupFunction& f, long long m_default,
                        const std::string& preset_default) {
  RunOptions opts;
  apply_preset(flags.preset.empty() ? preset_default : flags.preset, f, m_default, opts.params);
  if (flags.l) opts.params.l = *flags.l;
  if (flags.m) opts.params.m = *flags.m;
  if (flags.d) opts.params.d = *flags.d;
  if (flags.k) opts.params.k = *flags.k;
  opts.params.selection.prefer_higher_degree = !flags.prefer_lower_degree;
  opts.params.solver.max_iter = flags.max_iter;
  opts.params.solver.time_cap = flags.time_cap;
  opts.params.solver.tol = flags.tol;
  opts.params.solver.rho = flags.rho;
  opts.params.refine.max_iter = flags.refine_iter;
  if (flags.telemetry) {
    std::cerr << "iteration,residual,lambda_min,bound,rho\n";
    opts.params.solver.telemetry = [](const Checkpoint& c) {
      std::cerr << c.iteration << ',' << c.residual << ',' << c.lambda_min << ',' << c.bound << ',' << c.rho << '\n';
    };
  }
  opts.round = parse_round_mode(flags.round);
  opts.seed = flags.seed;
  return opts;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kMalformed, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << text;
}

int emit_run(const RunResult& r, const BoundFlags& flags) {
  if (!flags.cert_path.empty()) write_text(flags.cert_path, certificate_to_json(r.bound.certificate).dump(2) + "\n");
  if (flags.out == "json") {
    std::cout << report_to_json(r.report).dump(2) << '\n';
  } else if (flags.out == "md") {
    write_markdown(std::cout, {r.report});
  } else {
    write_csv(std::cout, {r.report});
  }
  if (!r.verification.accepted) {
    for (const auto& reason : r.verification.reasons) std::cerr << "certificate self-check failed: " << reason << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_bound(const std::string& path, const BoundFlags& flags) {
  const nlohmann::json j = read_json(path);
  const GroupFunction f = function_from_json(j);
  const long long m_default = j.value("m", static_cast<long long>(std::ceil(f.l1_norm() - 1e-9)));
  const RunOptions opts = make_options(flags, f, m_default, "random");
  return emit_run(run_instance(path, f, opts), flags);
}

int cmd_maxsat(const std::string& path, const BoundFlags& flags) {
  const CnfFormula phi = read_dimacs_file(path);
  const GroupFunction f = characteristic_function(phi);
  const RunOptions opts =
      make_options(flags, f, phi.total_weight(), phi.max_clause_length() <= 2 ? "max2sat" : "max3sat");
  return emit_run(run_maxsat(path, phi, opts), flags);
}

int cmd_round(const std::string& path, const std::string& method, std::uint64_t seed) {
  const BoundCertificate cert = certificate_from_json(read_json(path));
  std::vector<RoundedSolution> found;
  auto attempt = [&](RoundingMethod m) {
    try {
      if (m == RoundingMethod::kGramNull) found.push_back(gram_null_round(cert.Q, cert.f, cert.bound));
      if (m == RoundingMethod::kStickelberger) found.push_back(stickelberger_round(cert.Q, cert.f, seed, cert.bound));
      if (m == RoundingMethod::kMoment) {
        if (!cert.moment) throw Error(ErrorKind::kInvalidArgument, "certificate carries no moment matrix");
        found.push_back(moment_round(*cert.moment, cert.f, cert.bound));
      }
    } catch (const Error& e) {
      std::cerr << to_string(m) << " rounding failed: " << e.what() << '\n';
    }
  };
  const RoundMode mode = parse_round_mode(method);
  if (mode == RoundMode::kGram || mode == RoundMode::kAll) attempt(RoundingMethod::kGramNull);
  if (mode == RoundMode::kStickelberger || mode == RoundMode::kAll) attempt(RoundingMethod::kStickelberger);
  if (mode == RoundMode::kMoment || mode == RoundMode::kAll) attempt(RoundingMethod::kMoment);
  if (found.empty()) throw Error(ErrorKind::kNumerical, "no rounding method produced a candidate");
  nlohmann::json out = nlohmann::json::array();
  for (const RoundedSolution& r : found) {
    nlohmann::json cands = nlohmann::json::array();
    for (const Candidate& c : r.candidates) {
      cands.push_back({{"point", c.point.coords}, {"value", c.value}, {"low_confidence", c.low_confidence}});
    }
    out.push_back({{"method", to_string(r.method)}, {"candidates", cands}, {"achieved", r.achieved}, {"gap", r.gap}});
  }
  const RoundedSolution best = best_candidate(cert.f, found);
  std::cout << nlohmann::json{{"solutions", out}, {"best", {{"method", to_string(best.method)}, {"value", best.achieved}}}}
                   .dump(2)
            << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& function_path, const std::string& cnf_path) {
  const BoundCertificate cert = certificate_from_json(read_json(path));
  GroupFunction f = cert.f;
  if (!function_path.empty()) f = function_from_json(read_json(function_path));
  if (!cnf_path.empty()) f = characteristic_function(read_dimacs_file(cnf_path));
  const Verification v = verify_certificate(cert, f);
  std::cout << nlohmann::json{{"accepted", v.accepted},
                              {"claimed_bound", v.claimed_bound},
                              {"recomputed_bound", v.recomputed_bound},
                              {"reasons", v.reasons}}
                   .dump(2)
            << '\n';
  return v.accepted ? kExitOk : kExitVerify;
}

int cmd_bench(const std::string& path, const std::string& out, unsigned workers, bool no_times) {
  const BenchResult r = run_suite(read_json(path), workers);
  if (out == "json") {
    std::cout << bench_to_json(r, !no_times).dump(2) << '\n';
  } else if (out == "csv") {
    write_csv(std::cout, r.rows);
  } else {
    write_markdown(std::cout, r.rows);
    std::cout << '\n';
    write_summary_markdown(std::cout, r);
  }
  for (const RunReport& row : r.rows) {
    if (!row.verified) return kExitVerify;
  }
  return kExitOk;
}

nlohmann::json generated_json(const GeneratedFunction& g) {
  nlohmann::json j = to_json(g.f);
  j["m"] = g.m;
  j["shifted"] = g.shifted;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("warning: %v");
  spdlog::set_level(spdlog::level::warn);
  CLI::App app{"Lower bounds for functions on finite abelian groups via sparse Fourier sums of squares"};
  app.require_subcommand(1);

  std::string input;
  BoundFlags bflags;
  auto* bound = app.add_subcommand("bound", "lower bound for a function given as JSON");
  bound->add_option("input", input, "function JSON")->required();
  add_bound_flags(bound, bflags);

  auto* maxsat = app.add_subcommand("maxsat", "MAX-SAT bounds for a DIMACS cnf/wcnf file");
  maxsat->add_option("input", input, "DIMACS file")->required();
  add_bound_flags(maxsat, bflags);

  int n = 10;
  int degree = 3;
  std::size_t sparsity = 50;
  int coeff_bound = 5;
  std::uint64_t seed = 1;
  bool no_shift = false;
  std::string output;
  auto* gen_c2 = app.add_subcommand("gen-c2", "random integer polynomial on C_2^n");
  gen_c2->add_option("--n", n);
  gen_c2->add_option("--degree", degree);
  gen_c2->add_option("--sparsity", sparsity);
  gen_c2->add_option("--coeff-bound", coeff_bound);
  gen_c2->add_option("--seed", seed);
  gen_c2->add_flag("--no-shift", no_shift, "keep the constant term unshifted");
  gen_c2->add_option("-o,--output", output);

  std::size_t floor = 190;
  int h_bound = 10;
  auto* gen_c3 = app.add_subcommand("gen-c3", "sum of random lifted C_3^2 functions on C_3^n");
  gen_c3->add_option("--n", n);
  gen_c3->add_option("--floor", floor, "stop once the sparsity exceeds this");
  gen_c3->add_option("--h-bound", h_bound);
  gen_c3->add_option("--seed", seed);
  gen_c3->add_flag("--no-shift", no_shift, "keep the constant term unshifted");
  gen_c3->add_option("-o,--output", output);

  std::size_t clauses = 45;
  auto* gen_2sat = app.add_subcommand("gen-2sat", "random 2-CNF in DIMACS");
  gen_2sat->add_option("--n", n);
  gen_2sat->add_option("--clauses", clauses);
  gen_2sat->add_option("--seed", seed);
  gen_2sat->add_option("-o,--output", output);

  std::string method = "all";
  auto* round = app.add_subcommand("round", "candidate minimizers from a certificate");
  round->add_option("certificate", input)->required();
  round->add_option("--method", method, "gram, stick, moment or all");
  round->add_option("--seed", seed);

  std::string function_path;
  std::string cnf_path;
  auto* verify = app.add_subcommand("verify", "recompute and check a certificate");
  verify->add_option("certificate", input)->required();
  verify->add_option("--function", function_path, "check against this function JSON");
  verify->add_option("--cnf", cnf_path, "check against this formula's characteristic function");

  std::string bench_out = "md";
  unsigned workers = 0;
  bool no_times = false;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", input)->required();
  bench->add_option("--out", bench_out)->check(CLI::IsMember({"json", "md", "csv"}));
  bench->add_option("--workers", workers);
  bench->add_flag("--no-times", no_times, "omit timing fields from JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bound) return cmd_bound(input, bflags);
    if (*maxsat) return cmd_maxsat(input, bflags);
    if (*gen_c2) {
      write_text(output, generated_json(gen_random_c2(n, degree, sparsity, coeff_bound, seed, !no_shift)).dump() + "\n");
    } else if (*gen_c3) {
      write_text(output, generated_json(gen_random_c3(n, floor, h_bound, seed, !no_shift)).dump() + "\n");
    } else if (*gen_2sat) {
      write_text(output, to_dimacs(gen_random_2sat(n, clauses, seed)));
    } else if (*round) {
      return cmd_round(input, method, seed);
    } else if (*verify) {
      return cmd_verify(input, function_path, cnf_path);
    } else if (*bench) {
      return cmd_bench(input, bench_out, workers, no_times);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kInvalidArgument && std::string(e.what()).rfind("unknown", 0) == 0 ? kExitUsage
                                                                                                    : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
