#include "fsos/report.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "fsos/error.hpp"

namespace fsos {

RoundMode parse_round_mode(const std::string& s) {
  if (s == "none") return RoundMode::kNone;
  if (s == "gram") return RoundMode::kGram;
  if (s == "stick") return RoundMode::kStickelberger;
  if (s == "moment") return RoundMode::kMoment;
  if (s == "all") return RoundMode::kAll;
  throw Error(ErrorKind::kInvalidArgument, "unknown rounding mode '" + s + "' (gram, stick, moment, all, none)");
}

std::string to_string(RoundMode m) {
  switch (m) {
    case RoundMode::kNone:
      return "none";
    case RoundMode::kGram:
      return "gram";
    case RoundMode::kStickelberger:
      return "stick";
    case RoundMode::kMoment:
      return "moment";
    case RoundMode::kAll:
      return "all";
  }
  return "none";
}

void apply_preset(const std::string& name, const GroupFunction& f, long long m_value, LowerBoundParams& params) {
  const std::size_t supp = f.sparsity();
  params.l = 0;
  params.m = m_value;
  if (name == "max2sat") {
    params.d = 1;
    params.k = supp;
  } else if (name == "max3sat") {
    params.d = 2;
    params.k = (3 * supp + 1) / 2;
  } else if (name == "random") {
    params.d = 2;
    params.k = 3 * supp;
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown preset '" + name + "' (max2sat, max3sat, random)");
  }
  params.k = std::max<std::size_t>(params.k, 1);
}

SupportSet clause_monomials(const CnfFormula& phi) {
  SupportSet s = degree_one_set(GroupSpec::power(2, static_cast<std::size_t>(phi.n_vars())));
  for (const Clause& c : phi.clauses()) {
    DualIndex a = s.spec.identity();
    for (int v : c.pos) a.exps[static_cast<std::size_t>(v - 1)] = 1;
    for (int v : c.neg) a.exps[static_cast<std::size_t>(v - 1)] = 1;
    if (!s.contains(a)) s.chars.push_back(std::move(a));
  }
  return s;
}

namespace {

std::string format_point(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(g.coords[i]);
  }
  return s + ")";
}

std::optional<RoundedSolution> try_round(RoundingMethod method, const LowerBoundResult& lb, const GroupFunction& f,
                                         std::uint64_t seed) {
  const double bound = lb.certificate.bound;
  try {
    switch (method) {
      case RoundingMethod::kGramNull:
        return gram_null_round(lb.sdp.Q, f, bound);
      case RoundingMethod::kStickelberger:
        return stickelberger_round(lb.sdp.Q, f, seed, bound);
      case RoundingMethod::kMoment:
        return moment_round(lb.sdp.H, f, bound);
    }
  } catch (const Error& e) {
    spdlog::warn("{} rounding failed: {}", to_string(method), e.what());
  }
  return std::nullopt;
}

std::optional<RoundedSolution> round_solution(RoundMode mode, const LowerBoundResult& lb, const GroupFunction& f,
                                              std::uint64_t seed) {
  std::vector<RoundedSolution> found;
  auto attempt = [&](RoundingMethod m) {
    auto r = try_round(m, lb, f, seed);
    if (r) found.push_back(std::move(*r));
    return r.has_value();
  };
  switch (mode) {
    case RoundMode::kNone:
      return std::nullopt;
    case RoundMode::kGram:
      if (!attempt(RoundingMethod::kGramNull)) attempt(RoundingMethod::kMoment);
      break;
    case RoundMode::kStickelberger:
      if (!attempt(RoundingMethod::kStickelberger)) attempt(RoundingMethod::kMoment);
      break;
    case RoundMode::kMoment:
      attempt(RoundingMethod::kMoment);
      break;
    case RoundMode::kAll:
      attempt(RoundingMethod::kGramNull);
      attempt(RoundingMethod::kStickelberger);
      attempt(RoundingMethod::kMoment);
      break;
  }
  if (found.empty()) return std::nullopt;
  return best_candidate(f, found);
}

}  // namespace

RunResult run_instance(const std::string& id, const GroupFunction& f, const RunOptions& opts) {
  RunResult out;
  LowerBoundParams params = opts.params;
  if (opts.round != RoundMode::kNone) params.round = true;
  out.bound = lower_bound(f, params);
  const BoundCertificate& cert = out.bound.certificate;
  out.verification = verify_certificate(cert, f);

  RunReport& r = out.report;
  r.id = id;
  r.group = f.spec().to_string();
  r.sparsity = f.sparsity();
  r.l = params.l;
  r.m = params.m;
  r.d = params.d;
  r.k = params.k;
  r.support_size = cert.support.size();
  r.bound = out.verification.recomputed_bound;
  r.verified = out.verification.accepted;
  r.status = to_string(out.bound.sdp.status);
  r.iterations = out.bound.sdp.iterations;
  r.t_select = out.bound.times.select;
  r.t_solve = out.bound.times.solve;
  r.t_refine = out.bound.times.refine;
  const bool dense = f.spec().dense_allowed();
  if (dense && is_integer_valued(f, 1e-9)) r.integer_bound = integer_bound(r.bound);
  if (opts.oracle && dense) r.oracle_min = brute_force_min(f).value;

  const auto t0 = std::chrono::steady_clock::now();
  out.rounded = round_solution(opts.round, out.bound, f, opts.seed);
  r.t_round = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.rounded) {
    const Candidate& c = out.rounded->candidates[out.rounded->best];
    r.round_method = to_string(out.rounded->method);
    r.rounded_value = evaluate(f, c.point).real();
    r.rounded_point = format_point(c.point);
    r.gap = *r.rounded_value - r.bound;
    r.low_confidence = c.low_confidence;
  }
  return out;
}

RunResult run_maxsat(const std::string& id, const CnfFormula& phi, const RunOptions& opts) {
  const GroupFunction f = characteristic_function(phi);
  RunResult out = run_instance(id, f, opts);
  RunReport& r = out.report;
  r.total_weight = phi.total_weight();
  // min f is the least falsified weight, an integer.
  const double lower_min = integer_bound(r.bound);
  r.integer_bound = lower_min;
  r.maxsat_upper = static_cast<double>(phi.total_weight()) - std::max(lower_min, 0.0);
  if (out.rounded) {
    const Candidate& c = out.rounded->candidates[out.rounded->best];
    const std::vector<bool> x = decode_assignment(c.point);
    const long long falsified = count_falsified(phi, x);
    r.rounded_value = static_cast<double>(falsified);
    r.gap = *r.rounded_value - r.bound;
    r.maxsat_lower = static_cast<double>(phi.total_weight() - falsified);
    r.assignment = format_assignment(x);
  }
  return out;
}

nlohmann::json report_to_json(const RunReport& r, bool with_times) {
  auto opt = [](const auto& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j = {{"id", r.id},
                      {"group", r.group},
                      {"sparsity", r.sparsity},
                      {"params", {{"l", r.l}, {"m", r.m}, {"d", r.d}, {"k", r.k}}},
                      {"support_size", r.support_size},
                      {"bound", r.bound},
                      {"integer_bound", opt(r.integer_bound)},
                      {"oracle_min", opt(r.oracle_min)},
                      {"status", r.status},
                      {"iterations", r.iterations},
                      {"verified", r.verified}};
  if (r.round_method) {
    j["rounding"] = {{"method", *r.round_method},
                     {"value", opt(r.rounded_value)},
                     {"point", opt(r.rounded_point)},
                     {"gap", opt(r.gap)},
                     {"low_confidence", r.low_confidence}};
  }
  if (r.total_weight) {
    j["maxsat"] = {{"total_weight", *r.total_weight},
                   {"max_satisfiable_at_most", opt(r.maxsat_upper)},
                   {"max_satisfiable_at_least", opt(r.maxsat_lower)},
                   {"assignment", opt(r.assignment)}};
  }
  if (with_times) {
    j["times"] = {{"select", r.t_select},
                  {"solve", r.t_solve},
                  {"refine", r.t_refine},
                  {"round", r.t_round},
                  {"total", r.total_time()}};
  }
  return j;
}

namespace {

std::string num(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string num_or_dash(const std::optional<double>& v) { return v ? num(*v) : "-"; }

std::vector<std::string> row_cells(const RunReport& r) {
  return {r.id,
          r.group,
          std::to_string(r.sparsity),
          std::to_string(r.support_size),
          num(r.bound, 4),
          num_or_dash(r.integer_bound),
          num_or_dash(r.oracle_min),
          r.round_method.value_or("-"),
          num_or_dash(r.rounded_value),
          r.maxsat_upper ? num(*r.maxsat_upper) : "-",
          r.status,
          std::to_string(r.iterations),
          r.verified ? "yes" : "no",
          num(r.total_time(), 3)};
}

const std::vector<std::string> kColumns = {"id",    "group",  "sp",     "|S|",  "bound", "int bound", "min",
                                           "round", "value",  "maxsat <=", "status", "iter", "verified", "time"};

}  // namespace

void write_markdown(std::ostream& out, const std::vector<RunReport>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const RunReport& r : rows) cells.push_back(row_cells(r));
  std::vector<std::size_t> width(kColumns.size());
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    width[c] = kColumns[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& v) {
    out << '|';
    for (std::size_t c = 0; c < v.size(); ++c) out << ' ' << std::left << std::setw(static_cast<int>(width[c])) << v[c] << " |";
    out << '\n';
  };
  line(kColumns);
  out << '|';
  for (std::size_t c = 0; c < kColumns.size(); ++c) out << std::string(width[c] + 2, '-') << '|';
  out << '\n';
  for (const auto& row : cells) line(row);
}

void write_csv(std::ostream& out, const std::vector<RunReport>& rows) {
  for (std::size_t c = 0; c < kColumns.size(); ++c) out << (c ? "," : "") << '"' << kColumns[c] << '"';
  out << '\n';
  for (const RunReport& r : rows) {
    const auto cells = row_cells(r);
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << '"' << cells[c] << '"';
    out << '\n';
  }
}

}  // namespace fsos
