#include "fsos/certify.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "fsos/error.hpp"

namespace fsos {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double f_from(const GramSystem& sys, const ErrorBound& eb) {
  return eb.trace + eb.residual_l1 - eb.lambda_min * static_cast<double>(sys.support.size());
}

Eigen::MatrixXcd subgradient_from(const GramSystem& sys, const ErrorBound& eb) {
  const auto n = static_cast<Eigen::Index>(sys.support.size());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n, n);
  // eb.residual lists the non-identity products first, in product order.
  std::size_t r = 0;
  for (std::size_t c = 0; c < sys.products.size(); ++c) {
    if (c == sys.identity) continue;
    const Complex e = eb.residual[r++].second;
    if (std::abs(e) < 1e-12) continue;
    const Complex s = e / std::abs(e);
    for (const auto& [a, b] : sys.pairs[c]) g(a, b) -= s;
  }
  g -= static_cast<double>(n) * eb.min_vector * eb.min_vector.adjoint();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

double F_value(const GramSystem& sys, const Eigen::MatrixXcd& q) { return f_from(sys, error_bound(sys, q)); }

Eigen::MatrixXcd F_subgradient(const GramSystem& sys, const Eigen::MatrixXcd& q) {
  return subgradient_from(sys, error_bound(sys, q));
}

RefineResult refine_bound(const GramSystem& sys, const HermitianMatrix& q0, const RefineOptions& opts) {
  const double f0 = sys.f.constant_term().real();
  RefineResult out;
  out.Q = q0;
  ErrorBound eb = error_bound(sys, q0.entries);
  out.initial_bound = f0 - f_from(sys, eb);
  out.bound = out.initial_bound;
  const double c = opts.step > 0.0
                       ? opts.step
                       : 0.1 * std::max(q0.entries.norm(), 1.0) / (1.0 + static_cast<double>(sys.support.size()));
  Eigen::MatrixXcd q = q0.entries;
  const auto start = std::chrono::steady_clock::now();
  for (long t = 1; t <= opts.max_iter; ++t) {
    if (opts.time_cap > 0.0 && seconds_since(start) >= opts.time_cap) break;
    q -= (c / std::sqrt(static_cast<double>(t))) * subgradient_from(sys, eb);
    q = 0.5 * (q + q.adjoint());
    eb = error_bound(sys, q);
    const double b = f0 - f_from(sys, eb);
    if (b > out.bound) {
      out.bound = b;
      out.Q.entries = q;
    }
    out.iterations = t;
  }
  return out;
}

BoundCertificate make_certificate(const GramSystem& sys, const HermitianMatrix& q, nlohmann::json meta) {
  const ErrorBound eb = error_bound(sys, q.entries);
  BoundCertificate cert{sys.f, sys.support, q, eb.lambda_min, eb.residual, -eb.trace, eb.bound, std::move(meta),
                        fingerprint(sys.f), std::nullopt};
  return cert;
}

LowerBoundResult lower_bound(const GroupFunction& f, const LowerBoundParams& params) {
  if (!f.is_real()) throw Error(ErrorKind::kInvalidArgument, "lower bounds need a real-valued function");
  LowerBoundResult out;
  auto t0 = std::chrono::steady_clock::now();
  SupportSet s;
  if (params.support) {
    s = *params.support;
  } else if (params.round && params.round_fixed_size) {
    s = select_support_with_degree_one(f, params.l, params.m, params.d, params.k, params.selection);
  } else {
    s = select_support(f, params.l, params.m, params.d, params.k, params.selection);
    if (params.round) s = with_degree_one(std::move(s));
  }
  out.times.select = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const GramSystem sys = assemble_gram_system(f, s);
  out.sdp = solve_sdp(sys, params.solver);
  out.times.solve = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  HermitianMatrix q = out.sdp.Q;
  RefineOptions refine = params.refine;
  if (params.solver.time_cap > 0.0) {
    // one budget for solve and refine
    const double left = params.solver.time_cap - out.times.solve;
    if (left <= 0.0) refine.max_iter = 0;
    refine.time_cap = refine.time_cap > 0.0 ? std::min(refine.time_cap, left) : left;
  }
  if (refine.max_iter > 0) {
    out.refined = refine_bound(sys, out.sdp.Q, refine);
    q = out.refined.Q;
  } else {
    out.refined = {out.sdp.Q, out.sdp.bound, out.sdp.bound, 0};
  }
  out.times.refine = seconds_since(t0);

  nlohmann::json meta = {{"l", params.l},
                         {"m", params.m},
                         {"d", params.d},
                         {"k", params.k},
                         {"support_size", s.size()},
                         {"iterations", out.sdp.iterations},
                         {"status", to_string(out.sdp.status)},
                         {"refine_iterations", out.refined.iterations},
                         {"seconds", out.times.select + out.times.solve + out.times.refine}};
  out.certificate = make_certificate(sys, q, std::move(meta));
  out.certificate.moment = out.sdp.H;
  return out;
}

std::string fingerprint(const GroupFunction& f) {
  const std::string text = canonical_json(f);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::kNumerical, "SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return out;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n * n) {
    throw Error(ErrorKind::kMalformed, std::string(what) + " must hold |S|^2 = " + std::to_string(n * n) + " entries");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t k = 0; k < n * n; ++k) {
    const auto& e = j[k];
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::kMalformed, std::string(what) + " entries are [re, im]");
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = {e[0].get<double>(), e[1].get<double>()};
  }
  return m;
}

}  // namespace

nlohmann::json certificate_to_json(const BoundCertificate& cert) {
  nlohmann::json support = nlohmann::json::array();
  for (const DualIndex& a : cert.support.chars) support.push_back(a.exps);
  nlohmann::json residual = nlohmann::json::array();
  for (const auto& [gamma, e] : cert.residual) residual.push_back({{"exps", gamma.exps}, {"re", e.real()}, {"im", e.imag()}});
  nlohmann::json j = {{"version", 1},
                      {"function", to_json(cert.f)},
                      {"support", support},
                      {"Q", matrix_to_json(cert.Q.entries)},
                      {"lambda_min", cert.lambda_min},
                      {"residual", residual},
                      {"e0", cert.e0},
                      {"bound", cert.bound},
                      {"meta", cert.meta},
                      {"fingerprint", cert.fingerprint}};
  if (cert.moment) j["moment"] = matrix_to_json(cert.moment->entries);
  return j;
}

BoundCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != 1) throw Error(ErrorKind::kMalformed, "unsupported certificate version");
    BoundCertificate cert;
    cert.f = function_from_json(j.at("function"));
    cert.support.spec = cert.f.spec();
    for (const auto& a : j.at("support")) cert.support.chars.push_back(DualIndex{a.get<std::vector<int>>()});
    try {
      cert.support.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::kMalformed, std::string("bad support: ") + e.what());
    }
    cert.Q = {cert.support, matrix_from_json(j.at("Q"), cert.support.size(), "Q")};
    cert.lambda_min = j.at("lambda_min").get<double>();
    for (const auto& r : j.at("residual")) {
      cert.residual.emplace_back(DualIndex{r.at("exps").get<std::vector<int>>()},
                                 Complex(r.at("re").get<double>(), r.at("im").get<double>()));
    }
    cert.e0 = j.value("e0", 0.0);
    cert.bound = j.at("bound").get<double>();
    cert.meta = j.value("meta", nlohmann::json::object());
    cert.fingerprint = j.at("fingerprint").get<std::string>();
    if (j.contains("moment")) cert.moment = HermitianMatrix{cert.support, matrix_from_json(j.at("moment"), cert.support.size(), "moment")};
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string("malformed certificate: ") + e.what());
  }
}

Verification verify_certificate(const BoundCertificate& cert, const GroupFunction& f) {
  Verification v;
  v.claimed_bound = cert.bound;
  v.recomputed_bound = -std::numeric_limits<double>::infinity();
  if (fingerprint(f) != cert.fingerprint) {
    v.reasons.push_back("fingerprint mismatch: certificate was issued for a different function");
    return v;
  }
  if (!(cert.support.spec == f.spec())) {
    v.reasons.push_back("support lives on a different group");
    return v;
  }
  if (!f.is_real()) {
    v.reasons.push_back("function is not real-valued");
    return v;
  }
  const GramSystem sys = assemble_gram_system(f, cert.support);
  const ErrorBound eb = error_bound(sys, cert.Q.entries);
  v.recomputed_bound = eb.bound;
  if (!std::isfinite(cert.bound)) {
    v.reasons.push_back("claimed bound is not finite");
  } else if (eb.bound < cert.bound - 1e-7) {
    v.reasons.push_back("bound exceeds recomputation: claimed " + std::to_string(cert.bound) + ", recomputed " +
                        std::to_string(eb.bound));
  }
  v.accepted = v.reasons.empty();
  return v;
}

double integer_bound(double bound) { return std::ceil(bound - 1e-6) + 0.0; }

}  // namespace fsos
