#pragma once

// Bounds from arbitrary Gram matrices, their subgradient refinement, the end-to-end
// lower-bound pipeline, and self-contained certificates.

#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "fsos/sdp.hpp"

namespace fsos {

/// F(Q) = tr(Q) + sum_{gamma != chi0} |ehat(gamma)| - lambda_min(Q)|S|, so that bound = fhat(chi0) - F(Q).
double F_value(const GramSystem& sys, const Eigen::MatrixXcd& q);
/// Hermitian subgradient of F for the inner product Re tr(A* B).
Eigen::MatrixXcd F_subgradient(const GramSystem& sys, const Eigen::MatrixXcd& q);

struct RefineOptions {
  long max_iter = 300;
  /// Step constant c in eta_t = c / sqrt(t); 0 selects 0.1 max(||Q0||_F, 1) / (1 + |S|).
  double step = 0.0;
  /// Wall-clock cap in seconds; 0 means none.
  double time_cap = 0.0;
};

struct RefineResult {
  HermitianMatrix Q;
  double bound = 0.0;
  double initial_bound = 0.0;
  long iterations = 0;
};

RefineResult refine_bound(const GramSystem& sys, const HermitianMatrix& q0, const RefineOptions& opts = {});

struct LowerBoundParams {
  long long l = 0;
  long long m = 0;
  int d = 2;
  std::size_t k = 1;
  /// Add the identity and every degree-one character to S (needed by rounding).
  bool round = false;
  /// With round: grow S_k until |S_k union M1| = k instead of appending M1 to k characters.
  bool round_fixed_size = false;
  SelectionOptions selection;
  SolverOptions solver;
  RefineOptions refine;
  /// Skips selection when set.
  std::optional<SupportSet> support;
};

struct BoundCertificate {
  GroupFunction f;
  SupportSet support;
  HermitianMatrix Q;
  double lambda_min = 0.0;
  std::vector<std::pair<DualIndex, Complex>> residual;
  double e0 = 0.0;
  double bound = 0.0;
  nlohmann::json meta = nlohmann::json::object();
  std::string fingerprint;
  std::optional<HermitianMatrix> moment;
};

struct StageTimes {
  double select = 0.0;
  double solve = 0.0;
  double refine = 0.0;
};

struct LowerBoundResult {
  BoundCertificate certificate;
  SdpSolution sdp;
  RefineResult refined;
  StageTimes times;
};

LowerBoundResult lower_bound(const GroupFunction& f, const LowerBoundParams& params);

/// Certificate for an arbitrary Hermitian Q; the claimed bound is its error bound.
BoundCertificate make_certificate(const GramSystem& sys, const HermitianMatrix& q,
                                  nlohmann::json meta = nlohmann::json::object());

/// Lowercase hex SHA-256 of canonical_json(f).
std::string fingerprint(const GroupFunction& f);

nlohmann::json certificate_to_json(const BoundCertificate& cert);
/// Throws Error(kMalformed) on schema violations.
BoundCertificate certificate_from_json(const nlohmann::json& j);

struct Verification {
  bool accepted = false;
  double claimed_bound = 0.0;
  double recomputed_bound = 0.0;
  std::vector<std::string> reasons;
};

/// Recomputes the bound from f, S and Q alone; accepts iff it is >= claimed - 1e-7.
Verification verify_certificate(const BoundCertificate& cert, const GroupFunction& f);

/// ceil(bound - 1e-6): the bound snapped for integer-valued f.
double integer_bound(double bound);

}  // namespace fsos
