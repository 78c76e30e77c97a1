#pragma once

// Approximate solver for  max fhat(chi0) - tr(Q)  s.t.  Q >= 0 and the Gram class sums of Q match fhat.
// Operator splitting (ADMM) between the affine constraint set and the PSD cone.

#include <functional>
#include <map>
#include <string>

#include "fsos/gram.hpp"

namespace fsos {

enum class SolverStatus { kConverged, kIterationCap, kTimeCap };

std::string to_string(SolverStatus s);

struct Checkpoint {
  long iteration = 0;
  double residual = 0.0;  // max equality residual of the PSD iterate
  double lambda_min = 0.0;  // of the affine iterate
  double bound = 0.0;  // best bound so far
  double rho = 0.0;
};

struct SolverOptions {
  long max_iter = 50'000;
  double time_cap = 0.0;  // seconds; 0 disables
  double rho = 1.0;
  double tol = 1e-7;
  long check_interval = 100;
  bool adaptive_rho = true;
  std::function<void(const Checkpoint&)> telemetry;
};

struct SdpSolution {
  HermitianMatrix Q;  // best iterate by error bound
  std::map<DualIndex, Complex, MixedRadixLess> y;
  HermitianMatrix H;
  double residual_max = 0.0;
  double residual_l1 = 0.0;
  double psd_violation = 0.0;
  double bound = 0.0;
  long iterations = 0;
  double seconds = 0.0;
  SolverStatus status = SolverStatus::kIterationCap;
};

SdpSolution solve_sdp(const GramSystem& sys, const SolverOptions& opts = {});

/// H[a,b] = y(a^-1 b), projected onto the PSD cone and scaled so the chi0 diagonal entry is 1.
HermitianMatrix moment_from_duals(const GramSystem& sys, const std::map<DualIndex, Complex, MixedRadixLess>& y);

}  // namespace fsos
