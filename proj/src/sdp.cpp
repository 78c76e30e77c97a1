#include "fsos/sdp.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <limits>

#include "fsos/error.hpp"

namespace fsos {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::kConverged:
      return "converged";
    case SolverStatus::kIterationCap:
      return "iteration-cap";
    case SolverStatus::kTimeCap:
      return "time-cap";
  }
  return "unknown";
}

namespace {

template <typename Scalar>
Scalar from_complex(Complex z) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return z.real();
  } else {
    return z;
  }
}

template <typename Scalar>
class Admm {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Admm(const GramSystem& sys, const SolverOptions& opts) : sys_(sys), opts_(opts) {
    const auto n = static_cast<Eigen::Index>(sys.support.size());
    for (std::size_t c = 0; c < sys.products.size(); ++c) {
      if (c == sys.identity) continue;
      std::vector<Eigen::Index> pos;
      pos.reserve(sys.pairs[c].size());
      for (const auto& [a, b] : sys.pairs[c]) pos.push_back(a + b * n);
      positions_.push_back(std::move(pos));
      targets_.push_back(from_complex<Scalar>(sys.targets[c]));
    }
  }

  SdpSolution run() {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const auto n = static_cast<Eigen::Index>(sys_.support.size());
    Mat x = Mat::Zero(n, n);
    Mat z = Mat::Zero(n, n);
    Mat u = Mat::Zero(n, n);
    Mat z_prev;
    double rho = opts_.rho;
    const long interval = std::max(1L, opts_.check_interval);

    SdpSolution out;
    out.bound = -std::numeric_limits<double>::infinity();
    Mat best = Mat::Zero(n, n);
    double best_residual = std::numeric_limits<double>::infinity();
    auto consider = [&](const Mat& m) {
      const ErrorBound eb = error_bound(sys_, m.template cast<Complex>());
      if (eb.bound > out.bound || (eb.bound == out.bound && eb.residual_max < best_residual)) {
        out.bound = eb.bound;
        best_residual = eb.residual_max;
        best = m;
      }
      return eb;
    };
    if (opts_.max_iter <= 0) consider(z);

    long it = 0;
    out.status = SolverStatus::kIterationCap;
    while (it < opts_.max_iter) {
      ++it;
      x = z - u;
      x.diagonal().array() -= Scalar(1.0 / rho);
      project_affine(x);
      z_prev = z;
      z = x + u;
      z = psd_project(Mat(0.5 * (z + z.adjoint())));
      u += x - z;

      const bool out_of_time =
          opts_.time_cap > 0.0 && std::chrono::duration<double>(Clock::now() - start).count() >= opts_.time_cap;
      if (it % interval != 0 && it != opts_.max_iter && !out_of_time) continue;
      const double r_primal = (x - z).norm();
      const double r_dual = rho * (z - z_prev).norm();
      const ErrorBound ez = consider(z);
      const ErrorBound ex = consider(x);
      if (opts_.telemetry) opts_.telemetry({it, ez.residual_max, ex.lambda_min, out.bound, rho});
      const bool converged = ez.residual_max <= opts_.tol && ex.lambda_min >= -opts_.tol &&
                             r_primal <= opts_.tol * std::max(1.0, z.norm()) &&
                             r_dual <= opts_.tol * std::max(1.0, rho * u.norm());
      if (converged) {
        out.status = SolverStatus::kConverged;
        break;
      }
      if (out_of_time) {
        out.status = SolverStatus::kTimeCap;
        break;
      }
      if (opts_.adaptive_rho) {
        if (r_primal > 10.0 * r_dual) {
          rho *= 2.0;
          u /= Scalar(2.0);
        } else if (r_dual > 10.0 * r_primal) {
          rho /= 2.0;
          u *= Scalar(2.0);
        }
      }
    }
    out.iterations = it;

    out.Q = {sys_.support, best.template cast<Complex>()};
    const ErrorBound final_eb = error_bound(sys_, out.Q.entries);
    out.bound = final_eb.bound;
    out.residual_max = final_eb.residual_max;
    out.residual_l1 = final_eb.residual_l1;
    out.psd_violation = std::max(0.0, -final_eb.lambda_min);

    // Dual slack W = -rho U; its conjugate carries the moments.
    const Eigen::MatrixXcd moments = (-rho * u).template cast<Complex>().conjugate();
    std::vector<Complex> sums(sys_.products.size());
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index a = 0; a < n; ++a) sums[static_cast<std::size_t>(sys_.class_of(a, b))] += moments(a, b);
    }
    const Complex diag = sums[sys_.identity] / static_cast<double>(sys_.pairs[sys_.identity].size());
    for (std::size_t c = 0; c < sys_.products.size(); ++c) {
      Complex avg = sums[c] / static_cast<double>(sys_.pairs[c].size());
      if (std::abs(diag) > 1e-12) avg /= diag;
      out.y.emplace(sys_.products[c], c == sys_.identity ? Complex(1.0) : avg);
    }
    out.H = moment_from_duals(sys_, out.y);
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  }

 private:
  void project_affine(Mat& m) const {
    Scalar* p = m.data();
    for (std::size_t c = 0; c < positions_.size(); ++c) {
      Scalar sum(0);
      for (Eigen::Index k : positions_[c]) sum += p[k];
      const Scalar delta = (targets_[c] - sum) / static_cast<double>(positions_[c].size());
      for (Eigen::Index k : positions_[c]) p[k] += delta;
    }
  }

  const GramSystem& sys_;
  const SolverOptions& opts_;
  std::vector<std::vector<Eigen::Index>> positions_;
  std::vector<Scalar> targets_;
};

bool real_system(const GramSystem& sys) {
  if (!sys.support.spec.is_elementary_two_group()) return false;
  for (Complex t : sys.targets) {
    if (std::abs(t.imag()) > 1e-14) return false;
  }
  return true;
}

}  // namespace

SdpSolution solve_sdp(const GramSystem& sys, const SolverOptions& opts) {
  if (opts.rho <= 0.0) throw Error(ErrorKind::kInvalidArgument, "penalty rho must be positive");
  if (real_system(sys)) return Admm<double>(sys, opts).run();
  return Admm<Complex>(sys, opts).run();
}

HermitianMatrix moment_from_duals(const GramSystem& sys, const std::map<DualIndex, Complex, MixedRadixLess>& y) {
  const auto n = static_cast<Eigen::Index>(sys.support.size());
  std::vector<Complex> values(sys.products.size());
  bool warned = false;
  for (std::size_t c = 0; c < sys.products.size(); ++c) {
    if (c == sys.identity) {
      values[c] = 1.0;
      continue;
    }
    auto it = y.find(sys.products[c]);
    if (it == y.end()) {
      if (!warned) spdlog::warn("missing dual multiplier for some product characters; using 0");
      warned = true;
    } else {
      values[c] = it->second;
    }
  }
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) h(a, b) = values[static_cast<std::size_t>(sys.class_of(a, b))];
  }
  h = psd_project(Eigen::MatrixXcd(0.5 * (h + h.adjoint())));
  const auto pos = sys.support.position(sys.support.spec.identity());
  double scale = pos ? h(static_cast<Eigen::Index>(*pos), static_cast<Eigen::Index>(*pos)).real()
                     : h.diagonal().real().mean();
  if (scale > 1e-12) h /= scale;
  return {sys.support, h};
}

}  // namespace fsos
