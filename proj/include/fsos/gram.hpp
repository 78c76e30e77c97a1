#pragma once

// Gram-matrix representation of a function on S and the error-tolerant bound.
//
// For Q on S x S, v_S* Q v_S = sum_gamma (sum over pairs (a,b) with a^-1 b = gamma of Q[a,b]) chi_gamma,
// so f is represented exactly when every class sum matches fhat(gamma).

#include <Eigen/Dense>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsos/support.hpp"

namespace fsos {

struct HermitianMatrix {
  SupportSet side;
  Eigen::MatrixXcd entries;

  std::size_t size() const { return side.size(); }
  static HermitianMatrix zero(const SupportSet& s);
  /// Max |Q[a,b] - conj(Q[b,a])|.
  double hermitian_defect() const;
};

struct GramSystem {
  GroupFunction f;
  SupportSet support;
  /// P = {a^-1 b : a, b in S}, in mixed-radix order.
  std::vector<DualIndex> products;
  /// pairs[c] lists the (row, col) positions whose class is products[c].
  std::vector<std::vector<std::pair<int, int>>> pairs;
  /// fhat(products[c]), zero off supp(f).
  std::vector<Complex> targets;
  std::size_t identity = 0;
  /// Characters of supp(f) outside P; no Q can represent them.
  std::vector<std::pair<DualIndex, Complex>> unrepresented;
  /// class_of(a, b) = index of a^-1 b in products.
  Eigen::MatrixXi class_of;
  std::unordered_map<DualIndex, std::size_t, DualIndexHash> index;

  std::size_t constraint_count() const { return products.size() - 1; }
  /// Sum of Q over each class.
  std::vector<Complex> class_sums(const Eigen::MatrixXcd& Q) const;
};

GramSystem assemble_gram_system(const GroupFunction& f, const SupportSet& s);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues set to zero).
Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m);
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m);
HermitianMatrix psd_project(const HermitianMatrix& m);

struct ErrorBound {
  double bound = 0.0;
  double lambda_min = 0.0;
  double trace = 0.0;
  /// sum_{gamma != chi0} |ehat(gamma)|
  double residual_l1 = 0.0;
  double residual_max = 0.0;
  /// ehat(gamma) for every non-identity gamma of P, then every unrepresented character.
  std::vector<std::pair<DualIndex, Complex>> residual;
  /// Unit eigenvector for lambda_min.
  Eigen::VectorXcd min_vector;
};

/// f >= fhat(chi0) - tr(Q) - sum_{gamma != chi0} |ehat(gamma)| + lambda_min(Q) |S|, for any Hermitian Q.
ErrorBound error_bound(const GramSystem& sys, const Eigen::MatrixXcd& q);
ErrorBound error_bound(const GroupFunction& f, const SupportSet& s, const HermitianMatrix& q);

}  // namespace fsos
