#pragma once

#include <Eigen/Dense>

#include "fsos/abelian.hpp"

namespace fsos::detail {

/// Eigenvalues ascending, eigenvectors in matching columns.
struct Eigh {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Eigh eigh(const Eigen::MatrixXcd& h);
void eigh(const Eigen::MatrixXd& h, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

}  // namespace fsos::detail
