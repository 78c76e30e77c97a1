#include "linalg.hpp"

#include "fsos/error.hpp"

#ifdef FSOS_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace fsos::detail {

namespace {

bool is_real(const Eigen::MatrixXcd& h) { return h.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

void eigh(const Eigen::MatrixXd& h, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index n = h.rows();
#ifdef FSOS_HAVE_LAPACKE
  vectors = h;
  values.resize(n);
  if (n > 0 && LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), vectors.data(),
                              static_cast<lapack_int>(n), values.data()) != 0) {
    throw Error(ErrorKind::kNumerical, "symmetric eigendecomposition failed");
  }
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "symmetric eigendecomposition failed");
  values = es.eigenvalues();
  vectors = es.eigenvectors();
  (void)n;
#endif
}

Eigh eigh(const Eigen::MatrixXcd& h) {
  Eigh out;
  if (is_real(h)) {
    Eigen::MatrixXd v;
    eigh(Eigen::MatrixXd(h.real()), out.values, v);
    out.vectors = v.cast<Complex>();
    return out;
  }
  const Eigen::Index n = h.rows();
#ifdef FSOS_HAVE_LAPACKE
  out.vectors = h;
  out.values.resize(n);
  if (LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                     reinterpret_cast<lapack_complex_double*>(out.vectors.data()), static_cast<lapack_int>(n),
                     out.values.data()) != 0) {
    throw Error(ErrorKind::kNumerical, "Hermitian eigendecomposition failed");
  }
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "Hermitian eigendecomposition failed");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  (void)n;
#endif
  return out;
}

}  // namespace fsos::detail
