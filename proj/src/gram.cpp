#include "fsos/gram.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fsos/error.hpp"
#include "linalg.hpp"

namespace fsos {

HermitianMatrix HermitianMatrix::zero(const SupportSet& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  return {s, Eigen::MatrixXcd::Zero(n, n)};
}

double HermitianMatrix::hermitian_defect() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

std::vector<Complex> GramSystem::class_sums(const Eigen::MatrixXcd& q) const {
  std::vector<Complex> sums(products.size());
  const Eigen::Index n = q.rows();
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) sums[static_cast<std::size_t>(class_of(a, b))] += q(a, b);
  }
  return sums;
}

GramSystem assemble_gram_system(const GroupFunction& f, const SupportSet& s) {
  if (s.size() == 0) throw Error(ErrorKind::kInvalidArgument, "support set is empty");
  if (!(s.spec == f.spec())) throw Error(ErrorKind::kDimensionMismatch, "support set and function live on different groups");
  s.validate();
  const GroupSpec& spec = f.spec();
  const auto n = static_cast<Eigen::Index>(s.size());

  std::map<DualIndex, std::vector<std::pair<int, int>>, MixedRadixLess> classes;
  std::vector<DualIndex> inverses;
  inverses.reserve(s.size());
  for (const DualIndex& a : s.chars) inverses.push_back(dual_inverse(spec, a));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      classes[dual_combine(spec, inverses[static_cast<std::size_t>(a)], s.chars[static_cast<std::size_t>(b)])]
          .emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }

  GramSystem sys{f, s, {}, {}, {}, 0, {}, Eigen::MatrixXi(n, n), {}};
  const DualIndex id = spec.identity();
  for (auto& [gamma, list] : classes) {
    const std::size_t c = sys.products.size();
    if (gamma == id) sys.identity = c;
    for (const auto& [a, b] : list) sys.class_of(a, b) = static_cast<int>(c);
    sys.index.emplace(gamma, c);
    sys.targets.push_back(f.coefficient(gamma));
    sys.products.push_back(gamma);
    sys.pairs.push_back(std::move(list));
  }
  for (const auto& [gamma, c] : f.terms()) {
    if (sys.index.count(gamma) == 0) sys.unrepresented.emplace_back(gamma, c);
  }
  return sys;
}

Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m) {
  const detail::Eigh es = detail::eigh(m);
  Eigen::Index first = 0;
  while (first < es.values.size() && es.values(first) <= 0.0) ++first;
  const Eigen::Index keep = es.values.size() - first;
  const Eigen::MatrixXcd v = es.vectors.rightCols(keep);
  return v * es.values.tail(keep).asDiagonal() * v.adjoint();
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) {
  Eigen::VectorXd w;
  Eigen::MatrixXd vecs;
  detail::eigh(m, w, vecs);
  Eigen::Index first = 0;
  while (first < w.size() && w(first) <= 0.0) ++first;
  const Eigen::Index keep = w.size() - first;
  const Eigen::MatrixXd v = vecs.rightCols(keep);
  return v * w.tail(keep).asDiagonal() * v.transpose();
}

HermitianMatrix psd_project(const HermitianMatrix& m) { return {m.side, psd_project(m.entries)}; }

ErrorBound error_bound(const GramSystem& sys, const Eigen::MatrixXcd& q) {
  const auto n = static_cast<Eigen::Index>(sys.support.size());
  if (q.rows() != n || q.cols() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "Q is " + std::to_string(q.rows()) + "x" + std::to_string(q.cols()) +
                                                   " but |S| = " + std::to_string(n));
  }
  ErrorBound out;
  const Eigen::MatrixXcd h = 0.5 * (q + q.adjoint());
  const detail::Eigh es = detail::eigh(h);
  out.lambda_min = es.values(0);
  out.min_vector = es.vectors.col(0);
  out.trace = h.diagonal().real().sum();

  const std::vector<Complex> sums = sys.class_sums(h);
  for (std::size_t c = 0; c < sys.products.size(); ++c) {
    if (c == sys.identity) continue;
    out.residual.emplace_back(sys.products[c], sys.targets[c] - sums[c]);
  }
  for (const auto& r : sys.unrepresented) out.residual.push_back(r);
  for (const auto& [gamma, e] : out.residual) {
    out.residual_l1 += std::abs(e);
    out.residual_max = std::max(out.residual_max, std::abs(e));
  }
  const double f0 = sys.f.constant_term().real();
  out.bound = f0 - out.trace - out.residual_l1 + out.lambda_min * static_cast<double>(n);
  return out;
}

ErrorBound error_bound(const GroupFunction& f, const SupportSet& s, const HermitianMatrix& q) {
  if (!(q.side.chars == s.chars)) throw Error(ErrorKind::kDimensionMismatch, "Q is indexed by a different support set");
  return error_bound(assemble_gram_system(f, s), q.entries);
}

}  // namespace fsos
