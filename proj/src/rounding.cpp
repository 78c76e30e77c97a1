#include "fsos/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fsos/error.hpp"

namespace fsos {

std::string to_string(RoundingMethod m) {
  switch (m) {
    case RoundingMethod::kGramNull:
      return "gram-null";
    case RoundingMethod::kStickelberger:
      return "stickelberger";
    case RoundingMethod::kMoment:
      return "moment";
  }
  return "unknown";
}

GroupElement decode_coordinates(const GroupSpec& spec, const std::vector<Complex>& x, bool* low_confidence) {
  if (x.size() != spec.rank()) {
    throw Error(ErrorKind::kDimensionMismatch, "expected " + std::to_string(spec.rank()) + " coordinates, got " +
                                                   std::to_string(x.size()));
  }
  GroupElement g{std::vector<int>(spec.rank(), 0)};
  bool low = false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double r = std::abs(x[j]);
    if (r < 0.5) low = true;
    if (r == 0.0) continue;
    const int d = spec.order(j);
    const auto k = static_cast<long long>(std::llround(std::arg(x[j]) * d / (2.0 * std::numbers::pi)));
    g.coords[j] = static_cast<int>(((k % d) + d) % d);
  }
  if (low_confidence != nullptr) *low_confidence = low;
  return g;
}

namespace {

struct Layout {
  Eigen::Index identity = 0;
  std::vector<Eigen::Index> units;
};

Layout degree_one_layout(const SupportSet& s) {
  Layout out;
  const auto id = s.position(s.spec.identity());
  if (!id) throw Error(ErrorKind::kInvalidArgument, "rounding needs the identity character in S");
  out.identity = static_cast<Eigen::Index>(*id);
  for (std::size_t j = 0; j < s.spec.rank(); ++j) {
    const auto p = s.position(s.spec.unit(j));
    if (!p) throw Error(ErrorKind::kInvalidArgument, "rounding needs every degree-one character in S");
    out.units.push_back(static_cast<Eigen::Index>(*p));
  }
  return out;
}

Candidate decode_vector(const GroupFunction& f, const Layout& layout, const Eigen::VectorXcd& v) {
  std::vector<Complex> x;
  x.reserve(layout.units.size());
  for (Eigen::Index p : layout.units) x.push_back(v(p));
  Candidate c;
  c.point = decode_coordinates(f.spec(), x, &c.low_confidence);
  c.value = evaluate(f, c.point).real();
  return c;
}

void finish(RoundedSolution& r, double bound) {
  r.best = 0;
  for (std::size_t i = 1; i < r.candidates.size(); ++i) {
    if (r.candidates[i].value < r.candidates[r.best].value) r.best = i;
  }
  r.achieved = r.candidates.empty() ? std::numeric_limits<double>::infinity() : r.candidates[r.best].value;
  r.gap = r.achieved - bound;
}

Eigen::MatrixXcd shifted(const HermitianMatrix& q, double* lambda_max) {
  Eigen::MatrixXcd h = 0.5 * (q.entries + q.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "eigendecomposition failed");
  const double lmin = es.eigenvalues()(0);
  h.diagonal().array() -= std::min(lmin, 0.0);
  *lambda_max = es.eigenvalues()(es.eigenvalues().size() - 1) - std::min(lmin, 0.0);
  return h;
}

}  // namespace

Eigen::MatrixXcd gram_nullspace(const HermitianMatrix& q) {
  double lmax = 0.0;
  const Eigen::MatrixXcd h = shifted(q, &lmax);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "eigendecomposition failed");
  const double tol = std::max(1e-6, 1e-9 * lmax);
  Eigen::Index r = 0;
  while (r < es.eigenvalues().size() && es.eigenvalues()(r) <= tol) ++r;
  return es.eigenvectors().leftCols(r);
}

RoundedSolution gram_null_round(const HermitianMatrix& q, const GroupFunction& f, double bound) {
  const Layout layout = degree_one_layout(q.side);
  const Eigen::MatrixXcd n = gram_nullspace(q);
  RoundedSolution out;
  out.method = RoundingMethod::kGramNull;
  out.corank = static_cast<std::size_t>(n.cols());
  if (n.cols() == 0) throw Error(ErrorKind::kNumerical, "no null vector: Gram matrix has full numerical rank");
  // Projection of e_chi0 onto the nullspace: the null vector with the largest chi0 entry.
  Eigen::VectorXcd v = n * n.row(layout.identity).adjoint();
  const Complex lead = v(layout.identity);
  if (std::abs(lead) < 1e-6) throw Error(ErrorKind::kNumerical, "unnormalizable null vector: chi0 entry vanishes");
  v /= lead;
  out.candidates.push_back(decode_vector(f, layout, v));
  finish(out, bound);
  return out;
}

Eigen::MatrixXcd multiplication_matrix(const SupportSet& s, const Eigen::MatrixXcd& basis,
                                       const std::vector<double>& c) {
  const GroupSpec& spec = s.spec;
  if (c.size() != spec.rank()) throw Error(ErrorKind::kDimensionMismatch, "one coefficient per coordinate expected");
  std::vector<Eigen::Index> rows;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> shifts;
  for (std::size_t r = 0; r < s.size(); ++r) {
    std::vector<std::pair<Eigen::Index, double>> terms;
    bool closed = true;
    for (std::size_t i = 0; i < spec.rank() && closed; ++i) {
      if (c[i] == 0.0) continue;
      const auto p = s.position(dual_combine(spec, spec.unit(i), s.chars[r]));
      if (!p) closed = false;
      else terms.emplace_back(static_cast<Eigen::Index>(*p), c[i]);
    }
    if (!closed) continue;
    rows.push_back(static_cast<Eigen::Index>(r));
    shifts.push_back(std::move(terms));
  }
  const Eigen::Index k = basis.cols();
  const auto nr = static_cast<Eigen::Index>(rows.size());
  if (nr < k) throw Error(ErrorKind::kNumerical, "too few closed rows to represent multiplication; use moment rounding");
  Eigen::MatrixXcd nr_mat(nr, k);
  Eigen::MatrixXcd l_mat = Eigen::MatrixXcd::Zero(nr, k);
  for (Eigen::Index i = 0; i < nr; ++i) {
    nr_mat.row(i) = basis.row(rows[static_cast<std::size_t>(i)]);
    for (const auto& [p, coef] : shifts[static_cast<std::size_t>(i)]) l_mat.row(i) += coef * basis.row(p);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(nr_mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e8) {
    throw Error(ErrorKind::kNumerical, "ill-conditioned nullspace basis (condition > 1e8); use moment rounding");
  }
  Eigen::VectorXd inv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) inv(i) = sv(i) > 1e-8 * sv(0) ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint() * l_mat;
}

RoundedSolution stickelberger_round(const HermitianMatrix& q, const GroupFunction& f, std::uint64_t seed, double bound,
                                    std::optional<std::vector<double>> coefficients) {
  const Layout layout = degree_one_layout(q.side);
  const Eigen::MatrixXcd n = gram_nullspace(q);
  RoundedSolution out;
  out.method = RoundingMethod::kStickelberger;
  out.corank = static_cast<std::size_t>(n.cols());
  if (n.cols() == 0) throw Error(ErrorKind::kNumerical, "no null vector: Gram matrix has full numerical rank");
  std::vector<double> c;
  if (coefficients) {
    c = *coefficients;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t i = 0; i < f.spec().rank(); ++i) c.push_back(dist(rng));
  }
  const Eigen::MatrixXcd x = multiplication_matrix(q.side, n, c);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "eigendecomposition of the multiplication matrix failed");
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    Eigen::VectorXcd v = n * es.eigenvectors().col(k);
    const Complex lead = v(layout.identity);
    if (std::abs(lead) < 1e-6) continue;
    v /= lead;
    Candidate cand = decode_vector(f, layout, v);
    const bool seen = std::any_of(out.candidates.begin(), out.candidates.end(),
                                  [&](const Candidate& o) { return o.point == cand.point; });
    if (!seen) out.candidates.push_back(std::move(cand));
  }
  if (out.candidates.empty()) throw Error(ErrorKind::kNumerical, "no eigenvector could be normalized at chi0");
  finish(out, bound);
  return out;
}

RoundedSolution moment_round(const HermitianMatrix& h, const GroupFunction& f, double bound) {
  const Layout layout = degree_one_layout(h.side);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h.entries + h.entries.adjoint()));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "eigendecomposition of H failed");
  const Eigen::Index top = es.eigenvalues().size() - 1;
  const double mu = es.eigenvalues()(top);
  if (mu <= 0.0) throw Error(ErrorKind::kNumerical, "moment matrix has no positive eigenvalue");
  const Eigen::VectorXcd u = es.eigenvectors().col(top);
  Eigen::VectorXcd row(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) row(i) = mu * u(layout.identity) * std::conj(u(i));
  RoundedSolution out;
  out.method = RoundingMethod::kMoment;
  out.candidates.push_back(decode_vector(f, layout, row));
  finish(out, bound);
  return out;
}

RoundedSolution best_candidate(const GroupFunction& f, const std::vector<RoundedSolution>& solutions) {
  if (solutions.empty()) throw Error(ErrorKind::kInvalidArgument, "no rounded solutions to choose from");
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (solutions[i].candidates.empty()) continue;
    const double v = evaluate(f, solutions[i].candidates[solutions[i].best].point).real();
    const bool better = !best || v < best_value ||
                        (v == best_value && static_cast<int>(solutions[i].method) < static_cast<int>(solutions[*best].method));
    if (better) {
      best = i;
      best_value = v;
    }
  }
  if (!best) throw Error(ErrorKind::kInvalidArgument, "rounded solutions carry no candidates");
  RoundedSolution out = solutions[*best];
  out.achieved = best_value;
  out.gap = best_value - (solutions[*best].achieved - solutions[*best].gap);
  return out;
}

}  // namespace fsos
