#include "fsos/support.hpp"

#include <spdlog/spdlog.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "fsos/error.hpp"

namespace fsos {

namespace {

// Dense two-phase tableau simplex for  min c'x  s.t.  Ax = b, x >= 0  (b >= 0),
// with Bland's rule. Returns the simplex multipliers y of the optimal basis,
// i.e. the optimal solution of the dual  max b'y  s.t.  A'y <= c.
Eigen::VectorXd simplex_dual_solution(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  constexpr double kTol = 1e-11;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Eigen::Index cols = n + m;  // structural + artificial
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.block(0, cols, m, 1) = b;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  auto pivot = [&](Eigen::Index r, Eigen::Index col) {
    T.row(r) /= T(r, col);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != r && T(i, col) != 0.0) T.row(i) -= T(i, col) * T.row(r);
    }
    basis[static_cast<std::size_t>(r)] = col;
  };

  // Objective row holds reduced costs; T(m, cols) holds -objective.
  auto load_objective = [&](const Eigen::VectorXd& cost) {
    T.row(m).setZero();
    T.row(m).head(cols) = cost.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double cb = cost(basis[static_cast<std::size_t>(i)]);
      if (cb != 0.0) T.row(m) -= cb * T.row(i);
    }
  };

  auto run = [&](Eigen::Index allowed_cols) {
    for (long iter = 0;; ++iter) {
      if (iter > 100000) throw Error(ErrorKind::kNumerical, "simplex iteration limit reached");
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (T(m, j) < -kTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T(i, enter) > kTol) {
          const double ratio = T(i, cols) / T(i, enter);
          if (leave < 0 || ratio < best - kTol ||
              (ratio <= best + kTol && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) throw Error(ErrorKind::kNumerical, "linear program is unbounded");
      pivot(leave, enter);
    }
  };

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
  phase1.tail(m).setOnes();
  load_objective(phase1);
  run(cols);
  if (-T(m, cols) > 1e-9) throw Error(ErrorKind::kNumerical, "linear program is infeasible");

  // Pivot zero-level artificials out where a structural column allows it.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > 1e-9) {
        pivot(i, j);
        break;
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  phase2.head(n) = c;
  load_objective(phase2);
  run(n);

  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) {
      B.col(i) = A.col(j);
      cb(i) = c(j);
    } else {
      B.col(i) = Eigen::VectorXd::Unit(m, j - n);
      cb(i) = 0.0;
    }
  }
  return B.transpose().fullPivLu().solve(cb);
}

double chebyshev_sum(const std::vector<double>& c, double u) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = c[k] + 2.0 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c.empty() ? 0.0 : c[0] + u * b1 - b2;
}

}  // namespace

SqrtPoly::SqrtPoly(long long lo, long long hi, std::vector<double> chebyshev)
    : lo_(lo), hi_(hi), cheb_(std::move(chebyshev)) {
  if (cheb_.empty()) cheb_.push_back(0.0);
  for (long long i = lo_; i <= hi_; ++i) {
    const auto t = static_cast<double>(i);
    epsilon_ = std::max(epsilon_, std::abs((*this)(t) - std::sqrt(t)));
  }
}

double SqrtPoly::u_scale() const { return hi_ == lo_ ? 0.0 : 2.0 / static_cast<double>(hi_ - lo_); }

double SqrtPoly::u_shift() const {
  return hi_ == lo_ ? 0.0 : -static_cast<double>(hi_ + lo_) / static_cast<double>(hi_ - lo_);
}

double SqrtPoly::operator()(double t) const { return chebyshev_sum(cheb_, u_scale() * t + u_shift()); }

std::vector<double> SqrtPoly::monomial_coefficients() const {
  const std::size_t n = cheb_.size();
  // Power-basis coefficients in u.
  std::vector<double> q(n, 0.0);
  std::vector<double> t_prev(n, 0.0);
  std::vector<double> t_cur(n, 0.0);
  t_prev[0] = 1.0;
  if (n > 1) t_cur[1] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<double>& tk = k == 0 ? t_prev : t_cur;
    for (std::size_t j = 0; j < n; ++j) q[j] += cheb_[k] * tk[j];
    if (k >= 1 && k + 1 < n) {
      std::vector<double> next(n, 0.0);
      for (std::size_t j = 0; j + 1 < n; ++j) next[j + 1] += 2.0 * t_cur[j];
      for (std::size_t j = 0; j < n; ++j) next[j] -= t_prev[j];
      t_prev = std::move(t_cur);
      t_cur = std::move(next);
    }
  }
  // Substitute u = s t + h.
  const double s = u_scale();
  const double h = u_shift();
  std::vector<double> out(n, 0.0);
  std::vector<double> power(n, 0.0);  // coefficients of (s t + h)^j
  power[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out[i] += q[j] * power[i];
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] += h * power[i];
      if (i + 1 < n) next[i + 1] += s * power[i];
    }
    power = std::move(next);
  }
  return out;
}

SqrtPoly minimax_sqrt_poly(long long l, long long m, int d) {
  const long long lo = std::max(l, 0LL);
  if (m < lo) {
    throw Error(ErrorKind::kInvalidArgument,
                "degenerate fitting range [" + std::to_string(l) + ", " + std::to_string(m) + "]");
  }
  if (d < 0) throw Error(ErrorKind::kInvalidArgument, "polynomial degree must be >= 0");
  const long long points = m - lo + 1;
  const int degree = static_cast<int>(std::min<long long>(d, points - 1));
  const int terms = degree + 1;

  SqrtPoly shape(lo, m, std::vector<double>(static_cast<std::size_t>(terms), 0.0));
  const double us = shape.u_scale();
  const double uh = shape.u_shift();

  // Dual LP over weights (lambda_i, mu_i) >= 0:
  //   min  sum_i sqrt(x_i) (lambda_i - mu_i)
  //   s.t. sum_i (lambda_i - mu_i) T_k(u_i) = 0  (k = 0..degree),  sum_i (lambda_i + mu_i) = 1.
  // Its multipliers are the Chebyshev coefficients of p and -epsilon.
  const Eigen::Index npts = static_cast<Eigen::Index>(points);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(terms + 1, 2 * npts);
  Eigen::VectorXd cost(2 * npts);
  for (Eigen::Index i = 0; i < npts; ++i) {
    const double x = static_cast<double>(lo + i);
    const double u = us * x + uh;
    double t_prev = 1.0;
    double t_cur = u;
    for (int k = 0; k < terms; ++k) {
      const double tk = k == 0 ? 1.0 : (k == 1 ? u : 0.0);
      double value = tk;
      if (k >= 2) {
        value = 2.0 * u * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = value;
      }
      A(k, i) = value;
      A(k, npts + i) = -value;
    }
    A(terms, i) = 1.0;
    A(terms, npts + i) = 1.0;
    cost(i) = std::sqrt(x);
    cost(npts + i) = -std::sqrt(x);
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(terms + 1);
  b(terms) = 1.0;
  const Eigen::VectorXd y = simplex_dual_solution(A, b, cost);
  std::vector<double> cheb(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) cheb[static_cast<std::size_t>(k)] = y(k);
  return SqrtPoly(lo, m, std::move(cheb));
}

GroupFunction compose_poly(const SqrtPoly& p, const GroupFunction& f, std::size_t max_terms) {
  const GroupSpec& spec = f.spec();
  GroupFunction u = f * Complex(p.u_scale());
  u += GroupFunction::constant(spec, p.u_shift());
  const std::vector<double>& c = p.chebyshev();

  auto product = [&](const GroupFunction& a) {
    try {
      return multiply(u, a, max_terms);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCapExceeded) throw;
      throw Error(ErrorKind::kCapExceeded, std::string(e.what()) + " while composing a degree-" +
                                               std::to_string(p.degree()) + " polynomial; lower d");
    }
  };

  GroupFunction b1(spec);
  GroupFunction b2(spec);
  for (std::size_t k = c.size(); k-- > 1;) {
    GroupFunction b0 = product(b1) * Complex(2.0);
    b0 -= b2;
    b0 += GroupFunction::constant(spec, c[k]);
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  GroupFunction out = product(b1);
  out -= b2;
  out += GroupFunction::constant(spec, c[0]);
  return out;
}

std::optional<std::size_t> SupportSet::position(const DualIndex& a) const {
  auto it = std::find(chars.begin(), chars.end(), a);
  if (it == chars.end()) return std::nullopt;
  return static_cast<std::size_t>(it - chars.begin());
}

void SupportSet::validate() const {
  std::set<DualIndex, MixedRadixLess> seen;
  for (const DualIndex& a : chars) {
    spec.check(a);
    if (!seen.insert(a).second) throw Error(ErrorKind::kInvalidArgument, "support set repeats a character");
  }
}

SupportSet degree_one_set(const GroupSpec& spec) {
  SupportSet s{spec, {spec.identity()}};
  for (std::size_t j = 0; j < spec.rank(); ++j) s.chars.push_back(spec.unit(j));
  return s;
}

SupportSet with_degree_one(SupportSet s) {
  for (const DualIndex& a : degree_one_set(s.spec).chars) {
    if (!s.contains(a)) s.chars.push_back(a);
  }
  return s;
}

std::vector<std::pair<DualIndex, Complex>> ranked_characters(const GroupFunction& pf, const SelectionOptions& opts) {
  double maxabs = 0.0;
  for (const auto& [a, c] : pf.terms()) maxabs = std::max(maxabs, std::abs(c));
  // Magnitudes equal up to rounding share a bucket so the degree rule decides.
  const double quantum = maxabs > 0.0 ? 1e-9 * maxabs : 1.0;
  struct Entry {
    long long bucket;
    int degree;
    const DualIndex* alpha;
    Complex c;
  };
  std::vector<Entry> entries;
  entries.reserve(pf.sparsity());
  for (const auto& [a, c] : pf.terms()) entries.push_back({std::llround(std::abs(c) / quantum), a.degree(), &a, c});
  const MixedRadixLess less;
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& x, const Entry& y) {
    if (x.bucket != y.bucket) return x.bucket > y.bucket;
    if (x.degree != y.degree) return opts.prefer_higher_degree ? x.degree > y.degree : x.degree < y.degree;
    return less(*x.alpha, *y.alpha);
  });
  std::vector<std::pair<DualIndex, Complex>> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.emplace_back(*e.alpha, e.c);
  return out;
}

namespace {

// Adds unit characters, then further characters in mixed-radix order, until |s| = k.
void pad_support(SupportSet& s, std::size_t k) {
  const GroupSpec& spec = s.spec;
  for (std::size_t j = 0; j < spec.rank() && s.size() < k; ++j) {
    DualIndex a = spec.unit(j);
    if (!s.contains(a)) s.chars.push_back(std::move(a));
  }
  DualIndex a = spec.identity();
  while (s.size() < k) {
    // Mixed-radix increment (coordinate 1 fastest).
    std::size_t j = 0;
    while (j < spec.rank()) {
      if (++a.exps[j] < spec.order(j)) break;
      a.exps[j] = 0;
      ++j;
    }
    if (j == spec.rank()) break;  // wrapped: every character used
    if (!s.contains(a)) s.chars.push_back(a);
  }
}

}  // namespace

SupportSet select_support(const GroupFunction& f, long long l, long long m, int d, std::size_t k,
                          const SelectionOptions& opts) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "support size k must be >= 1");
  const SqrtPoly p = minimax_sqrt_poly(l, m, d);
  const GroupFunction pf = compose_poly(p, f, opts.max_terms);
  const auto ranked = ranked_characters(pf, opts);

  SupportSet s{f.spec(), {}};
  for (std::size_t i = 0; i < ranked.size() && s.size() < k; ++i) s.chars.push_back(ranked[i].first);
  const DualIndex id = f.spec().identity();
  if (!s.contains(id)) {
    if (s.size() == k) s.chars.back() = id;
    else s.chars.push_back(id);
  }
  if (s.size() < k) {
    spdlog::warn("requested support size {} exceeds the {} characters of p(f); padding with degree-one characters",
                 k, pf.sparsity());
    pad_support(s, k);
  }
  return s;
}

SupportSet select_support_with_degree_one(const GroupFunction& f, long long l, long long m, int d,
                                          std::size_t target_size, const SelectionOptions& opts) {
  const SupportSet m1 = degree_one_set(f.spec());
  const SqrtPoly p = minimax_sqrt_poly(l, m, d);
  const GroupFunction pf = compose_poly(p, f, opts.max_terms);
  const auto ranked = ranked_characters(pf, opts);

  SupportSet sk{f.spec(), {}};
  std::size_t missing = m1.size();
  for (const auto& [a, c] : ranked) {
    if (sk.size() + missing >= target_size) break;
    sk.chars.push_back(a);
    if (m1.contains(a)) --missing;
  }
  SupportSet s = with_degree_one(std::move(sk));
  if (s.size() < target_size) {
    spdlog::warn("requested support size {} exceeds the characters of p(f); padding", target_size);
    pad_support(s, target_size);
  }
  return s;
}

SqrtCoeffCheck sqrt_coeff_error_check(const GroupFunction& f, const SqrtPoly& p) {
  const GroupSpec& spec = f.spec();
  const std::vector<double> values = real_table(f);
  SqrtCoeffCheck out;
  out.epsilon = p.epsilon();
  std::vector<Complex> roots(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v < -1e-9) {
      throw Error(ErrorKind::kInvalidArgument, "sqrt check requires a nonnegative function; f = " +
                                                   std::to_string(v) + " at index " + std::to_string(i));
    }
    const double clipped = std::max(v, 0.0);
    roots[i] = std::sqrt(clipped);
    const double r = std::round(clipped);
    if (std::abs(clipped - r) > 1e-9 || r < static_cast<double>(p.lo()) || r > static_cast<double>(p.hi())) {
      out.values_on_grid = false;
    }
    out.max_value_error = std::max(out.max_value_error, std::abs(p(clipped) - std::sqrt(clipped)));
  }
  const std::vector<Complex> exact = fft(spec, roots);
  std::vector<Complex> approx(exact.size());
  const GroupFunction composed = compose_poly(p, f);
  for (const auto& [a, c] : composed.terms()) approx[spec.index_of(a)] = c;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    out.max_coeff_error = std::max(out.max_coeff_error, std::abs(approx[i] - exact[i]));
  }
  const double bound = out.values_on_grid ? std::max(out.epsilon, out.max_value_error) : out.max_value_error;
  out.passed = out.max_coeff_error <= bound + 1e-9;
  return out;
}

}  // namespace fsos
