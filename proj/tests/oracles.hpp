#pragma once

// Slow reference implementations used only by the tests. None of them call into the
// library's transform, eigen or LP code.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fsos/cnf.hpp"
#include "fsos/gfunc.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline std::vector<int> digits(const std::vector<int>& orders, std::uint64_t idx) {
  std::vector<int> out(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j) {
    out[j] = static_cast<int>(idx % static_cast<std::uint64_t>(orders[j]));
    idx /= static_cast<std::uint64_t>(orders[j]);
  }
  return out;
}

inline std::uint64_t group_size(const std::vector<int>& orders) {
  std::uint64_t n = 1;
  for (int d : orders) n *= static_cast<std::uint64_t>(d);
  return n;
}

inline Complex character(const std::vector<int>& orders, const std::vector<int>& a, const std::vector<int>& g) {
  double phase = 0.0;
  for (std::size_t j = 0; j < orders.size(); ++j) phase += static_cast<double>(a[j] * g[j] % orders[j]) / orders[j];
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

/// fhat(a) = (1/|G|) sum_g f(g) conj(chi_a(g)), both indexed with coordinate 1 fastest.
/// Phases are reduced exactly in Z_{|G|} and looked up in a table of |G|-th roots of unity.
inline std::vector<Complex> naive_dft(const std::vector<int>& orders, const std::vector<Complex>& table) {
  const std::uint64_t n = group_size(orders);
  std::vector<Complex> roots(n);
  for (std::uint64_t k = 0; k < n; ++k) roots[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / n);
  std::vector<std::vector<int>> pts(n);
  for (std::uint64_t i = 0; i < n; ++i) pts[i] = digits(orders, i);
  std::vector<Complex> out(n);
  for (std::uint64_t a = 0; a < n; ++a) {
    Complex s = 0.0;
    for (std::uint64_t g = 0; g < n; ++g) {
      std::uint64_t ph = 0;
      for (std::size_t j = 0; j < orders.size(); ++j)
        ph += static_cast<std::uint64_t>(pts[a][j] * pts[g][j]) * (n / static_cast<std::uint64_t>(orders[j]));
      s += table[g] * roots[ph % n];
    }
    out[a] = s / static_cast<double>(n);
  }
  return out;
}

/// f(g) = sum_a fhat(a) chi_a(g) straight from the stored terms.
inline Complex evaluate(const fsos::GroupFunction& f, const std::vector<int>& g) {
  Complex s = 0.0;
  for (const auto& [a, c] : f.terms()) s += c * character(f.spec().orders(), a.exps, g);
  return s;
}

inline std::vector<Complex> value_table(const fsos::GroupFunction& f) {
  const auto& orders = f.spec().orders();
  const std::uint64_t n = group_size(orders);
  std::vector<Complex> out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = evaluate(f, digits(orders, i));
  return out;
}

inline double min_value(const fsos::GroupFunction& f) {
  double best = INFINITY;
  for (const Complex& v : value_table(f)) best = std::min(best, v.real());
  return best;
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.
struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

inline SymEigen jacobi(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  SymEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Nearest PSD matrix of a Hermitian matrix through its real embedding [[A,-B],[B,A]].
inline Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  e << m.real(), -m.imag(), m.imag(), m.real();
  const SymEigen s = jacobi(e);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (s.values(i) > 0) r += s.values(i) * s.vectors.col(i) * s.vectors.col(i).transpose();
  }
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = Complex(r(i, j), r(i + n, j));
  return out;
}

inline double min_eigenvalue(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  e << m.real(), -m.imag(), m.imag(), m.real();
  return jacobi(e).values(0);
}

/// Optimal error of the discrete uniform approximation of sqrt by degree-<=d polynomials on
/// the integers lo..hi. The LP dual is attained on a reference of d+2 points where the error
/// levels out; the best such reference gives the optimum, so all of them are enumerated.
inline double minimax_sqrt_error(long long lo, long long hi, int d) {
  std::vector<double> x;
  for (long long i = std::max(lo, 0LL); i <= hi; ++i) x.push_back(static_cast<double>(i));
  const std::size_t r = static_cast<std::size_t>(d) + 2;
  if (x.size() < r) return 0.0;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  double best = 0.0;
  for (;;) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      double w = 1.0;
      for (std::size_t j = 0; j < r; ++j) {
        if (j != i) w /= x[idx[i]] - x[idx[j]];
      }
      num += w * std::sqrt(x[idx[i]]);
      den += std::abs(w);
    }
    best = std::max(best, std::abs(num) / den);
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == x.size() - r + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

/// Weight of clauses with every literal false; x[i] is variable i+1.
inline long long falsified(const fsos::CnfFormula& phi, const std::vector<bool>& x) {
  long long w = 0;
  for (const fsos::Clause& c : phi.clauses()) {
    bool sat = false;
    for (int v : c.pos) sat = sat || x[static_cast<std::size_t>(v - 1)];
    for (int v : c.neg) sat = sat || !x[static_cast<std::size_t>(v - 1)];
    if (!sat) w += c.weight;
  }
  return w;
}

inline std::vector<bool> assignment(int n, std::uint64_t bits) {
  std::vector<bool> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
  return x;
}

inline long long min_falsified(const fsos::CnfFormula& phi) {
  long long best = phi.total_weight();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << phi.n_vars()); ++b)
    best = std::min(best, falsified(phi, assignment(phi.n_vars(), b)));
  return best;
}

/// v_S(g) = (chi(g))_{chi in S}.
inline Eigen::VectorXcd character_vector(const fsos::GroupSpec& spec, const std::vector<fsos::DualIndex>& s,
                                         const std::vector<int>& g) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = character(spec.orders(), s[i].exps, g);
  return v;
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale, bool real = false) {
  std::normal_distribution<double> nd(0.0, scale);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), real ? 0.0 : nd(rng));
  return (m + m.adjoint()) / 2.0;
}

}  // namespace oracle
