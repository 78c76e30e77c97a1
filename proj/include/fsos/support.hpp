#pragma once

// Support selection: approximate sqrt(f) by p(f) for a low-degree polynomial p
// fitted to sqrt(t) on the integers of [l, m], then keep the k characters with
// the largest coefficients in p(f).

#include <cstddef>
#include <optional>
#include <vector>

#include "fsos/gfunc.hpp"

namespace fsos {

/// Best uniform approximation of sqrt on an integer grid. Stored in the
/// Chebyshev basis of the grid interval [lo, hi].
class SqrtPoly {
 public:
  SqrtPoly() = default;
  SqrtPoly(long long lo, long long hi, std::vector<double> chebyshev);

  long long lo() const { return lo_; }
  long long hi() const { return hi_; }
  int degree() const { return static_cast<int>(cheb_.size()) - 1; }
  const std::vector<double>& chebyshev() const { return cheb_; }
  /// Max over the grid integers of |p(i) - sqrt(i)|.
  double epsilon() const { return epsilon_; }

  double operator()(double t) const;
  /// Coefficients of p in powers of t (ascending). Ill-conditioned for large
  /// degree; for reporting only.
  std::vector<double> monomial_coefficients() const;
  /// Maps t to the Chebyshev variable u in [-1, 1]: u = scale*t + shift.
  double u_scale() const;
  double u_shift() const;

 private:
  long long lo_ = 0;
  long long hi_ = 0;
  std::vector<double> cheb_;
  double epsilon_ = 0.0;
};

/// Discrete minimax fit of sqrt on {max(l,0), ..., m} with degree <= d, solved
/// exactly as a linear program. The effective degree is capped at
/// (number of grid points - 1).
SqrtPoly minimax_sqrt_poly(long long l, long long m, int d);

inline constexpr std::size_t kDefaultComposeTermCap = 1'000'000;

/// p(f) in the Fourier algebra (Clenshaw recurrence over multiply).
GroupFunction compose_poly(const SqrtPoly& p, const GroupFunction& f,
                           std::size_t max_terms = kDefaultComposeTermCap);

struct SupportSet {
  GroupSpec spec;
  std::vector<DualIndex> chars;

  std::size_t size() const { return chars.size(); }
  std::optional<std::size_t> position(const DualIndex& a) const;
  bool contains(const DualIndex& a) const { return position(a).has_value(); }
  /// Throws when a label repeats or does not belong to spec.
  void validate() const;
};

/// S union M1: appends the identity and every unit character that is missing.
SupportSet with_degree_one(SupportSet s);
/// Identity plus the unit characters, in coordinate order.
SupportSet degree_one_set(const GroupSpec& spec);

struct SelectionOptions {
  /// On equal magnitude prefer the higher-degree character (the documented
  /// tie-break); false prefers lower degree.
  bool prefer_higher_degree = true;
  std::size_t max_terms = kDefaultComposeTermCap;
};

/// Characters of p(f) ranked by (|coefficient| desc, degree, mixed-radix asc).
std::vector<std::pair<DualIndex, Complex>> ranked_characters(const GroupFunction& pf,
                                                             const SelectionOptions& opts = {});

/// The k leading characters of p(f); the identity is always included.
SupportSet select_support(const GroupFunction& f, long long l, long long m, int d, std::size_t k,
                          const SelectionOptions& opts = {});

/// Grows S_k in ranked order until |S_k union M1| reaches target_size; the
/// returned set lists S_k first and then the missing members of M1.
SupportSet select_support_with_degree_one(const GroupFunction& f, long long l, long long m, int d,
                                          std::size_t target_size, const SelectionOptions& opts = {});

struct SqrtCoeffCheck {
  double max_coeff_error = 0.0;  // max_chi |coef of p(f) - coef of sqrt(f)|
  double max_value_error = 0.0;  // max_g |p(f(g)) - sqrt(f(g))|
  double epsilon = 0.0;          // the fit's grid error
  bool values_on_grid = true;    // every f(g) is an integer in [lo, hi]
  bool passed = false;           // max_coeff_error <= bound + 1e-9
};

/// Dense diagnostic: compares p(f) against the exact expansion of sqrt(f).
SqrtCoeffCheck sqrt_coeff_error_check(const GroupFunction& f, const SqrtPoly& p);

}  // namespace fsos
