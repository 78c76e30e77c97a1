#pragma once

// Functions on G held by their Fourier coefficients.

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fsos/abelian.hpp"
#include "json.hpp"

namespace fsos {

inline constexpr double kPruneThreshold = 1e-12;

class GroupFunction {
 public:
  using Terms = std::map<DualIndex, Complex, MixedRadixLess>;

  GroupFunction() = default;
  explicit GroupFunction(GroupSpec spec, double prune = kPruneThreshold);
  /// Validates every label against spec and drops coefficients below prune.
  GroupFunction(GroupSpec spec, Terms terms, double prune = kPruneThreshold);

  static GroupFunction constant(const GroupSpec& spec, Complex c);
  static GroupFunction monomial(const GroupSpec& spec, const DualIndex& alpha, Complex c = 1.0);

  const GroupSpec& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  double prune_threshold() const { return prune_; }
  std::size_t sparsity() const { return terms_.size(); }

  Complex coefficient(const DualIndex& alpha) const;
  Complex constant_term() const { return coefficient(spec_.identity()); }

  /// True when coeff(inverse(a)) = conj(coeff(a)) for every stored a.
  bool is_real(double tol = 1e-9) const;

  /// Highest character degree present (0 for constants and the zero function).
  int degree() const;
  double l1_norm() const;

  void add_term(const DualIndex& alpha, Complex c);

  GroupFunction& operator+=(const GroupFunction& other);
  GroupFunction& operator-=(const GroupFunction& other);
  GroupFunction& operator*=(Complex c);
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
  friend GroupFunction operator*(GroupFunction a, Complex c) { return a *= c; }

  bool operator==(const GroupFunction& other) const { return spec_ == other.spec_ && terms_ == other.terms_; }

 private:
  void require_same_group(const GroupFunction& other) const;

  GroupSpec spec_;
  Terms terms_;
  double prune_ = kPruneThreshold;
};

GroupFunction from_table(const GroupSpec& spec, std::span<const Complex> table, double prune = kPruneThreshold);
std::vector<Complex> to_table(const GroupFunction& f);
/// Real parts of to_table.
std::vector<double> real_table(const GroupFunction& f);

Complex evaluate(const GroupFunction& f, const GroupElement& g);

/// Pointwise product, computed as a sparse convolution of coefficients.
/// Throws kCapExceeded when the result would hold more than max_terms terms.
GroupFunction multiply(const GroupFunction& f, const GroupFunction& h,
                       std::size_t max_terms = std::numeric_limits<std::size_t>::max());

struct MinimumPoint {
  double value = 0.0;
  GroupElement argmin;
};

/// Exact minimum by enumerating G; ties go to the lowest mixed-radix index.
MinimumPoint brute_force_min(const GroupFunction& f);

/// True when every value of f is within tol of an integer (dense check).
bool is_integer_valued(const GroupFunction& f, double tol = 1e-9);

/// {"orders":[...],"terms":[{"exps":[...],"re":...,"im":...}]}, terms in
/// mixed-radix order.
nlohmann::json to_json(const GroupFunction& f);
GroupFunction function_from_json(const nlohmann::json& j);
/// Compact dump of to_json; stable across runs, used for fingerprints.
std::string canonical_json(const GroupFunction& f);

}  // namespace fsos
