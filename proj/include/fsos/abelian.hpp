#pragma once

// Finite abelian groups G = Z_{d1} x ... x Z_{dn}, their characters, and the
// Fourier transform on G.
//
// Dense tables are indexed in mixed-radix order with coordinate 1 varying
// fastest: index(g) = g1 + d1*(g2 + d2*(g3 + ...)). The same order is used for
// character labels. The forward transform carries the 1/|G| factor:
//
//   fhat(a) = (1/|G|) sum_g f(g) conj(chi_a(g)),   f(g) = sum_a fhat(a) chi_a(g),
//
// with chi_a(g) = prod_j exp(2 pi i a_j g_j / d_j).

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fsos {

using Complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultDenseCap = std::uint64_t{1} << 24;

/// Largest |G| for which whole-group enumeration is allowed. Reads the
/// FSOS_DENSE_CAP environment variable on every call; falls back to 2^24.
std::uint64_t dense_cap();

/// A point of G, one residue per cyclic factor.
struct GroupElement {
  std::vector<int> coords;

  bool operator==(const GroupElement&) const = default;
};

/// A character label a in G^ (isomorphic to G).
struct DualIndex {
  std::vector<int> exps;

  /// Sum of the exponents, each taken in [0, d_j).
  int degree() const;
  bool operator==(const DualIndex&) const = default;
};

/// Orders labels by mixed-radix index (last coordinate most significant).
struct MixedRadixLess {
  bool operator()(const DualIndex& a, const DualIndex& b) const;
  bool operator()(const GroupElement& a, const GroupElement& b) const;
};

struct DualIndexHash {
  std::size_t operator()(const DualIndex& a) const noexcept;
};

class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<int> orders);

  /// C_d^n.
  static GroupSpec power(int d, std::size_t n);

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  int order(std::size_t j) const { return orders_[j]; }

  /// |G|, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const { return size_; }
  double log2_size() const { return log2_size_; }

  bool is_elementary_two_group() const;
  bool dense_allowed() const;
  /// |G| as an index bound; throws kCapExceeded above dense_cap().
  std::size_t dense_size() const;

  void check(const GroupElement& g) const;
  void check(const DualIndex& a) const;

  DualIndex identity() const;
  GroupElement origin() const;
  /// The degree-one character of coordinate j (exponent 1 at j, 0 elsewhere).
  DualIndex unit(std::size_t j) const;

  std::uint64_t index_of(const GroupElement& g) const;
  std::uint64_t index_of(const DualIndex& a) const;
  GroupElement element_at(std::uint64_t index) const;
  DualIndex dual_at(std::uint64_t index) const;

  std::string to_string() const;

  bool operator==(const GroupSpec& other) const { return orders_ == other.orders_; }

 private:
  std::vector<int> orders_;
  std::optional<std::uint64_t> size_;
  double log2_size_ = 0.0;
};

/// exp(2 pi i k / d), exact at multiples of a quarter turn.
Complex root_of_unity(int d, long long k);

Complex char_eval(const GroupSpec& spec, const DualIndex& alpha, const GroupElement& g);

DualIndex dual_combine(const GroupSpec& spec, const DualIndex& a, const DualIndex& b);
DualIndex dual_inverse(const GroupSpec& spec, const DualIndex& a);

/// Forward transform of a dense value table (length |G|), 1/|G| normalization.
std::vector<Complex> fft(const GroupSpec& spec, std::span<const Complex> table);
/// Inverse of fft: evaluates sum_a c(a) chi_a(g) at every g.
std::vector<Complex> ifft(const GroupSpec& spec, std::span<const Complex> coeffs);

/// In-place variants used by callers that manage their own buffers.
void fft_inplace(const GroupSpec& spec, std::span<Complex> data);
void ifft_inplace(const GroupSpec& spec, std::span<Complex> data);

}  // namespace fsos
