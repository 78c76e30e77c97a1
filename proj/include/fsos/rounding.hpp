#pragma once

// Candidate minimizers from a Gram matrix (nullspace, Stickelberger) or from a moment matrix.
// A null vector of an exact Gram matrix at a zero g of f is v_S(g) = (chi(g))_{chi in S}; its
// entries at the unit characters are the coordinates z_i(g), read off after scaling chi0 to 1.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fsos/gram.hpp"

namespace fsos {

enum class RoundingMethod { kGramNull, kStickelberger, kMoment };

std::string to_string(RoundingMethod m);

struct Candidate {
  GroupElement point;
  double value = 0.0;
  bool low_confidence = false;
};

struct RoundedSolution {
  RoundingMethod method = RoundingMethod::kGramNull;
  std::vector<Candidate> candidates;
  /// Index into candidates of the smallest value.
  std::size_t best = 0;
  double achieved = 0.0;
  /// achieved - bound; NaN when no bound was supplied.
  double gap = std::numeric_limits<double>::quiet_NaN();
  std::size_t corank = 0;
};

/// Nearest root of unity per coordinate: g_j = round(arg(x_j) d_j / 2pi) mod d_j. Zero maps to 0.
/// low_confidence is set when some |x_j| < 0.5.
GroupElement decode_coordinates(const GroupSpec& spec, const std::vector<Complex>& x, bool* low_confidence = nullptr);

/// Null vector of Q - min(lambda_min, 0) I with the largest chi0 entry, scaled to chi0 = 1 and decoded.
RoundedSolution gram_null_round(const HermitianMatrix& q, const GroupFunction& f,
                                double bound = std::numeric_limits<double>::quiet_NaN());

/// Orthonormal basis of the numerical nullspace of Q - min(lambda_min, 0) I.
Eigen::MatrixXcd gram_nullspace(const HermitianMatrix& q);

/// Matrix of multiplication by l = sum_i c_i z_i on the span of the basis columns, by least squares
/// over the rows chi of S with every z_i chi (c_i != 0) in S.
Eigen::MatrixXcd multiplication_matrix(const SupportSet& s, const Eigen::MatrixXcd& basis, const std::vector<double>& c);

/// Eigenvectors of a multiplication matrix give the points; l is random (seeded) unless given.
RoundedSolution stickelberger_round(const HermitianMatrix& q, const GroupFunction& f, std::uint64_t seed = 0,
                                    double bound = std::numeric_limits<double>::quiet_NaN(),
                                    std::optional<std::vector<double>> coefficients = std::nullopt);

/// Rank-one approximation mu u u* of H; x_i = mu u[chi0] conj(u[z_i]).
RoundedSolution moment_round(const HermitianMatrix& h, const GroupFunction& f,
                             double bound = std::numeric_limits<double>::quiet_NaN());

/// Smallest achieved value; ties go to the earlier method, then the earlier list entry.
RoundedSolution best_candidate(const GroupFunction& f, const std::vector<RoundedSolution>& solutions);

}  // namespace fsos
