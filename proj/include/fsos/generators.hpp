#pragma once

// Seeded random instances: sparse integer polynomials on C_2^n, sums of lifted C_3^2
// functions on C_3^n, and random 2-CNF formulas.

#include <cstdint>

#include "fsos/cnf.hpp"
#include "fsos/gfunc.hpp"

namespace fsos {

struct GeneratedFunction {
  GroupFunction f;
  /// True when the constant term was set so that min f = 0.
  bool shifted = false;
  /// Upper end of the value range suggested for support selection.
  long long m = 0;
};

/// Distinct non-constant characters of degree <= max_degree drawn uniformly, each with an
/// integer coefficient uniform in [-coeff_bound, coeff_bound] (zero draws are dropped).
/// m is the sum of |coefficients| after the shift.
GeneratedFunction gen_random_c2(int n, int max_degree, std::size_t max_sparsity, int coeff_bound, std::uint64_t seed,
                                bool shift = true);

/// Adds h o tau for random h: C_3^2 -> {0..h_bound} and random coordinate pairs tau until the
/// sparsity exceeds sparsity_floor. m is the sum of max h over the blocks.
GeneratedFunction gen_random_c3(int n, std::size_t sparsity_floor, int h_bound, std::uint64_t seed, bool shift = true);

/// m clauses on two distinct uniform variables with uniform polarities; duplicates are kept.
CnfFormula gen_random_2sat(int n, std::size_t m, std::uint64_t seed);

}  // namespace fsos
