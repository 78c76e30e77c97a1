#include "fsos/generators.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fsos/error.hpp"

namespace fsos {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void shift_to_zero(GeneratedFunction& g) {
  if (!g.f.spec().dense_allowed()) {
    spdlog::warn("group {} exceeds the dense cap; leaving the function unshifted", g.f.spec().to_string());
    return;
  }
  const MinimumPoint mp = brute_force_min(g.f);
  g.f.add_term(g.f.spec().identity(), -std::round(mp.value));
  g.shifted = true;
}

}  // namespace

GeneratedFunction gen_random_c2(int n, int max_degree, std::size_t max_sparsity, int coeff_bound, std::uint64_t seed,
                                bool shift) {
  if (n < 1 || max_degree < 1 || coeff_bound < 0) {
    throw Error(ErrorKind::kInvalidArgument, "need n >= 1, max_degree >= 1 and coeff_bound >= 0");
  }
  const int top = std::min(max_degree, n);
  std::vector<double> weights;
  double available = 0.0;
  for (int j = 1; j <= top; ++j) {
    weights.push_back(binomial(n, j));
    available += weights.back();
  }
  if (static_cast<double>(max_sparsity) > available) {
    throw Error(ErrorKind::kInvalidArgument, "sparsity " + std::to_string(max_sparsity) + " exceeds the " +
                                                 std::to_string(static_cast<long long>(available)) +
                                                 " available characters");
  }
  const GroupSpec spec = GroupSpec::power(2, static_cast<std::size_t>(n));
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> pick_degree(weights.begin(), weights.end());
  std::uniform_int_distribution<int> pick_coeff(-coeff_bound, coeff_bound);
  std::vector<int> vars(static_cast<std::size_t>(n));

  std::set<DualIndex, MixedRadixLess> chosen;
  GeneratedFunction out{GroupFunction(spec), false, 0};
  while (chosen.size() < max_sparsity) {
    const int deg = pick_degree(rng) + 1;
    for (int i = 0; i < n; ++i) vars[static_cast<std::size_t>(i)] = i;
    std::shuffle(vars.begin(), vars.end(), rng);
    DualIndex a = spec.identity();
    for (int t = 0; t < deg; ++t) a.exps[static_cast<std::size_t>(vars[static_cast<std::size_t>(t)])] = 1;
    if (!chosen.insert(a).second) continue;
    const int c = pick_coeff(rng);
    if (c != 0) out.f.add_term(a, static_cast<double>(c));
  }
  if (shift) shift_to_zero(out);
  out.m = static_cast<long long>(std::llround(out.f.l1_norm()));
  return out;
}

GeneratedFunction gen_random_c3(int n, std::size_t sparsity_floor, int h_bound, std::uint64_t seed, bool shift) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "the C_3 generator needs n >= 2");
  if (h_bound < 0) throw Error(ErrorKind::kInvalidArgument, "h_bound must be >= 0");
  const GroupSpec spec = GroupSpec::power(3, static_cast<std::size_t>(n));
  const GroupSpec block = GroupSpec::power(3, 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_value(0, h_bound);
  std::uniform_int_distribution<int> pick_var(0, n - 1);

  GeneratedFunction out{GroupFunction(spec), false, 0};
  do {
    std::vector<Complex> h(9);
    int hmax = 0;
    for (Complex& v : h) {
      const int x = pick_value(rng);
      hmax = std::max(hmax, x);
      v = static_cast<double>(x);
    }
    out.m += hmax;
    const int i = pick_var(rng);
    int j = pick_var(rng);
    while (j == i) j = pick_var(rng);
    const std::vector<Complex> coeffs = fft(block, h);
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      const DualIndex b = block.dual_at(idx);
      DualIndex a = spec.identity();
      a.exps[static_cast<std::size_t>(i)] = b.exps[0];
      a.exps[static_cast<std::size_t>(j)] = b.exps[1];
      out.f.add_term(a, coeffs[idx]);
    }
  } while (out.f.sparsity() <= sparsity_floor);
  if (shift) shift_to_zero(out);
  return out;
}

CnfFormula gen_random_2sat(int n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "2-CNF generation needs n >= 2");
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "2-CNF generation needs m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_var(1, n);
  std::bernoulli_distribution negate(0.5);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    const int a = pick_var(rng);
    int b = pick_var(rng);
    while (b == a) b = pick_var(rng);
    Clause cl;
    (negate(rng) ? cl.neg : cl.pos).push_back(a);
    (negate(rng) ? cl.neg : cl.pos).push_back(b);
    clauses.push_back(std::move(cl));
  }
  return CnfFormula(n, std::move(clauses));
}

}  // namespace fsos
