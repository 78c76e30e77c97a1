#include "fsos/gfunc.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fsos/error.hpp"

namespace fsos {

GroupFunction::GroupFunction(GroupSpec spec, double prune) : spec_(std::move(spec)), prune_(prune) {}

GroupFunction::GroupFunction(GroupSpec spec, Terms terms, double prune)
    : spec_(std::move(spec)), prune_(prune) {
  for (auto& [alpha, c] : terms) {
    spec_.check(alpha);
    if (std::abs(c) >= prune_) terms_.emplace(alpha, c);
  }
}

GroupFunction GroupFunction::constant(const GroupSpec& spec, Complex c) {
  GroupFunction f(spec);
  f.add_term(spec.identity(), c);
  return f;
}

GroupFunction GroupFunction::monomial(const GroupSpec& spec, const DualIndex& alpha, Complex c) {
  GroupFunction f(spec);
  f.add_term(alpha, c);
  return f;
}

Complex GroupFunction::coefficient(const DualIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

bool GroupFunction::is_real(double tol) const {
  for (const auto& [alpha, c] : terms_) {
    const Complex mirror = coefficient(dual_inverse(spec_, alpha));
    if (std::abs(mirror - std::conj(c)) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

int GroupFunction::degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : terms_) deg = std::max(deg, alpha.degree());
  return deg;
}

double GroupFunction::l1_norm() const {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += std::abs(c);
  return s;
}

void GroupFunction::add_term(const DualIndex& alpha, Complex c) {
  spec_.check(alpha);
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < prune_) terms_.erase(it);
}

void GroupFunction::require_same_group(const GroupFunction& other) const {
  if (!(spec_ == other.spec_)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "functions live on different groups: " + spec_.to_string() + " vs " + other.spec_.to_string());
  }
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& other) {
  require_same_group(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

GroupFunction& GroupFunction::operator-=(const GroupFunction& other) {
  require_same_group(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

GroupFunction& GroupFunction::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < prune_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

GroupFunction from_table(const GroupSpec& spec, std::span<const Complex> table, double prune) {
  const std::vector<Complex> coeffs = fft(spec, table);
  GroupFunction f(spec, prune);
  GroupFunction::Terms terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::abs(coeffs[i]) >= prune) terms.emplace_hint(terms.end(), spec.dual_at(i), coeffs[i]);
  }
  return GroupFunction(spec, std::move(terms), prune);
}

std::vector<Complex> to_table(const GroupFunction& f) {
  const GroupSpec& spec = f.spec();
  std::vector<Complex> data(spec.dense_size());
  for (const auto& [alpha, c] : f.terms()) data[spec.index_of(alpha)] = c;
  ifft_inplace(spec, data);
  return data;
}

std::vector<double> real_table(const GroupFunction& f) {
  const std::vector<Complex> t = to_table(f);
  std::vector<double> out(t.size());
  std::transform(t.begin(), t.end(), out.begin(), [](Complex z) { return z.real(); });
  return out;
}

Complex evaluate(const GroupFunction& f, const GroupElement& g) {
  f.spec().check(g);
  Complex acc = 0.0;
  for (const auto& [alpha, c] : f.terms()) acc += c * char_eval(f.spec(), alpha, g);
  return acc;
}

GroupFunction multiply(const GroupFunction& f, const GroupFunction& h, std::size_t max_terms) {
  if (!(f.spec() == h.spec())) {
    throw Error(ErrorKind::kDimensionMismatch, "cannot multiply functions on different groups");
  }
  const GroupSpec& spec = f.spec();
  std::unordered_map<DualIndex, Complex, DualIndexHash> acc;
  DualIndex gamma{std::vector<int>(spec.rank())};
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : h.terms()) {
      for (std::size_t j = 0; j < spec.rank(); ++j) gamma.exps[j] = (a.exps[j] + b.exps[j]) % spec.order(j);
      acc[gamma] += ca * cb;
      if (acc.size() > max_terms) {
        throw Error(ErrorKind::kCapExceeded,
                    "product exceeds " + std::to_string(max_terms) + " Fourier terms");
      }
    }
  }
  GroupFunction::Terms terms;
  for (auto& [alpha, c] : acc) {
    if (std::abs(c) >= f.prune_threshold()) terms.emplace(alpha, c);
  }
  return GroupFunction(spec, std::move(terms), f.prune_threshold());
}

MinimumPoint brute_force_min(const GroupFunction& f) {
  if (!f.is_real()) throw Error(ErrorKind::kInvalidArgument, "brute_force_min requires a real-valued function");
  const std::vector<Complex> table = to_table(f);
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].real() < table[best].real()) best = i;
  }
  return MinimumPoint{table[best].real(), f.spec().element_at(best)};
}

bool is_integer_valued(const GroupFunction& f, double tol) {
  for (Complex v : to_table(f)) {
    if (std::abs(v.imag()) > tol || std::abs(v.real() - std::round(v.real())) > tol) return false;
  }
  return true;
}

nlohmann::json to_json(const GroupFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [alpha, c] : f.terms()) {
    terms.push_back({{"exps", alpha.exps}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"orders", f.spec().orders()}, {"terms", std::move(terms)}};
}

GroupFunction function_from_json(const nlohmann::json& j) {
  try {
    GroupSpec spec(j.at("orders").get<std::vector<int>>());
    GroupFunction f(spec);
    for (const auto& t : j.at("terms")) {
      DualIndex alpha{t.at("exps").get<std::vector<int>>()};
      const double re = t.at("re").get<double>();
      const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
      f.add_term(alpha, Complex(re, im));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string("malformed function JSON: ") + e.what());
  }
}

std::string canonical_json(const GroupFunction& f) { return to_json(f).dump(); }

}  // namespace fsos
