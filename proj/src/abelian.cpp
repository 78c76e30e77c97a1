#include "fsos/abelian.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "fsos/error.hpp"

namespace fsos {

std::uint64_t dense_cap() {
  if (const char* env = std::getenv("FSOS_DENSE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultDenseCap;
}

int DualIndex::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

namespace {

template <typename V>
bool mixed_radix_less(const V& a, const V& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t j = a.size(); j-- > 0;) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return false;
}

[[noreturn]] void mismatch(const std::string& what) {
  throw Error(ErrorKind::kDimensionMismatch, what);
}

}  // namespace

bool MixedRadixLess::operator()(const DualIndex& a, const DualIndex& b) const {
  return mixed_radix_less(a.exps, b.exps);
}

bool MixedRadixLess::operator()(const GroupElement& a, const GroupElement& b) const {
  return mixed_radix_less(a.coords, b.coords);
}

std::size_t DualIndexHash::operator()(const DualIndex& a) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int e : a.exps) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupSpec::GroupSpec(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw Error(ErrorKind::kInvalidArgument, "group must have at least one factor");
  std::uint64_t size = 1;
  bool overflow = false;
  for (int d : orders_) {
    if (d < 2) throw Error(ErrorKind::kInvalidArgument, "cyclic factor order must be >= 2, got " + std::to_string(d));
    log2_size_ += std::log2(static_cast<double>(d));
    if (!overflow && size > UINT64_MAX / static_cast<std::uint64_t>(d)) overflow = true;
    if (!overflow) size *= static_cast<std::uint64_t>(d);
  }
  if (!overflow) size_ = size;
}

GroupSpec GroupSpec::power(int d, std::size_t n) { return GroupSpec(std::vector<int>(n, d)); }

bool GroupSpec::is_elementary_two_group() const {
  for (int d : orders_) {
    if (d != 2) return false;
  }
  return true;
}

bool GroupSpec::dense_allowed() const { return size_.has_value() && *size_ <= dense_cap(); }

std::size_t GroupSpec::dense_size() const {
  if (!dense_allowed()) {
    throw Error(ErrorKind::kCapExceeded, "group " + to_string() + " exceeds the dense enumeration cap of " +
                                             std::to_string(dense_cap()) + " points");
  }
  return static_cast<std::size_t>(*size_);
}

void GroupSpec::check(const GroupElement& g) const {
  if (g.coords.size() != orders_.size()) {
    mismatch("group element has " + std::to_string(g.coords.size()) + " coordinates, group has rank " +
             std::to_string(orders_.size()));
  }
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    if (g.coords[j] < 0 || g.coords[j] >= orders_[j]) {
      mismatch("coordinate " + std::to_string(j + 1) + " of group element out of range");
    }
  }
}

void GroupSpec::check(const DualIndex& a) const {
  if (a.exps.size() != orders_.size()) {
    mismatch("character label has " + std::to_string(a.exps.size()) + " exponents, group has rank " +
             std::to_string(orders_.size()));
  }
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    if (a.exps[j] < 0 || a.exps[j] >= orders_[j]) {
      mismatch("exponent " + std::to_string(j + 1) + " of character label out of range");
    }
  }
}

DualIndex GroupSpec::identity() const { return DualIndex{std::vector<int>(orders_.size(), 0)}; }

GroupElement GroupSpec::origin() const { return GroupElement{std::vector<int>(orders_.size(), 0)}; }

DualIndex GroupSpec::unit(std::size_t j) const {
  DualIndex a = identity();
  a.exps.at(j) = 1;
  return a;
}

namespace {

template <typename V>
std::uint64_t mixed_radix_index(const std::vector<int>& orders, const V& v) {
  std::uint64_t idx = 0;
  for (std::size_t j = orders.size(); j-- > 0;) {
    idx = idx * static_cast<std::uint64_t>(orders[j]) + static_cast<std::uint64_t>(v[j]);
  }
  return idx;
}

std::vector<int> mixed_radix_digits(const std::vector<int>& orders, std::uint64_t index) {
  std::vector<int> digits(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j) {
    digits[j] = static_cast<int>(index % static_cast<std::uint64_t>(orders[j]));
    index /= static_cast<std::uint64_t>(orders[j]);
  }
  return digits;
}

}  // namespace

std::uint64_t GroupSpec::index_of(const GroupElement& g) const {
  check(g);
  if (!size_) throw Error(ErrorKind::kCapExceeded, "group too large for a 64-bit index");
  return mixed_radix_index(orders_, g.coords);
}

std::uint64_t GroupSpec::index_of(const DualIndex& a) const {
  check(a);
  if (!size_) throw Error(ErrorKind::kCapExceeded, "group too large for a 64-bit index");
  return mixed_radix_index(orders_, a.exps);
}

GroupElement GroupSpec::element_at(std::uint64_t index) const {
  if (!size_ || index >= *size_) throw Error(ErrorKind::kInvalidArgument, "element index out of range");
  return GroupElement{mixed_radix_digits(orders_, index)};
}

DualIndex GroupSpec::dual_at(std::uint64_t index) const {
  if (!size_ || index >= *size_) throw Error(ErrorKind::kInvalidArgument, "character index out of range");
  return DualIndex{mixed_radix_digits(orders_, index)};
}

std::string GroupSpec::to_string() const {
  // Runs of equal orders print as powers: C2^10 x C3^2.
  std::string out;
  std::size_t j = 0;
  while (j < orders_.size()) {
    std::size_t run = 1;
    while (j + run < orders_.size() && orders_[j + run] == orders_[j]) ++run;
    if (!out.empty()) out += " x ";
    out += "C" + std::to_string(orders_[j]);
    if (run > 1) out += "^" + std::to_string(run);
    j += run;
  }
  return out;
}

namespace {

// exp(2 pi i * phase) for a phase in [0, 1), snapping quarter turns.
Complex unit_phase(long double phase) {
  const long double quarters = phase * 4.0L;
  const long double nearest = std::round(quarters);
  if (std::fabs(quarters - nearest) < 1e-13L) {
    switch (static_cast<int>(nearest) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const long double angle = 2.0L * std::numbers::pi_v<long double> * phase;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace

Complex root_of_unity(int d, long long k) {
  long long r = k % d;
  if (r < 0) r += d;
  return unit_phase(static_cast<long double>(r) / static_cast<long double>(d));
}

Complex char_eval(const GroupSpec& spec, const DualIndex& alpha, const GroupElement& g) {
  spec.check(alpha);
  spec.check(g);
  long double phase = 0.0L;
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    const int d = spec.order(j);
    const long long r = (static_cast<long long>(alpha.exps[j]) * g.coords[j]) % d;
    phase += static_cast<long double>(r) / static_cast<long double>(d);
  }
  phase -= std::floor(phase);
  return unit_phase(phase);
}

DualIndex dual_combine(const GroupSpec& spec, const DualIndex& a, const DualIndex& b) {
  spec.check(a);
  spec.check(b);
  DualIndex out{std::vector<int>(spec.rank())};
  for (std::size_t j = 0; j < spec.rank(); ++j) out.exps[j] = (a.exps[j] + b.exps[j]) % spec.order(j);
  return out;
}

DualIndex dual_inverse(const GroupSpec& spec, const DualIndex& a) {
  spec.check(a);
  DualIndex out{std::vector<int>(spec.rank())};
  for (std::size_t j = 0; j < spec.rank(); ++j) out.exps[j] = (spec.order(j) - a.exps[j]) % spec.order(j);
  return out;
}

namespace {

// One pass of length-d DFTs along every axis; sign = -1 forward, +1 inverse.
void transform_axes(const GroupSpec& spec, std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  std::size_t stride = 1;
  std::vector<Complex> scratch;
  std::vector<Complex> roots;
  for (std::size_t axis = 0; axis < spec.rank(); ++axis) {
    const auto d = static_cast<std::size_t>(spec.order(axis));
    const std::size_t block = stride * d;
    if (d == 2) {
      for (std::size_t base = 0; base < n; base += block) {
        for (std::size_t s = 0; s < stride; ++s) {
          Complex& x0 = data[base + s];
          Complex& x1 = data[base + s + stride];
          const Complex a = x0;
          x0 = a + x1;
          x1 = a - x1;
        }
      }
    } else {
      roots.resize(d);
      for (std::size_t k = 0; k < d; ++k) roots[k] = root_of_unity(static_cast<int>(d), sign * static_cast<long long>(k));
      scratch.resize(d);
      for (std::size_t base = 0; base < n; base += block) {
        for (std::size_t s = 0; s < stride; ++s) {
          for (std::size_t k = 0; k < d; ++k) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < d; ++t) acc += data[base + s + t * stride] * roots[(k * t) % d];
            scratch[k] = acc;
          }
          for (std::size_t k = 0; k < d; ++k) data[base + s + k * stride] = scratch[k];
        }
      }
    }
    stride = block;
  }
}

void check_length(const GroupSpec& spec, std::size_t length) {
  const std::size_t n = spec.dense_size();
  if (length != n) {
    mismatch("table length " + std::to_string(length) + " does not match |G| = " + std::to_string(n));
  }
}

}  // namespace

void fft_inplace(const GroupSpec& spec, std::span<Complex> data) {
  check_length(spec, data.size());
  transform_axes(spec, data, -1);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (Complex& x : data) x *= scale;
}

void ifft_inplace(const GroupSpec& spec, std::span<Complex> data) {
  check_length(spec, data.size());
  transform_axes(spec, data, +1);
}

std::vector<Complex> fft(const GroupSpec& spec, std::span<const Complex> table) {
  std::vector<Complex> out(table.begin(), table.end());
  fft_inplace(spec, out);
  return out;
}

std::vector<Complex> ifft(const GroupSpec& spec, std::span<const Complex> coeffs) {
  std::vector<Complex> out(coeffs.begin(), coeffs.end());
  ifft_inplace(spec, out);
  return out;
}

}  // namespace fsos
