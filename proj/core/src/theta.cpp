#include "qtorus/theta.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qtorus/error.hpp"

namespace qtorus {

MultiIndex::MultiIndex(std::size_t d) : d_(static_cast<std::uint8_t>(d)) {
  if (d > kMaxDim) throw DomainError("dimension " + std::to_string(d) + " exceeds supported maximum");
}

MultiIndex::MultiIndex(std::initializer_list<int> values) : MultiIndex(values.size()) {
  std::copy(values.begin(), values.end(), v_.begin());
}

MultiIndex MultiIndex::from(std::span<const int> values) {
  MultiIndex m(values.size());
  std::copy(values.begin(), values.end(), m.v_.begin());
  return m;
}

MultiIndex MultiIndex::unit(std::size_t d, std::size_t j) {
  MultiIndex m(d);
  m.v_[j] = 1;
  return m;
}

bool MultiIndex::is_zero() const {
  return std::all_of(begin(), end(), [](int x) { return x == 0; });
}

long long MultiIndex::norm_sq() const {
  long long s = 0;
  for (int x : *this) s += static_cast<long long>(x) * x;
  return s;
}

int MultiIndex::max_abs() const {
  int r = 0;
  for (int x : *this) r = std::max(r, std::abs(x));
  return r;
}

long long MultiIndex::l1() const {
  long long s = 0;
  for (int x : *this) s += std::abs(x);
  return s;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < d_; ++j) os << (j ? "," : "") << v_[j];
  os << ')';
  return os.str();
}

MultiIndex MultiIndex::operator-() const {
  MultiIndex r(d_);
  for (std::size_t j = 0; j < d_; ++j) r.v_[j] = -v_[j];
  return r;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.d_);
  for (std::size_t j = 0; j < a.d_; ++j) r.v_[j] = a.v_[j] + b.v_[j];
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.d_);
  for (std::size_t j = 0; j < a.d_; ++j) r.v_[j] = a.v_[j] - b.v_[j];
  return r;
}

bool operator==(const MultiIndex& a, const MultiIndex& b) {
  return a.d_ == b.d_ && std::equal(a.begin(), a.end(), b.begin());
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.d_ <=> b.d_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t MultiIndexHash::operator()(const MultiIndex& m) const {
  std::size_t h = 1469598103934665603ull;
  for (int x : m) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 1099511628211ull;
  return h;
}

ThetaMatrix::ThetaMatrix(int d, std::vector<double> row_major) : d_(d), entries_(std::move(row_major)) {
  if (d < 1 || static_cast<std::size_t>(d) > MultiIndex::kMaxDim)
    throw DomainError("dimension must be in [1, " + std::to_string(MultiIndex::kMaxDim) + "]");
  if (entries_.size() != static_cast<std::size_t>(d * d))
    throw DimensionMismatch("theta must have d*d entries");
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      double a = entries_[k * d + j];
      double b = entries_[j * d + k];
      if (!std::isfinite(a)) throw DomainError("theta entries must be finite");
      if (std::abs(a + b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw DomainError("theta is not skew-symmetric at (" + std::to_string(k + 1) + "," +
                          std::to_string(j + 1) + ")");
    }
  }
  // Store an exactly skew matrix.
  for (int k = 0; k < d; ++k) {
    entries_[k * d + k] = 0.0;
    for (int j = 0; j < k; ++j) entries_[j * d + k] = -entries_[k * d + j];
  }
}

ThetaMatrix ThetaMatrix::zero(int d) {
  return ThetaMatrix(d, std::vector<double>(static_cast<std::size_t>(d * d), 0.0));
}

ThetaMatrix ThetaMatrix::uniform(int d, double t) {
  std::vector<double> e(static_cast<std::size_t>(d * d), 0.0);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) e[k * d + j] = k > j ? t : (k < j ? -t : 0.0);
  return ThetaMatrix(d, std::move(e));
}

ThetaMatrix ThetaMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  int d = static_cast<int>(rows.size());
  std::vector<double> e;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != d) throw DimensionMismatch("theta must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return ThetaMatrix(d, std::move(e));
}

bool ThetaMatrix::is_commutative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double x) { return x == 0.0; });
}

double ThetaMatrix::product_phase(const MultiIndex& m, const MultiIndex& n) const {
  double s = 0.0;
  for (int a = 1; a < d_; ++a) {
    if (m[a] == 0) continue;
    double row = 0.0;
    for (int b = 0; b < a; ++b) row += entries_[a * d_ + b] * n[b];
    s += m[a] * row;
  }
  return 2.0 * std::numbers::pi * s;
}

double ThetaMatrix::tilde(int j, int l) const {
  return j < l ? -2.0 * std::numbers::pi * entries_[j * d_ + l] : 0.0;
}

}  // namespace qtorus
