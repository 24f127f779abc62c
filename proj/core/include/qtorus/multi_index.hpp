#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace qtorus {

// Frequency m in Z^d, stored inline. Dimensions up to kMaxDim are supported.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxDim = 8;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t d);
  MultiIndex(std::initializer_list<int> values);
  static MultiIndex from(std::span<const int> values);
  static MultiIndex unit(std::size_t d, std::size_t j);

  std::size_t size() const { return d_; }
  int operator[](std::size_t j) const { return v_[j]; }
  int& operator[](std::size_t j) { return v_[j]; }
  const int* begin() const { return v_.data(); }
  const int* end() const { return v_.data() + d_; }

  bool is_zero() const;
  long long norm_sq() const;
  double norm() const { return std::sqrt(static_cast<double>(norm_sq())); }
  int max_abs() const;
  long long l1() const;
  std::string str() const;

  MultiIndex operator-() const;
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b);
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<int, kMaxDim> v_{};
  std::uint8_t d_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const;
};

}  // namespace qtorus
