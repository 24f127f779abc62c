#pragma once

#include <vector>

#include "qtorus/multi_index.hpp"

namespace qtorus {

// Real skew-symmetric d x d matrix defining U_k U_j = e^{2 pi i theta_kj} U_j U_k.
class ThetaMatrix {
 public:
  // Row-major entries; rejects non-square or non-skew input.
  ThetaMatrix(int d, std::vector<double> row_major);
  static ThetaMatrix zero(int d);
  // theta_kj = t for k > j and -t for k < j.
  static ThetaMatrix uniform(int d, double t);
  static ThetaMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return d_; }
  double operator()(int k, int j) const { return entries_[k * d_ + j]; }
  const std::vector<double>& entries() const { return entries_; }
  bool is_commutative() const;

  // sigma(m, n) with U^m U^n = e^{i sigma} U^{m+n}.
  double product_phase(const MultiIndex& m, const MultiIndex& n) const;
  // rho(m) with (U^m)^* = e^{i rho} U^{-m}.
  double adjoint_phase(const MultiIndex& m) const { return product_phase(m, m); }
  // theta-tilde: -2 pi theta_jl for j < l, zero elsewhere.
  double tilde(int j, int l) const;

  friend bool operator==(const ThetaMatrix& a, const ThetaMatrix& b) {
    return a.d_ == b.d_ && a.entries_ == b.entries_;
  }

 private:
  int d_ = 0;
  std::vector<double> entries_;
};

}  // namespace qtorus
