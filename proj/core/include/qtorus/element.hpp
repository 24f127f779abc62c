#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "qtorus/multi_index.hpp"
#include "qtorus/theta.hpp"

namespace qtorus {

using Complex = std::complex<double>;

struct Term {
  MultiIndex m;
  Complex c;
};

// Finitely supported polynomial sum_m c_m U^m in the quantum torus algebra.
// Terms are kept sorted by frequency; coefficients with modulus <= prune_tol
// are never stored.
class QElement {
 public:
  explicit QElement(ThetaMatrix theta, double prune_tol = 0.0);
  QElement(std::shared_ptr<const ThetaMatrix> theta, double prune_tol = 0.0);
  QElement(std::shared_ptr<const ThetaMatrix> theta, std::vector<Term> terms,
           double prune_tol = 0.0);

  const ThetaMatrix& theta() const { return *theta_; }
  const std::shared_ptr<const ThetaMatrix>& theta_ptr() const { return theta_; }
  int dim() const { return theta_->dim(); }
  double prune_tol() const { return prune_tol_; }

  std::span<const Term> terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Complex coeff(const MultiIndex& m) const;
  Complex mean() const;
  // max_j |m_j| over the support; 0 for the zero element.
  int degree() const;
  double max_frequency_norm() const;
  double l2_norm() const;

  // Same algebra, different coefficients. Terms may be unsorted or repeated.
  QElement with_terms(std::vector<Term> terms) const;
  QElement zero_like() const { return QElement(theta_, prune_tol_); }

  void check_compatible(const QElement& other) const;

 private:
  std::shared_ptr<const ThetaMatrix> theta_;
  std::vector<Term> terms_;
  double prune_tol_ = 0.0;
};

QElement monomial(const ThetaMatrix& theta, const MultiIndex& m, Complex c = 1.0,
                  double prune_tol = 0.0);
QElement unit(const ThetaMatrix& theta);

QElement operator+(const QElement& a, const QElement& b);
QElement operator-(const QElement& a, const QElement& b);
QElement operator-(const QElement& a);
QElement operator*(Complex s, const QElement& a);
QElement operator*(const QElement& a, const QElement& b);

QElement multiply(const QElement& a, const QElement& b);
QElement adjoint(const QElement& a);
QElement linear_combine(std::span<const std::pair<Complex, QElement>> items);
// Normalized trace tau(x) = x^(0).
Complex trace(const QElement& a);
// tau(b^* a) = sum a^(m) conj(b^(m)).
Complex inner_product(const QElement& a, const QElement& b);
// Coefficient-wise map c -> f(m, c); zero results are dropped.
QElement map_coefficients(const QElement& a,
                          const std::function<Complex(const MultiIndex&, Complex)>& f);

}  // namespace qtorus
