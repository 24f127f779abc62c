#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qtorus/element.hpp"

namespace qtorus::testing {

inline constexpr double kPi = std::numbers::pi;

// Clock and shift matrices of size n with U_2 U_1 = e^{2 pi i t} U_1 U_2 for t = k / n,
// a finite-dimensional representation of the d = 2 algebra at rational theta.
struct ClockShift {
  int n;
  Eigen::MatrixXcd clock, shift;

  ClockShift(int n_, int k) : n(n_), clock(Eigen::MatrixXcd::Zero(n_, n_)), shift(Eigen::MatrixXcd::Zero(n_, n_)) {
    const std::complex<double> w = std::polar(1.0, -2.0 * kPi * k / n);
    for (int j = 0; j < n; ++j) {
      clock(j, j) = std::pow(w, j);
      shift((j + 1) % n, j) = 1.0;
    }
  }

  static Eigen::MatrixXcd power(const Eigen::MatrixXcd& a, int e) {
    Eigen::MatrixXcd base = e >= 0 ? a : Eigen::MatrixXcd(a.adjoint());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    for (int i = 0; i < std::abs(e); ++i) out = out * base;
    return out;
  }

  // U^m = U_1^{m_1} U_2^{m_2}.
  Eigen::MatrixXcd rep(const QElement& x) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (const Term& t : x.terms()) out += t.c * power(clock, t.m[0]) * power(shift, t.m[1]);
    return out;
  }
};

// Samples of a d = 1 trigonometric polynomial on a uniform grid of the circle.
inline std::vector<std::complex<double>> circle_values(const QElement& x, int points) {
  std::vector<std::complex<double>> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / points;
    std::complex<double> s = 0.0;
    for (const Term& term : x.terms()) s += term.c * std::polar(1.0, 2.0 * kPi * term.m[0] * t);
    v[static_cast<std::size_t>(i)] = s;
  }
  return v;
}

// Scalar L_p norm on the circle: periodic trapezoid rule for finite p, dense max plus
// golden-section refinement for p = inf.
inline double circle_lp_norm(const QElement& x, double p, int points = 1 << 15) {
  auto value = [&](double t) {
    std::complex<double> s = 0.0;
    for (const Term& term : x.terms()) s += term.c * std::polar(1.0, 2.0 * kPi * term.m[0] * t);
    return std::abs(s);
  };
  const auto v = circle_values(x, points);
  if (std::isinf(p)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    double a = (static_cast<double>(best) - 1.0) / points, b = (static_cast<double>(best) + 1.0) / points;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
      const double c = b - g * (b - a), d = a + g * (b - a);
      if (value(c) > value(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    return std::max(std::abs(v[best]), value(0.5 * (a + b)));
  }
  double acc = 0.0;
  for (const auto& z : v) acc += std::pow(std::abs(z), p);
  return std::pow(acc / points, 1.0 / p);
}

}  // namespace qtorus::testing
