#include "qtorus/quadrature.hpp"

#include <cmath>

#include "qtorus/error.hpp"

namespace qtorus {

std::vector<double> simpson_weights(double a, double b, int points) {
  if (points < 3 || points % 2 == 0) throw DomainError("Simpson rule needs an odd number (>= 3) of nodes");
  const double h = (b - a) / (points - 1);
  std::vector<double> w(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) w[i] = (i == 0 || i == points - 1 ? 1.0 : (i % 2 ? 4.0 : 2.0)) * h / 3.0;
  return w;
}

QuadratureGrid::QuadratureGrid(Variable variable, double w_min, int points)
    : variable_(variable), w_min_(w_min), points_(points) {
  if (!(w_min > 0.0 && w_min < 1.0)) throw DomainError("quadrature lower limit must lie in (0, 1)");
  if (points < 3 || points % 2 == 0) throw DomainError("quadrature needs an odd number (>= 3) of nodes");
}

QuadratureGrid QuadratureGrid::eps(double eps_min, int points) { return {Variable::kEps, eps_min, points}; }

QuadratureGrid QuadratureGrid::radius(double one_minus_r_min, int points) {
  return {Variable::kRadius, one_minus_r_min, points};
}

std::vector<QuadratureNode> QuadratureGrid::nodes() const {
  const double t_max = -std::log(w_min_);
  std::vector<double> wts = simpson_weights(0.0, t_max, points_);
  std::vector<QuadratureNode> out(static_cast<std::size_t>(points_));
  for (int i = 0; i < points_; ++i) {
    // Node i sits at t = t_max * i / (points - 1); refinement keeps these exact.
    const double t = t_max * static_cast<double>(i) / static_cast<double>(points_ - 1);
    const double w = std::exp(-t);
    out[i] = {variable_ == Variable::kEps ? w : -std::expm1(-t), w, wts[i]};
  }
  return out;
}

QuadratureGrid QuadratureGrid::refined() const { return {variable_, w_min_, 2 * points_ - 1}; }

}  // namespace qtorus
