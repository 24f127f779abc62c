#pragma once

#include <vector>

namespace qtorus {

// Composite Simpson rule for integrals over (0, 1] against dw/w, where w is
// eps (eps-parametrized semigroups) or 1 - r (circular semigroups). The rule is
// uniform in t = -log w on [0, -log w_min]; the part below w_min is handled by
// the caller through an analytic tail.
struct QuadratureNode {
  double param;   // eps, or r = 1 - w
  double w;       // eps, or 1 - r
  double weight;  // Simpson weight in t
};

class QuadratureGrid {
 public:
  enum class Variable { kEps, kRadius };

  QuadratureGrid(Variable variable, double w_min, int points);
  static QuadratureGrid eps(double eps_min = 1e-6, int points = 129);
  static QuadratureGrid radius(double one_minus_r_min = 1e-6, int points = 129);

  Variable variable() const { return variable_; }
  double w_min() const { return w_min_; }
  int points() const { return points_; }
  std::vector<QuadratureNode> nodes() const;
  // Twice as fine; every old node is a node of the refined grid (index 2i).
  QuadratureGrid refined() const;

 private:
  Variable variable_;
  double w_min_;
  int points_;
};

struct QuadControl {
  int points = 129;
  double w_min = 1e-6;
  double rel_tol = 1e-4;
  int max_refinements = 3;
  bool refine = true;
};

// Simpson rule on [a, b] with an odd number of uniform nodes (returned weights).
std::vector<double> simpson_weights(double a, double b, int points);

}  // namespace qtorus
