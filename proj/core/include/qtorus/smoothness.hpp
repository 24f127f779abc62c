#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtorus/element.hpp"
#include "qtorus/spaces.hpp"

namespace qtorus {

// Shifts u = rho * v for unit directions v and radial fractions rho in (0, 1].
// Directions always include the coordinate axes and the normalized all-ones vector.
// Antipodal directions are omitted because ||Delta_{-u}^k x||_p = ||Delta_u^k x||_p.
class DirectionGrid {
 public:
  static DirectionGrid standard(int d, int sphere_points = 64, int radial_points = 8);

  int dim() const { return d_; }
  int level() const { return level_; }
  const std::vector<std::vector<double>>& directions() const { return directions_; }
  const std::vector<double>& radial_fractions() const { return radial_; }
  // Twice as many sphere and radial points; contains every point of this grid.
  DirectionGrid refined() const;

 private:
  int d_ = 1;
  int sphere_points_ = 64;
  int level_ = 0;
  std::vector<std::vector<double>> directions_;
  std::vector<double> radial_;
};

struct SmoothnessOptions {
  NormOptions norm;
  int sphere_points = 64;
  int radial_points = 8;
  // Evaluate once more on the doubled grid and report the larger value.
  bool refine = true;
  double refine_tol = 0.01;
};

struct ModulusResult {
  double value = 0.0;
  double base_value = 0.0;
  // Relative increase from the base grid to the refined grid.
  double change = 0.0;
  bool stable = true;
};

// ||Delta_u^k x||_p.
double difference_norm(const QElement& x, const std::vector<double>& u, int k, double p, const NormOptions& opts = {});

// Grid lower bound for omega_p^k(x, eps) = sup_{0<|u|<=eps} ||Delta_u^k x||_p.
ModulusResult modulus(const QElement& x, int k, double eps, double p, const SmoothnessOptions& opts = {});

// omega_p^k(x, r_i) for ascending radii, using the radii themselves as radial grid.
std::vector<double> modulus_profile(const QElement& x, int k, double p, const std::vector<double>& radii,
                                    const SmoothnessOptions& opts = {});

// omega_p^k(x, eps) at the nodes of an eps quadrature grid (ascending eps), reusable
// across alpha and q.
struct ModulusSeries {
  int k = 1;
  double mean_abs = 0.0;
  std::vector<double> eps;
  std::vector<double> weight;  // quadrature weights in log eps
  std::vector<double> omega;
};
ModulusSeries modulus_series(const QElement& x, int k, double p, const QuadratureGrid& grid,
                             const SmoothnessOptions& opts = {});
NormResult besov_from_modulus(const ModulusSeries& s, double alpha, double q, bool include_mean = true);

// (|x^(0)|^q + int_0^1 eps^{-alpha q} omega_p^k(x,eps)^q deps/eps)^{1/q}; the mean term is
// dropped when include_mean is false. Requires 0 < alpha < k.
NormResult besov_diff_norm(const QElement& x, double alpha, double p, double q, int k, bool include_mean = true,
                           const SmoothnessOptions& opts = {});

enum class LimitEnd { kAlphaToK, kAlphaToZero };

struct LimitRow {
  double alpha = 0.0;
  double scaled = 0.0;
  double target = 0.0;
  double ratio = 0.0;
};

struct LimitTable {
  std::vector<LimitRow> rows;
  std::vector<double> successive_differences;
  bool cauchy_decreasing = false;
};

// alpha -> k: (k - alpha)^{1/q} ||x||_{B^{alpha,omega}_{p,q}} against q^{-1/q} |x|_{W^k_p}.
// alpha -> 0: alpha^{1/q} times the seminorm integrated over (0, inf), against q^{-1/q} ||x||_p.
LimitTable limit_scan(const QElement& x, int k, double p, double q, LimitEnd end, const std::vector<double>& alphas,
                      const SmoothnessOptions& opts = {});

struct LipschitzRow {
  double eps = 0.0;
  double quotient = 0.0;  // omega_p^k(x, eps) / eps^k
  double seminorm = 0.0;
  double ratio = 0.0;
};

struct LipschitzTable {
  std::vector<LipschitzRow> rows;
  bool increasing = true;
};

LipschitzTable lipschitz_ratio(const QElement& x, int k, double p, const std::vector<double>& eps_list,
                               const SmoothnessOptions& opts = {});

enum class KMode { kUpperCertificate, kL2Oracle, kEquivalence };

struct KFunctionalResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  nlohmann::json diagnostics = nlohmann::json::object();
};

// K(x, t; L_p, W^k_p). kUpperCertificate: ||y||_p + t ||x - y||_{W^k_p} for the averaged
// k-th difference y at eps = t^{1/k}. kL2Oracle (p = 2): K_2 with bracket [K_2, sqrt(2) K_2].
// kEquivalence (p = 2): (eps^k |x^(0)| + omega_2^k(x, eps)) / K_2.
KFunctionalResult k_functional(const QElement& x, double t, int k, double p, KMode mode,
                               const SmoothnessOptions& opts = {});
// Fourier symbol of the averaged difference (-1)^k int_{[0,1)^{dk}} Delta^k_{eps(u_1+..+u_k)} du.
Complex averaged_difference_symbol(const MultiIndex& m, double eps, int k);

struct MarchaudRow {
  int n = 1;
  int N = 2;
  double eps = 0.0;
  double lower_lhs = 0.0;  // 2^{n-N} omega^N
  double omega_n = 0.0;
  bool lower_ok = true;    // lower_lhs <= slack * omega_n
  double upper_rhs = 0.0;  // eps^n int_eps^inf omega^N(delta)/delta^n ddelta/delta
  double upper_constant = 0.0;
};

// Both Marchaud bounds for each (n, N) pair and eps. Moduli are evaluated once per order
// on a shared radius grid (the eps values plus a geometric grid up to sqrt(d)/2).
std::vector<MarchaudRow> marchaud_check(const QElement& x, const std::vector<std::pair<int, int>>& pairs, double p,
                                        const std::vector<double>& eps_list, const SmoothnessOptions& opts = {},
                                        double slack = 1.05);

// ||d_j x||_p against 2 sqrt(||x||_p ||d_j^2 x||_p).
std::pair<double, double> interpolation_sides(const QElement& x, int j, double p, const NormOptions& opts = {});
// ||x||_p against (2 pi^2 / (9 sqrt 3)) ||M_{m_j^2} x||_p for x supported on m_j != 0.
std::pair<double, double> second_order_poincare_sides(const QElement& x, int j, double p,
                                                      const NormOptions& opts = {});
inline constexpr double kSecondOrderPoincareConstant =
    2.0 * std::numbers::pi * std::numbers::pi / (9.0 * std::numbers::sqrt3);

}  // namespace qtorus
