#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtorus/element.hpp"

namespace qtorus {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultMaxDim = 1089;

// Z_N = {-N..N}^d enumerated lexicographically.
struct TruncationWindow {
  int d = 1;
  int N = 0;

  std::size_t size() const;
  std::optional<std::size_t> index(const MultiIndex& m) const;
  MultiIndex point(std::size_t i) const;
};

// Compression of the left-regular representation of x to span{e_n : n in Z_N}.
// Entry (m, n) is x^(m-n) e^{i n theta~ (m-n)^t}.
struct TruncatedMatrix {
  TruncationWindow window;
  Eigen::MatrixXcd entries;
};

std::size_t window_size(int d, int N);
TruncatedMatrix to_matrix(const QElement& x, int N, std::size_t max_dim = kDefaultMaxDim);
// Entry-wise product with phi(m - n).
TruncatedMatrix schur_multiply(const TruncatedMatrix& a,
                               const std::function<Complex(const MultiIndex&)>& phi);

// Descending singular values.
std::vector<double> singular_values(const TruncatedMatrix& a);
// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const TruncatedMatrix& a);
// Schatten norm under the normalized trace: ((1/n) sum s_i^p)^{1/p}; max s_i for p = inf.
double schatten_norm(std::span<const double> singular, double p);
double schatten_norm(const TruncatedMatrix& a, double p);
// Normalized Hilbert-Schmidt norm of to_matrix(x, N) in closed form.
double truncated_l2(const QElement& x, int N);

struct LpControl {
  double rel_tol = 1e-3;
  // Truncation levels to use; empty selects {2,4,8} x degree within the budget.
  std::vector<int> schedule;
  std::size_t max_dim = kDefaultMaxDim;
  // p = 2 through Plancherel instead of matrices.
  bool exact_p2 = true;
  // Polynomial extrapolation of the truncated values to N = infinity.
  bool extrapolate = true;
  // Keep doubling N (within max_dim) until successive estimates agree.
  bool extend = true;
};

struct LpResult {
  double value = 0.0;
  // Value of the largest truncation, without extrapolation.
  double raw_value = 0.0;
  int N_used = 0;
  // Relative gap between truncated and exact L2 norms at N_used.
  double p2_calibration_error = 0.0;
  double last_change = 0.0;
  bool converged = false;
  bool exact = false;
  std::vector<int> schedule_used;
};

// Noncommutative L_p norm ||x||_p = tau(|x|^p)^{1/p}, p in [1, inf].
LpResult lp_norm(const QElement& x, double p, const LpControl& ctrl = {});
// Several exponents from one set of spectral decompositions.
std::vector<LpResult> lp_norms(const QElement& x, std::span<const double> ps, const LpControl& ctrl = {});
// ||s^{1/2}||_p = tau(s^{p/2})^{1/p} for a positive element s, p in (0, inf).
LpResult positive_root_norm(const QElement& s, double p, const LpControl& ctrl = {});

}  // namespace qtorus
