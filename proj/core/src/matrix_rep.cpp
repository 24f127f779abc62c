#include "qtorus/matrix_rep.hpp"

#include <algorithm>
#include <cmath>

#include "qtorus/error.hpp"

namespace qtorus {

std::size_t window_size(int d, int N) {
  double s = std::pow(2.0 * N + 1.0, d);
  return s > 1e15 ? static_cast<std::size_t>(1e15) : static_cast<std::size_t>(s);
}

std::size_t TruncationWindow::size() const { return window_size(d, N); }

std::optional<std::size_t> TruncationWindow::index(const MultiIndex& m) const {
  std::size_t idx = 0;
  const std::size_t side = static_cast<std::size_t>(2 * N + 1);
  for (int j = 0; j < d; ++j) {
    if (m[j] < -N || m[j] > N) return std::nullopt;
    idx = idx * side + static_cast<std::size_t>(m[j] + N);
  }
  return idx;
}

MultiIndex TruncationWindow::point(std::size_t i) const {
  MultiIndex m(static_cast<std::size_t>(d));
  const std::size_t side = static_cast<std::size_t>(2 * N + 1);
  for (int j = d - 1; j >= 0; --j) {
    m[j] = static_cast<int>(i % side) - N;
    i /= side;
  }
  return m;
}

TruncatedMatrix to_matrix(const QElement& x, int N, std::size_t max_dim) {
  if (N < 0) throw DomainError("truncation level must be non-negative");
  TruncationWindow w{x.dim(), N};
  const std::size_t n = w.size();
  if (n > max_dim)
    throw BudgetExceeded("truncation N=" + std::to_string(N) + " gives dimension " + std::to_string(n) +
                         " above budget " + std::to_string(max_dim));
  TruncatedMatrix a{w, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  const ThetaMatrix& th = x.theta();
  const bool commutative = th.is_commutative();
  for (std::size_t col = 0; col < n; ++col) {
    MultiIndex nn = w.point(col);
    for (const Term& t : x.terms()) {
      auto row = w.index(nn + t.m);
      if (!row) continue;
      Complex c = t.c;
      if (!commutative) c *= std::polar(1.0, th.product_phase(t.m, nn));
      a.entries(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) = c;
    }
  }
  return a;
}

TruncatedMatrix schur_multiply(const TruncatedMatrix& a,
                               const std::function<Complex(const MultiIndex&)>& phi) {
  TruncatedMatrix out = a;
  const std::size_t n = a.window.size();
  for (std::size_t col = 0; col < n; ++col) {
    MultiIndex nn = a.window.point(col);
    for (std::size_t row = 0; row < n; ++row) {
      auto& e = out.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      if (e != Complex{}) e *= phi(a.window.point(row) - nn);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const TruncatedMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigen-solver did not converge");
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> singular_values(const TruncatedMatrix& a) {
  TruncatedMatrix g{a.window, a.entries.adjoint() * a.entries};
  std::vector<double> ev = hermitian_eigenvalues(g);
  std::vector<double> s(ev.size());
  std::transform(ev.rbegin(), ev.rend(), s.begin(), [](double v) { return std::sqrt(std::max(v, 0.0)); });
  return s;
}

double schatten_norm(std::span<const double> singular, double p) {
  if (singular.empty()) return 0.0;
  if (std::isinf(p)) return *std::max_element(singular.begin(), singular.end());
  if (!(p > 0.0)) throw DomainError("Schatten exponent must be positive");
  double s = 0.0;
  for (double v : singular) s += std::pow(v, p);
  return std::pow(s / static_cast<double>(singular.size()), 1.0 / p);
}

double schatten_norm(const TruncatedMatrix& a, double p) {
  return schatten_norm(singular_values(a), p);
}

double truncated_l2(const QElement& x, int N) {
  const double side = 2.0 * N + 1.0;
  double s = 0.0;
  for (const Term& t : x.terms()) {
    double frac = 1.0;
    for (int v : t.m) frac *= std::max(0.0, side - std::abs(v)) / side;
    s += std::norm(t.c) * frac;
  }
  return std::sqrt(s);
}

}  // namespace qtorus
