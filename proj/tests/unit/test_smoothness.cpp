#include <doctest.h>

#include "../support/oracles.hpp"
#include "qtorus/corpus.hpp"
#include "qtorus/error.hpp"
#include "qtorus/smoothness.hpp"

using namespace qtorus;
using qtorus::testing::kPi;

namespace {

QElement sample(std::size_t i, int degree = 3) {
  CorpusSpec c;
  c.max_degree = degree;
  c.seed = 77;
  return random_element(c, i);
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return 0.5 * (a + b);
}

// inf_y (||x - y||_2^2 + t^2 ||y||_{W^k_2}^2)^{1/2} by coordinate descent over y = sum s_m x^(m) U^m.
double brute_k2(const QElement& x, double t, int k) {
  std::vector<double> s(x.support_size(), 0.5);
  auto functional = [&](const std::vector<double>& v) {
    std::vector<Term> terms(x.terms().begin(), x.terms().end());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i].c *= v[i];
    const QElement y = x.with_terms(terms);
    const double w = sobolev_norm(y, k, 2.0, false).value;
    return std::pow((x - y).l2_norm(), 2.0) + t * t * w * w;
  };
  for (int sweep = 0; sweep < 2; ++sweep)
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = golden_min(
          [&](double v) {
            std::vector<double> trial = s;
            trial[i] = v;
            return functional(trial);
          },
          0.0, 1.0);
  return std::sqrt(functional(s));
}

}  // namespace

TEST_CASE("moduli of monomials") {
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  SmoothnessOptions opts;
  for (const MultiIndex& m : {MultiIndex{1, 0}, MultiIndex{3, 1}, MultiIndex{-2, 2}})
    for (int k : {1, 2, 3})
      for (double eps : {0.02, 0.1}) {
        const double expect = std::pow(2.0 * std::sin(kPi * eps * m.norm()), k);
        const ModulusResult r = modulus(monomial(t, m), k, eps, 2.0, opts);
        CHECK(r.value <= expect * (1.0 + 1e-12));
        CHECK(r.value >= 0.99 * expect);
      }
}

TEST_CASE("difference norms at p = 2 follow the symbol") {
  const QElement x = sample(0);
  const std::vector<double> u = {0.03, -0.07};
  double acc = 0.0;
  for (const Term& term : x.terms())
    acc += std::norm(term.c) * std::pow(std::abs(std::polar(1.0, 2.0 * kPi * (u[0] * term.m[0] + u[1] * term.m[1])) - 1.0), 4);
  CHECK(difference_norm(x, u, 2, 2.0) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
}

TEST_CASE("K-functional oracle matches direct minimization") {
  for (std::size_t s = 0; s < 3; ++s) {
    const QElement x = sample(s, 2);
    for (int k : {1, 2})
      for (double t : {1e-3, 0.05, 0.5}) {
        const double oracle = k_functional(x, t, k, 2.0, KMode::kL2Oracle).value;
        CHECK(std::abs(brute_k2(x, t, k) - oracle) < 1e-8 * std::max(1.0, oracle));
        const KFunctionalResult cert = k_functional(x, t, k, 2.0, KMode::kUpperCertificate);
        CHECK(cert.value >= oracle * (1.0 - 1e-12));
      }
  }
}

TEST_CASE("averaged difference symbol matches direct integration") {
  const int n = 400;
  for (int k : {1, 2})
    for (const MultiIndex& m : {MultiIndex{3}, MultiIndex{-5}}) {
      const double eps = 0.07;
      Complex acc{};
      if (k == 1) {
        for (int i = 0; i < n; ++i) acc += std::polar(1.0, 2.0 * kPi * eps * ((i + 0.5) / n) * m[0]) - 1.0;
        acc /= static_cast<double>(n);
        acc = -acc;
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const Complex b = std::polar(1.0, 2.0 * kPi * eps * ((i + 0.5) / n + (j + 0.5) / n) * m[0]) - 1.0;
            acc += b * b;
          }
        acc /= static_cast<double>(n) * n;
      }
      CHECK(std::abs(averaged_difference_symbol(m, eps, k) - acc) < 1e-5);
    }
}

TEST_CASE("Marchaud bounds hold at p = 2") {
  const QElement x = sample(1);
  const std::vector<double> eps = {0.25, 0.125, 0.0625};
  const auto rows = marchaud_check(x, {{1, 2}, {2, 3}}, 2.0, eps);
  CHECK(rows.size() == 6);
  for (const MarchaudRow& r : rows) {
    CHECK(r.lower_ok);
    CHECK(r.lower_lhs <= 1.05 * r.omega_n);
    CHECK(std::isfinite(r.upper_constant));
    CHECK(r.upper_rhs > 0.0);
  }
  CHECK_THROWS_AS(marchaud_check(x, {{2, 2}}, 2.0, eps), DomainError);
}

TEST_CASE("Lipschitz quotients increase to the seminorm") {
  const QElement x = sample(2);
  const LipschitzTable t = lipschitz_ratio(x, 1, 2.0, {0.1, 0.01, 0.001});
  CHECK(t.increasing);
  CHECK(t.rows.back().ratio <= 1.0 + 1e-9);
}

TEST_CASE("interpolation and second order Poincare inequalities at p = 2") {
  // L1 norm of the kernel sum_{m != 0} e^{2 pi i m t} / m^2 = 2 pi^2 (t^2 - t + 1/6).
  const int n = 1 << 20;
  double l1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    l1 += std::abs(2.0 * kPi * kPi * (s * s - s + 1.0 / 6.0));
  }
  CHECK(std::abs(l1 / n - kSecondOrderPoincareConstant) < 1e-9);
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  const QElement x = monomial(t, {2, 1}) + monomial(t, {-1, 3}, Complex(0.0, 2.0));
  const auto [lhs, rhs] = interpolation_sides(x, 0, 2.0);
  CHECK(lhs <= rhs);
  const auto [a, b] = second_order_poincare_sides(x, 0, 2.0);
  CHECK(a <= b);
  CHECK_THROWS_AS(second_order_poincare_sides(monomial(t, {0, 1}), 0, 2.0), DomainError);
}

TEST_CASE("limit scans approach their targets") {
  const QElement x = sample(3, 2);
  const LimitTable upper = limit_scan(x, 1, 2.0, 2.0, LimitEnd::kAlphaToK, {0.9, 0.99, 0.999});
  CHECK(upper.cauchy_decreasing);
  CHECK(std::abs(upper.rows.back().ratio - 1.0) < 0.25);
  const LimitTable lower = limit_scan(strip_mean(x).second, 1, 2.0, 2.0, LimitEnd::kAlphaToZero, {0.1, 0.01, 0.001});
  CHECK(lower.cauchy_decreasing);
}
