#include <doctest.h>

#include "../support/oracles.hpp"
#include "qtorus/corpus.hpp"
#include "qtorus/error.hpp"
#include "qtorus/spaces.hpp"

using namespace qtorus;
using qtorus::testing::kPi;

namespace {

// Lower incomplete gamma function by its power series; the complete value once e^{-x} is negligible.
double lower_gamma(double s, double x) {
  if (x > 2.0 * s + 60.0) return std::tgamma(s);
  double term = 1.0 / s, sum = term;
  for (int n = 1; n < 5000 && term > 1e-17 * sum; ++n) {
    term *= x / (s + n);
    sum += term;
  }
  return std::exp(s * std::log(x) - x) * sum;
}

// Falling factorial a (a - 1) ... (a - k + 1).
double falling(double a, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= a - i;
  return c;
}

// Semigroup Besov norm of a monomial U^m at p = 2, from the closed-form integral.
double monomial_semigroup_besov(Semigroup kind, const MultiIndex& m, double alpha, double q, int k) {
  const double a = m.norm();
  switch (kind) {
    case Semigroup::kPoisson: {
      const double g = k - alpha, lam = 2.0 * kPi * a;
      return std::pow(std::pow(lam, k * q) * std::pow(lam * q, -g * q) * lower_gamma(g * q, lam * q), 1.0 / q);
    }
    case Semigroup::kHeat: {
      const double g = k - alpha / 2.0, lam = 4.0 * kPi * kPi * a * a;
      return std::pow(std::pow(lam, k * q) * std::pow(lam * q, -g * q) * lower_gamma(g * q, lam * q), 1.0 / q);
    }
    case Semigroup::kCircularPoisson: {
      const double g = k - alpha;
      return std::abs(falling(a, k)) * std::pow(std::beta(g * q, (a - k) * q + 1.0), 1.0 / q);
    }
    case Semigroup::kCircularHeat: {
      const double g = k - alpha / 2.0, b = a * a;
      return std::abs(falling(b, k)) * std::pow(std::beta(g * q, (b - k) * q + 1.0), 1.0 / q);
    }
  }
  return 0.0;
}

QElement sample(std::size_t i, int degree = 4) {
  CorpusSpec c;
  c.max_degree = degree;
  c.seed = 31;
  return random_element(c, i);
}

}  // namespace

TEST_CASE("Sobolev and potential norms at p = 2") {
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  const QElement u1 = monomial(t, {1, 0});
  CHECK(sobolev_norm(u1, 1, 2.0, false).value == doctest::Approx(std::sqrt(1.0 + 4.0 * kPi * kPi)));
  CHECK(sobolev_norm(u1, 1, 2.0, true).value == doctest::Approx(2.0 * kPi));
  CHECK(sobolev_norm(u1, 2, 2.0, false).value ==
        doctest::Approx(std::sqrt(1.0 + 4.0 * kPi * kPi + std::pow(2.0 * kPi, 4))));
  for (std::size_t s = 0; s < 5; ++s) {
    const QElement x = sample(s);
    double h = 0.0, r = std::norm(x.mean());
    for (const Term& term : x.terms()) {
      h += std::pow(1.0 + static_cast<double>(term.m.norm_sq()), 0.8) * std::norm(term.c);
      if (!term.m.is_zero()) r += std::pow(term.m.norm(), 1.6) * std::norm(term.c);
    }
    CHECK(potential_norm(x, 0.8, 2.0).value == doctest::Approx(std::sqrt(h)).epsilon(1e-12));
    CHECK(riesz_potential_norm(x, 0.8, 2.0).value == doctest::Approx(std::sqrt(r)).epsilon(1e-12));
  }
}

TEST_CASE("Littlewood-Paley Besov norm of dyadic monomials") {
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  for (int k = 0; k <= 5; ++k)
    for (double alpha : {-1.0, 0.5, 2.0})
      for (double p : {2.0, 1.0}) {
        const QElement x = monomial(t, {1 << k, 0});
        const NormResult r = besov_norm(x, alpha, p, 2.0);
        if (p == 1.0 && k == 5) {
          // The 33 x 33 window budget cannot resolve |m| = 32 away from p = 2.
          CHECK_FALSE(r.diagnostics.at("lp_converged").get<bool>());
          continue;
        }
        CHECK(std::abs(r.value - std::pow(2.0, k * alpha)) < 2e-3 * std::pow(2.0, k * alpha));
      }
}

TEST_CASE("Besov blocks are reusable across alpha and q") {
  const QElement x = sample(2, 8);
  const BlockNorms b = besov_blocks(x, 2.0);
  for (double alpha : {-0.5, 0.5, 1.5})
    for (double q : {1.0, 2.0, kInf})
      CHECK(besov_from_blocks(b, alpha, q).value == doctest::Approx(besov_norm(x, alpha, 2.0, q).value));
}

TEST_CASE("semigroup Besov norms of monomials match closed forms") {
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  struct Case {
    Semigroup kind;
    int k;
    double alpha;
  };
  const std::vector<Case> cases = {{Semigroup::kPoisson, 1, 0.5},      {Semigroup::kPoisson, 2, 1.5},
                                   {Semigroup::kPoisson, 0, -0.5},     {Semigroup::kHeat, 1, 0.5},
                                   {Semigroup::kHeat, 2, 3.0},         {Semigroup::kCircularPoisson, 1, 0.5},
                                   {Semigroup::kCircularPoisson, 2, 1.2}, {Semigroup::kCircularHeat, 1, 0.5},
                                   {Semigroup::kCircularHeat, 0, -0.5}};
  for (const Case& c : cases)
    for (const MultiIndex& m : {MultiIndex{2, 0}, MultiIndex{3, 4}, MultiIndex{1, 1}})
      for (double q : {1.0, 2.0, 3.0}) {
        if (c.kind == Semigroup::kCircularPoisson && m.norm_sq() < c.k * c.k) continue;
        CAPTURE(std::string(semigroup_name(c.kind)));
        CAPTURE(c.k);
        CAPTURE(m.norm_sq());
        CAPTURE(q);
        const double v = besov_norm_semigroup(monomial(t, m), c.alpha, 2.0, q, c.kind, c.k).value;
        const double oracle = monomial_semigroup_besov(c.kind, m, c.alpha, q, c.k);
        CHECK(std::abs(v - oracle) < 1e-3 * oracle);
      }
}

TEST_CASE("semigroup Besov head terms") {
  const ThetaMatrix t = ThetaMatrix::uniform(2, 0.3);
  const QElement one = unit(t);
  CHECK(besov_norm_semigroup(one, 0.5, 2.0, 2.0, Semigroup::kPoisson, 1).value == doctest::Approx(1.0));
  const QElement low = monomial(t, {1, 0}, 3.0);
  CHECK(besov_norm_semigroup(low, 0.5, 2.0, 2.0, Semigroup::kCircularPoisson, 2).value == doctest::Approx(3.0));
  CHECK_THROWS_AS(semigroup_gamma(Semigroup::kPoisson, 1.0, 1), DomainError);
  CHECK(semigroup_gamma(Semigroup::kHeat, 1.0, 1) == 0.5);
}

TEST_CASE("p = 2 column Triebel norms reduce to Besov norms with q = 2") {
  for (std::size_t s = 0; s < 5; ++s) {
    const QElement x = strip_mean(sample(s)).second;
    for (double alpha : {-0.5, 0.5, 1.0}) {
      const double b = besov_norm(x, alpha, 2.0, 2.0).value;
      CHECK(triebel_norm(x, alpha, 2.0, TriebelFlavor::kColumn).value == doctest::Approx(b).epsilon(1e-10));
      CHECK(triebel_norm(x, alpha, 2.0, TriebelFlavor::kRow).value == doctest::Approx(b).epsilon(1e-10));
      const double bs = besov_norm_semigroup(x, alpha, 2.0, 2.0, Semigroup::kPoisson, 2).value;
      const double fs = triebel_norm_semigroup(x, alpha, 2.0, Semigroup::kPoisson, 2).value;
      CHECK(std::abs(bs - fs) < 1e-3 * bs);
    }
  }
  CHECK_THROWS_AS(triebel_norm(sample(0), 0.5, kInf, TriebelFlavor::kColumn), DomainError);
}

TEST_CASE("radial square sums are positive with the expected trace") {
  const QElement x = sample(1);
  const std::vector<Symbol> syms = {bessel_symbol(-1.0), semigroup_symbol(Semigroup::kHeat, 0.01, 0)};
  const std::vector<double> w = {0.5, 2.0};
  const QElement s = radial_square_sum(x, w, syms);
  double expect = 0.0;
  for (std::size_t i = 0; i < syms.size(); ++i) expect += w[i] * std::pow(apply(syms[i], x).l2_norm(), 2.0);
  CHECK(trace(s).real() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(trace(s).imag()) < 1e-12);
  CHECK((adjoint(s) - s).l2_norm() < 1e-12 * s.l2_norm());
}

TEST_CASE("norm results aggregate their breakdowns") {
  const NormResult r = besov_norm(sample(3), 0.5, 2.0, 2.0);
  CHECK(r.aggregate() == doctest::Approx(r.value).epsilon(1e-14));
  const nlohmann::json j = norm_result_to_json(r);
  CHECK(j.at("value").get<double>() == r.value);
}
