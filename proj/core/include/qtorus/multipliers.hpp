#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/element.hpp"

namespace qtorus {

// Fourier multiplier symbol phi: Z^d -> C, acting by U^m -> phi(m) U^m.
struct Symbol {
  std::string name;
  std::function<Complex(const MultiIndex&)> value;
  // When set, apply() rejects elements with support outside the domain.
  std::function<bool(const MultiIndex&)> domain;
  std::string domain_rule;

  Complex operator()(const MultiIndex& m) const { return value(m); }
};

// Pointwise product, i.e. composition of the multipliers.
Symbol operator*(const Symbol& a, const Symbol& b);

QElement apply(const Symbol& phi, const QElement& x);

enum class Semigroup { kPoisson, kHeat, kCircularPoisson, kCircularHeat };

const char* semigroup_name(Semigroup s);
Semigroup semigroup_from_name(const std::string& name);
bool is_circular(Semigroup s);

Symbol identity_symbol();
Symbol translation_symbol(std::vector<double> u);
Symbol derivative_symbol(const MultiIndex& mu);
Symbol laplacian_symbol();
Symbol bessel_symbol(double alpha);
Symbol riesz_symbol(double alpha);
Symbol difference_symbol(std::vector<double> u, int k);
Symbol fejer_symbol(int N);
// J^k P_eps (poisson) or J^k W_eps (heat); k < 0 integrates and needs zero mean.
Symbol semigroup_symbol(Semigroup kind, double eps, int k);
// J^k_r P_r or J^k_r W_r; for circular-poisson and k >= 1 frequencies with |m| < k are rejected.
Symbol circular_symbol(Semigroup kind, double r, int k);

QElement derivative(const QElement& x, const MultiIndex& mu);
QElement laplacian(const QElement& x);
QElement bessel_potential(const QElement& x, double alpha);
QElement riesz_potential(const QElement& x, double alpha);
QElement translate(const QElement& x, const std::vector<double>& u);
QElement difference(const QElement& x, const std::vector<double>& u, int k);
QElement fejer_mean(const QElement& x, int N);
QElement semigroup(const QElement& x, Semigroup kind, double eps_or_r, int k);
// (x^(0), x - x^(0)).
std::pair<Complex, QElement> strip_mean(const QElement& x);

// Named specs: "bessel:alpha=1", "riesz:alpha=-1", "poisson:eps=0.1:k=1",
// "heat:eps=0.1:k=0", "circular-poisson:r=0.5:k=1", "circular-heat:r=0.5:k=0",
// "diff:u=0.1,0.2:k=2", "translate:u=0.1,0.2", "deriv:mu=1,0", "laplacian", "fejer:N=4".
Symbol parse_multiplier_spec(const std::string& spec, int d);

}  // namespace qtorus
