#include "qtorus/littlewood_paley.hpp"

#include <cmath>

#include "qtorus/error.hpp"

namespace qtorus {
namespace {

double smooth_zero(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// 1 at s <= 0, 0 at s >= 1, smooth in between.
double smooth_step(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = smooth_zero(1.0 - s);
  const double b = smooth_zero(s);
  return a / (a + b);
}

}  // namespace

LPProfile::LPProfile(std::string name, std::function<double(double)> chi)
    : name_(std::move(name)), chi_(std::move(chi)) {}

LPProfile LPProfile::bump() {
  return LPProfile("bump", [](double t) { return smooth_step(t - 1.0); });
}

LPProfile LPProfile::bump_shifted() {
  return LPProfile("bump-shifted", [](double t) {
    const double s = t - 1.0;
    return smooth_step(s <= 0.0 ? s : s * s);
  });
}

LPProfile LPProfile::by_name(const std::string& name) {
  if (name == "bump") return bump();
  if (name == "bump-shifted") return bump_shifted();
  throw InvalidInput("unknown Littlewood-Paley profile '" + name + "' (bump, bump-shifted)");
}

double LPProfile::phi(double t) const {
  if (t <= 0.5 || t >= 2.0) return 0.0;
  return chi_(t) - chi_(2.0 * t);
}

double LPProfile::phi_block(const MultiIndex& m, int k) const { return phi(std::ldexp(m.norm(), -k)); }

Symbol LPProfile::block_symbol(int k) const {
  if (k < 0) throw DomainError("Littlewood-Paley block index must be >= 0");
  return {name_ + ":block=" + std::to_string(k),
          [chi = chi_, k](const MultiIndex& m) {
            const double t = std::ldexp(m.norm(), -k);
            if (t <= 0.5 || t >= 2.0) return Complex{};
            return Complex(chi(t) - chi(2.0 * t));
          },
          {}, {}};
}

QElement lp_block(const QElement& x, int k, const LPProfile& profile) {
  return apply(profile.block_symbol(k), x);
}

std::optional<std::pair<int, int>> block_range(const QElement& x, const LPProfile& profile) {
  std::optional<std::pair<int, int>> r;
  for (const Term& t : x.terms()) {
    if (t.m.is_zero()) continue;
    const double a = t.m.norm();
    const int top = static_cast<int>(std::ceil(std::log2(a))) + 1;
    for (int k = std::max(0, top - 3); k <= top; ++k) {
      if (profile.phi_block(t.m, k) == 0.0) continue;
      if (!r) r = std::pair{k, k};
      r->first = std::min(r->first, k);
      r->second = std::max(r->second, k);
    }
  }
  return r;
}

QElement reconstruct_from_blocks(const QElement& x, const LPProfile& profile) {
  QElement sum = monomial(x.theta(), MultiIndex(static_cast<std::size_t>(x.dim())), x.mean(), x.prune_tol());
  if (auto r = block_range(x, profile))
    for (int k = r->first; k <= r->second; ++k) sum = sum + lp_block(x, k, profile);
  return sum;
}

}  // namespace qtorus
