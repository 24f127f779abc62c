#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtorus/element.hpp"
#include "qtorus/multipliers.hpp"

namespace qtorus {

// Radial Littlewood-Paley profile built from a cutoff chi with chi = 1 on [0,1],
// chi = 0 on [2, inf): phi(t) = chi(t) - chi(2t), supported in [1/2, 2], and
// sum_{k in Z} phi(2^{-k} t) = 1 for t > 0.
class LPProfile {
 public:
  LPProfile(std::string name, std::function<double(double)> chi);

  // exp(-1/s)-based smooth step (default).
  static LPProfile bump();
  // Same step with the transition coordinate reparametrized s -> s^2.
  static LPProfile bump_shifted();
  static LPProfile by_name(const std::string& name);

  const std::string& name() const { return name_; }
  double chi(double t) const { return chi_(t); }
  double phi(double t) const;
  // phi(2^{-k} |m|).
  double phi_block(const MultiIndex& m, int k) const;
  // Symbol of the k-th block multiplier phi~_k.
  Symbol block_symbol(int k) const;

 private:
  std::string name_;
  std::function<double(double)> chi_;
};

// phi~_k * x for k >= 0.
QElement lp_block(const QElement& x, int k, const LPProfile& profile = LPProfile::bump());
// Smallest and largest k >= 0 with a nonzero block for some nonzero frequency of x.
std::optional<std::pair<int, int>> block_range(const QElement& x, const LPProfile& profile = LPProfile::bump());
// x^(0) + sum_k phi~_k * x.
QElement reconstruct_from_blocks(const QElement& x, const LPProfile& profile = LPProfile::bump());

}  // namespace qtorus
