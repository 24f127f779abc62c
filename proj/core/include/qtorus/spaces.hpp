#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtorus/element.hpp"
#include "qtorus/littlewood_paley.hpp"
#include "qtorus/matrix_rep.hpp"
#include "qtorus/multipliers.hpp"
#include "qtorus/quadrature.hpp"

namespace qtorus {

struct Contribution {
  std::string label;
  double amount = 0.0;
};

enum class Aggregation {
  kPowerSum,  // (sum amount)^{1/q}; amounts are already q-th powers
  kMax,       // max amount
  kSum,       // sum amount
  kMin,       // min amount (best of several candidate decompositions)
};

struct NormResult {
  double value = 0.0;
  double q = 1.0;
  Aggregation aggregation = Aggregation::kSum;
  std::vector<Contribution> breakdown;
  nlohmann::json diagnostics = nlohmann::json::object();

  // Recomputes the value from the breakdown.
  double aggregate() const;
};

struct NormOptions {
  LpControl lp;
  QuadControl quad;
  LPProfile profile = LPProfile::bump();
};

// (sum_{|mu|_1 <= k} ||D^mu x||_p^p)^{1/p}, or the top-order seminorm over |mu|_1 = k.
NormResult sobolev_norm(const QElement& x, int k, double p, bool seminorm_only, const NormOptions& opts = {});
// ||J^alpha x||_p.
NormResult potential_norm(const QElement& x, double alpha, double p, const NormOptions& opts = {});
// (|x^(0)|^p + ||I^alpha (x - x^(0))||_p^p)^{1/p}, the Riesz form of the potential norm.
NormResult riesz_potential_norm(const QElement& x, double alpha, double p, const NormOptions& opts = {});

// Besov norm from Littlewood-Paley blocks.
NormResult besov_norm(const QElement& x, double alpha, double p, double q, const NormOptions& opts = {});

// Per-block L_p norms, reusable across alpha and q.
struct BlockNorms {
  double mean_abs = 0.0;
  std::vector<int> k;
  std::vector<double> norm;
  bool converged = true;
};
BlockNorms besov_blocks(const QElement& x, double p, const NormOptions& opts = {});
NormResult besov_from_blocks(const BlockNorms& blocks, double alpha, double q);

// Smoothness exponent gamma in the weight w^{q gamma}: k - alpha (Poisson kinds) or
// k - alpha/2 (heat kinds). Throws DomainError unless gamma > 0.
double semigroup_gamma(Semigroup kind, double alpha, int k);

// Node values ||J^k S_w (x')||_p of a semigroup characterization on a quadrature grid,
// reusable across alpha and q. x' is x without its mean (eps kinds, k < 0) or x_k
// (circular Poisson); head is the head term of the characterization.
struct SemigroupSeries {
  Semigroup kind = Semigroup::kPoisson;
  int k = 0;
  double p = 2.0;
  double head = 0.0;
  std::vector<QuadratureNode> nodes;
  std::vector<double> norm;
  bool converged = true;
};
SemigroupSeries semigroup_series(const QElement& x, double p, Semigroup kind, int k, const QuadratureGrid& grid,
                                 const NormOptions& opts = {}, const SemigroupSeries* coarser = nullptr);
NormResult besov_from_series(const SemigroupSeries& s, double alpha, double q);

// Besov norm through a Poisson, heat, circular Poisson or circular heat characterization.
NormResult besov_norm_semigroup(const QElement& x, double alpha, double p, double q, Semigroup kind, int k,
                                const NormOptions& opts = {});

enum class TriebelFlavor { kColumn, kRow, kMixture };
TriebelFlavor triebel_flavor_from_name(const std::string& name);

// Triebel-Lizorkin norm from Littlewood-Paley blocks, p in [1, inf).
NormResult triebel_norm(const QElement& x, double alpha, double p, TriebelFlavor flavor,
                        const NormOptions& opts = {});
// Column Triebel-Lizorkin norm through a semigroup square function.
NormResult triebel_norm_semigroup(const QElement& x, double alpha, double p, Semigroup kind, int k,
                                  const NormOptions& opts = {});

// Positive element sum_i W_i y_i^* y_i with y_i = M_{psi_i} x for real radial symbols psi_i,
// assembled exactly in the algebra.
QElement radial_square_sum(const QElement& x, const std::vector<double>& weights,
                           const std::vector<Symbol>& symbols);

nlohmann::json norm_result_to_json(const NormResult& r);

}  // namespace qtorus
