#include "qtorus/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtorus/error.hpp"

namespace qtorus {
namespace {

void check_p(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("exponent p must lie in [1, inf]");
}

void check_q(double q) {
  if (std::isnan(q) || q <= 0.0) throw DomainError("exponent q must be positive");
}

// All mu with |mu|_1 <= k (or == k), in lexicographic order.
void multi_orders(int d, int k, bool exact, MultiIndex& cur, int j, int used, std::vector<MultiIndex>& out) {
  if (j == d) {
    if (!exact || used == k) out.push_back(cur);
    return;
  }
  for (int v = 0; used + v <= k; ++v) {
    cur[j] = v;
    multi_orders(d, k, exact, cur, j + 1, used + v, out);
  }
  cur[j] = 0;
}

NormResult finish(NormResult r) {
  r.value = r.aggregate();
  return r;
}

NormResult power_sum(double q) {
  NormResult r;
  r.q = q;
  r.aggregation = std::isinf(q) ? Aggregation::kMax : Aggregation::kPowerSum;
  return r;
}

// Adds a term given by its unpowered size t: t^q for finite q, t itself for q = inf.
void add_term(NormResult& r, std::string label, double t) {
  r.breakdown.push_back({std::move(label), std::isinf(r.q) ? t : std::pow(t, r.q)});
}

// Frequencies discarded by the characterization and its head term.
struct Prepared {
  QElement x;
  double head = 0.0;
};

Prepared prepare_for_semigroup(const QElement& x, Semigroup kind, int k) {
  switch (kind) {
    case Semigroup::kPoisson:
    case Semigroup::kHeat: {
      const double head = std::abs(x.mean());
      return {k < 0 ? strip_mean(x).second : x, head};
    }
    case Semigroup::kCircularPoisson:
    case Semigroup::kCircularHeat: {
      if (k < 1) return {x, 0.0};
      const long long bound = kind == Semigroup::kCircularPoisson ? static_cast<long long>(k) * k : k;
      double head = 0.0;
      std::vector<Term> keep;
      for (const Term& t : x.terms()) {
        if (t.m.norm_sq() < bound) {
          head = std::max(head, std::abs(t.c));
        } else {
          keep.push_back(t);
        }
      }
      return {x.with_terms(std::move(keep)), head};
    }
  }
  return {x, 0.0};
}

Symbol node_symbol(Semigroup kind, double param, int k) {
  return is_circular(kind) ? circular_symbol(kind, param, k) : semigroup_symbol(kind, param, k);
}

QuadratureGrid grid_for(Semigroup kind, const QuadControl& qc) {
  return is_circular(kind) ? QuadratureGrid::radius(qc.w_min, qc.points) : QuadratureGrid::eps(qc.w_min, qc.points);
}

double exact_l2_of_multiplier(const QElement& x, const Symbol& s) {
  double acc = 0.0;
  for (const Term& t : x.terms()) acc += std::norm(s(t.m) * t.c);
  return std::sqrt(acc);
}

double lp_of(const QElement& y, double p, const NormOptions& opts, bool& converged) {
  LpResult r = lp_norm(y, p, opts.lp);
  converged = converged && (r.converged || r.exact);
  return r.value;
}

std::string rule_text(Semigroup kind) {
  return kind == Semigroup::kHeat || kind == Semigroup::kCircularHeat ? "k > alpha/2 (heat characterization)"
                                                                      : "k > alpha (Poisson characterization)";
}

}  // namespace

double NormResult::aggregate() const {
  switch (aggregation) {
    case Aggregation::kPowerSum: {
      double s = 0.0;
      for (const auto& c : breakdown) s += c.amount;
      return std::pow(s, 1.0 / q);
    }
    case Aggregation::kMax: {
      double m = 0.0;
      for (const auto& c : breakdown) m = std::max(m, c.amount);
      return m;
    }
    case Aggregation::kSum: {
      double s = 0.0;
      for (const auto& c : breakdown) s += c.amount;
      return s;
    }
    case Aggregation::kMin: {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : breakdown) m = std::min(m, c.amount);
      return breakdown.empty() ? 0.0 : m;
    }
  }
  return 0.0;
}

NormResult sobolev_norm(const QElement& x, int k, double p, bool seminorm_only, const NormOptions& opts) {
  check_p(p);
  if (k < 1) throw DomainError("Sobolev order k must be >= 1");
  std::vector<MultiIndex> orders;
  MultiIndex cur(static_cast<std::size_t>(x.dim()));
  multi_orders(x.dim(), k, seminorm_only, cur, 0, 0, orders);
  NormResult r = power_sum(p);
  bool converged = true;
  for (const MultiIndex& mu : orders) add_term(r, "D^" + mu.str(), lp_of(derivative(x, mu), p, opts, converged));
  r.diagnostics["lp_converged"] = converged;
  r.diagnostics["terms"] = orders.size();
  return finish(std::move(r));
}

NormResult potential_norm(const QElement& x, double alpha, double p, const NormOptions& opts) {
  check_p(p);
  NormResult r;
  bool converged = true;
  r.breakdown.push_back({"J^alpha x", lp_of(bessel_potential(x, alpha), p, opts, converged)});
  r.diagnostics["lp_converged"] = converged;
  return finish(std::move(r));
}

NormResult riesz_potential_norm(const QElement& x, double alpha, double p, const NormOptions& opts) {
  check_p(p);
  auto [mu, rest] = strip_mean(x);
  NormResult r = power_sum(p);
  bool converged = true;
  add_term(r, "mean", std::abs(mu));
  add_term(r, "I^alpha (x - mean)", lp_of(riesz_potential(rest, alpha), p, opts, converged));
  r.diagnostics["lp_converged"] = converged;
  return finish(std::move(r));
}

BlockNorms besov_blocks(const QElement& x, double p, const NormOptions& opts) {
  check_p(p);
  BlockNorms b;
  b.mean_abs = std::abs(x.mean());
  if (auto range = block_range(x, opts.profile)) {
    for (int k = range->first; k <= range->second; ++k) {
      b.k.push_back(k);
      b.norm.push_back(lp_of(lp_block(x, k, opts.profile), p, opts, b.converged));
    }
  }
  return b;
}

NormResult besov_from_blocks(const BlockNorms& blocks, double alpha, double q) {
  check_q(q);
  NormResult r = power_sum(q);
  add_term(r, "mean", blocks.mean_abs);
  for (std::size_t i = 0; i < blocks.k.size(); ++i)
    add_term(r, "block " + std::to_string(blocks.k[i]), std::pow(2.0, blocks.k[i] * alpha) * blocks.norm[i]);
  r.diagnostics["lp_converged"] = blocks.converged;
  r.diagnostics["blocks"] = blocks.k.size();
  return finish(std::move(r));
}

NormResult besov_norm(const QElement& x, double alpha, double p, double q, const NormOptions& opts) {
  NormResult r = besov_from_blocks(besov_blocks(x, p, opts), alpha, q);
  r.diagnostics["profile"] = opts.profile.name();
  return r;
}

double semigroup_gamma(Semigroup kind, double alpha, int k) {
  const bool heat = kind == Semigroup::kHeat || kind == Semigroup::kCircularHeat;
  const double gamma = heat ? k - alpha / 2.0 : k - alpha;
  if (!(gamma > 0.0))
    throw DomainError(std::string(semigroup_name(kind)) + " characterization requires " + rule_text(kind) +
                      "; got k=" + std::to_string(k) + ", alpha=" + std::to_string(alpha));
  return gamma;
}

SemigroupSeries semigroup_series(const QElement& x, double p, Semigroup kind, int k, const QuadratureGrid& grid,
                                 const NormOptions& opts, const SemigroupSeries* coarser) {
  check_p(p);
  Prepared prep = prepare_for_semigroup(x, kind, k);
  SemigroupSeries s;
  s.kind = kind;
  s.k = k;
  s.p = p;
  s.head = prep.head;
  s.nodes = grid.nodes();
  s.norm.resize(s.nodes.size());
  const bool reuse = coarser && coarser->norm.size() * 2 - 1 == s.nodes.size() && coarser->p == p &&
                     coarser->k == k && coarser->kind == kind;
  const bool exact = p == 2.0 && opts.lp.exact_p2;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (reuse && i % 2 == 0) {
      s.norm[i] = coarser->norm[i / 2];
      continue;
    }
    Symbol sym = node_symbol(kind, s.nodes[i].param, k);
    s.norm[i] = exact ? exact_l2_of_multiplier(prep.x, sym) : lp_of(apply(sym, prep.x), p, opts, s.converged);
  }
  if (reuse) s.converged = s.converged && coarser->converged;
  return s;
}

NormResult besov_from_series(const SemigroupSeries& s, double alpha, double q) {
  check_q(q);
  const double gamma = semigroup_gamma(s.kind, alpha, s.k);
  NormResult r = power_sum(q);
  add_term(r, "head", s.head);
  if (std::isinf(q)) {
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
      r.breakdown.push_back({"node " + std::to_string(i), std::pow(s.nodes[i].w, gamma) * s.norm[i]});
  } else {
    const double e = q * gamma;
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
      r.breakdown.push_back(
          {"node " + std::to_string(i), s.nodes[i].weight * std::pow(s.nodes[i].w, e) * std::pow(s.norm[i], q)});
    // Below the last node the integrand behaves like w^{q gamma} times a constant.
    const QuadratureNode& last = s.nodes.back();
    r.breakdown.push_back({"tail", std::pow(last.w, e) * std::pow(s.norm.back(), q) / e});
  }
  r.diagnostics["lp_converged"] = s.converged;
  r.diagnostics["quad_points"] = s.nodes.size();
  return finish(std::move(r));
}

NormResult besov_norm_semigroup(const QElement& x, double alpha, double p, double q, Semigroup kind, int k,
                                const NormOptions& opts) {
  semigroup_gamma(kind, alpha, k);
  check_q(q);
  QuadratureGrid grid = grid_for(kind, opts.quad);
  SemigroupSeries s = semigroup_series(x, p, kind, k, grid, opts);
  NormResult r = besov_from_series(s, alpha, q);
  nlohmann::json deltas = nlohmann::json::array();
  bool quad_converged = !opts.quad.refine;
  for (int level = 0; opts.quad.refine && level < opts.quad.max_refinements; ++level) {
    grid = grid.refined();
    SemigroupSeries finer = semigroup_series(x, p, kind, k, grid, opts, &s);
    NormResult next = besov_from_series(finer, alpha, q);
    const double change = std::abs(next.value - r.value) / std::max(next.value, 1e-300);
    deltas.push_back(change);
    s = std::move(finer);
    r = std::move(next);
    if (change <= opts.quad.rel_tol || r.value == 0.0) {
      quad_converged = true;
      break;
    }
  }
  r.diagnostics["method"] = semigroup_name(kind);
  r.diagnostics["k"] = k;
  r.diagnostics["quad_deltas"] = deltas;
  r.diagnostics["quad_converged"] = quad_converged;
  return r;
}

QElement radial_square_sum(const QElement& x, const std::vector<double>& weights, const std::vector<Symbol>& symbols) {
  if (weights.size() != symbols.size()) throw DimensionMismatch("weights and symbols differ in length");
  std::vector<long long> radii;
  for (const Term& t : x.terms()) radii.push_back(t.m.norm_sq());
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<MultiIndex> reps(radii.size());
  for (const Term& t : x.terms()) {
    auto c = std::lower_bound(radii.begin(), radii.end(), t.m.norm_sq()) - radii.begin();
    reps[static_cast<std::size_t>(c)] = t.m;
  }
  const std::size_t R = radii.size();
  std::vector<double> G(R * R, 0.0);
  std::vector<double> psi(R);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (weights[i] == 0.0) continue;
    for (std::size_t a = 0; a < R; ++a) psi[a] = symbols[i](reps[a]).real();
    for (std::size_t a = 0; a < R; ++a) {
      if (psi[a] == 0.0) continue;
      for (std::size_t b = 0; b < R; ++b) G[a * R + b] += weights[i] * psi[a] * psi[b];
    }
  }
  std::vector<std::size_t> cls;
  for (const Term& t : x.terms())
    cls.push_back(static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), t.m.norm_sq()) - radii.begin()));
  const ThetaMatrix& th = x.theta();
  std::vector<Term> out;
  out.reserve(x.support_size() * x.support_size());
  auto terms = x.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const MultiIndex neg = -terms[i].m;
    const double rho = th.adjoint_phase(terms[i].m);
    const Complex ci = std::conj(terms[i].c);
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double g = G[cls[i] * R + cls[j]];
      if (g == 0.0) continue;
      // (U^m)^* U^n = e^{i rho(m)} U^{-m} U^n = e^{i (rho(m) + sigma(-m, n))} U^{n - m}.
      const double phase = rho + th.product_phase(neg, terms[j].m);
      out.push_back({terms[j].m - terms[i].m, g * ci * terms[j].c * std::polar(1.0, phase)});
    }
  }
  return x.with_terms(std::move(out));
}

TriebelFlavor triebel_flavor_from_name(const std::string& name) {
  if (name == "column" || name == "c") return TriebelFlavor::kColumn;
  if (name == "row" || name == "r") return TriebelFlavor::kRow;
  if (name == "mixture" || name == "cr") return TriebelFlavor::kMixture;
  throw InvalidInput("unknown Triebel-Lizorkin flavor '" + name + "' (column, row, mixture)");
}

namespace {

// |head| + ||s^{1/2}||_p for s = sum_i W_i (M_{psi_i} x)^* (M_{psi_i} x).
NormResult square_function_norm(const QElement& x, double head, const std::vector<double>& weights,
                                const std::vector<Symbol>& symbols, double p, const NormOptions& opts) {
  NormResult r;
  r.breakdown.push_back({"head", head});
  double root = 0.0;
  bool converged = true;
  if (p == 2.0 && opts.lp.exact_p2) {
    double acc = 0.0;
    for (const Term& t : x.terms()) {
      double g = 0.0;
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double v = symbols[i](t.m).real();
        g += weights[i] * v * v;
      }
      acc += g * std::norm(t.c);
    }
    root = std::sqrt(acc);
  } else if (!x.is_zero()) {
    LpResult lr = positive_root_norm(radial_square_sum(x, weights, symbols), p, opts.lp);
    converged = lr.converged || lr.exact;
    root = lr.value;
  }
  r.breakdown.push_back({"square function", root});
  r.diagnostics["lp_converged"] = converged;
  return finish(std::move(r));
}

NormResult triebel_column(const QElement& x, double alpha, double p, const NormOptions& opts) {
  std::vector<double> w;
  std::vector<Symbol> syms;
  if (auto range = block_range(x, opts.profile)) {
    for (int k = range->first; k <= range->second; ++k) {
      w.push_back(std::pow(2.0, 2.0 * k * alpha));
      syms.push_back(opts.profile.block_symbol(k));
    }
  }
  return square_function_norm(x, std::abs(x.mean()), w, syms, p, opts);
}

}  // namespace

NormResult triebel_norm(const QElement& x, double alpha, double p, TriebelFlavor flavor, const NormOptions& opts) {
  check_p(p);
  if (std::isinf(p)) throw DomainError("Triebel-Lizorkin norms with p = inf are not supported");
  switch (flavor) {
    case TriebelFlavor::kColumn: {
      NormResult r = triebel_column(x, alpha, p, opts);
      r.diagnostics["flavor"] = "column";
      return r;
    }
    case TriebelFlavor::kRow: {
      NormResult r = triebel_column(adjoint(x), alpha, p, opts);
      r.diagnostics["flavor"] = "row";
      return r;
    }
    case TriebelFlavor::kMixture:
      break;
  }
  NormResult r;
  bool converged = true;
  r.diagnostics["flavor"] = "mixture";
  if (p >= 2.0) {
    r.aggregation = Aggregation::kMax;
    NormResult c = triebel_column(x, alpha, p, opts);
    NormResult w = triebel_column(adjoint(x), alpha, p, opts);
    converged = c.diagnostics["lp_converged"].get<bool>() && w.diagnostics["lp_converged"].get<bool>();
    r.breakdown = {{"column", c.value}, {"row", w.value}};
  } else {
    // Infimum over x = y + z of ||y||_c + ||z||_r, over a fixed family of splits.
    r.aggregation = Aggregation::kMin;
    r.diagnostics["upper_bound"] = true;
    auto split_value = [&](const QElement& y, const QElement& z) {
      NormResult c = triebel_column(y, alpha, p, opts);
      NormResult w = triebel_column(adjoint(z), alpha, p, opts);
      converged = converged && c.diagnostics["lp_converged"].get<bool>() && w.diagnostics["lp_converged"].get<bool>();
      return c.value + w.value;
    };
    r.breakdown.push_back({"all column", split_value(x, x.zero_like())});
    r.breakdown.push_back({"all row", split_value(x.zero_like(), x)});
    for (int j = 0; j < x.dim(); ++j) {
      for (int sign : {1, -1}) {
        std::vector<Term> y, z;
        for (const Term& t : x.terms()) (sign * t.m[j] > 0 ? y : z).push_back(t);
        r.breakdown.push_back({"split axis " + std::to_string(j + 1) + (sign > 0 ? " +" : " -"),
                               split_value(x.with_terms(y), x.with_terms(z))});
      }
    }
  }
  r.diagnostics["lp_converged"] = converged;
  return finish(std::move(r));
}

NormResult triebel_norm_semigroup(const QElement& x, double alpha, double p, Semigroup kind, int k,
                                  const NormOptions& opts) {
  check_p(p);
  if (std::isinf(p)) throw DomainError("Triebel-Lizorkin norms with p = inf are not supported");
  const double gamma = semigroup_gamma(kind, alpha, k);
  Prepared prep = prepare_for_semigroup(x, kind, k);
  auto evaluate = [&](const QuadratureGrid& grid) {
    std::vector<QuadratureNode> nodes = grid.nodes();
    std::vector<double> w;
    std::vector<Symbol> syms;
    for (const QuadratureNode& n : nodes) {
      w.push_back(n.weight * std::pow(n.w, 2.0 * gamma));
      syms.push_back(node_symbol(kind, n.param, k));
    }
    // Tail below the last node, integrand ~ w^{2 gamma} |J^k S x|^2 with S x frozen.
    w.back() += std::pow(nodes.back().w, 2.0 * gamma) / (2.0 * gamma);
    NormResult r = square_function_norm(prep.x, prep.head, w, syms, p, opts);
    r.diagnostics["quad_points"] = nodes.size();
    return r;
  };
  QuadratureGrid grid = grid_for(kind, opts.quad);
  NormResult r = evaluate(grid);
  nlohmann::json deltas = nlohmann::json::array();
  bool quad_converged = !opts.quad.refine;
  for (int level = 0; opts.quad.refine && level < opts.quad.max_refinements; ++level) {
    grid = grid.refined();
    NormResult next = evaluate(grid);
    const double change = std::abs(next.value - r.value) / std::max(next.value, 1e-300);
    deltas.push_back(change);
    r = std::move(next);
    if (change <= opts.quad.rel_tol || r.value == 0.0) {
      quad_converged = true;
      break;
    }
  }
  r.diagnostics["method"] = semigroup_name(kind);
  r.diagnostics["k"] = k;
  r.diagnostics["flavor"] = "column";
  r.diagnostics["quad_deltas"] = deltas;
  r.diagnostics["quad_converged"] = quad_converged;
  return r;
}

nlohmann::json norm_result_to_json(const NormResult& r) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& c : r.breakdown) b.push_back({{"label", c.label}, {"amount", c.amount}});
  const char* agg = r.aggregation == Aggregation::kPowerSum ? "power_sum"
                    : r.aggregation == Aggregation::kMax   ? "max"
                    : r.aggregation == Aggregation::kSum   ? "sum"
                                                           : "min";
  nlohmann::json j = {{"value", r.value}, {"aggregation", agg}, {"breakdown", b}, {"diagnostics", r.diagnostics}};
  if (r.aggregation == Aggregation::kPowerSum) j["q"] = r.q;
  return j;
}

}  // namespace qtorus
