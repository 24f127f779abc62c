#include "qtorus/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qtorus/corpus.hpp"
#include "qtorus/error.hpp"
#include "qtorus/multipliers.hpp"

namespace qtorus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> normalized(std::vector<double> v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
  return v;
}

bool same_line(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::abs(std::abs(dot) - 1.0) < 1e-12;
}

void add_unique(std::vector<std::vector<double>>& dirs, std::vector<double> v) {
  v = normalized(std::move(v));
  for (const auto& w : dirs)
    if (same_line(v, w)) return;
  dirs.push_back(std::move(v));
}

std::vector<std::vector<double>> sphere_directions(int d, int n) {
  std::vector<std::vector<double>> dirs;
  if (d == 1) return {{1.0}};
  if (d == 2) {
    // Equispaced angles; antipodes have equal difference norms, keep [0, pi).
    for (int i = 0; 2 * i < n; ++i) {
      const double a = kTwoPi * i / n;
      add_unique(dirs, {std::cos(a), std::sin(a)});
    }
  } else if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / n;
      const double r = std::sqrt(1.0 - z * z);
      add_unique(dirs, {r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
  } else {
    SampleRng rng(mix_seed(0x5eed, static_cast<std::uint64_t>(d)));
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(static_cast<std::size_t>(d));
      for (auto& c : v) c = rng.normal();
      add_unique(dirs, std::move(v));
    }
  }
  for (int j = 0; j < d; ++j) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[j] = 1.0;
    add_unique(dirs, e);
  }
  add_unique(dirs, std::vector<double>(static_cast<std::size_t>(d), 1.0));
  return dirs;
}

std::vector<double> scaled(const std::vector<double>& v, double s) {
  std::vector<double> u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = s * v[i];
  return u;
}

std::vector<std::vector<double>> grid_directions(int d, const SmoothnessOptions& opts) {
  DirectionGrid g = DirectionGrid::standard(d, opts.sphere_points, opts.radial_points);
  return opts.refine ? g.refined().directions() : g.directions();
}

// (e^{2 pi i a} - 1) / (2 pi i a).
Complex cube_average(double a) {
  const double x = kTwoPi * a;
  if (std::abs(x) < 1e-4) return Complex(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  return (std::polar(1.0, x) - 1.0) / Complex(0.0, x);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double saturation_radius(int d) { return std::sqrt(static_cast<double>(d)) / 2.0; }

void check_order(int k) {
  if (k < 1) throw DomainError("difference order k must be >= 1");
}

}  // namespace

DirectionGrid DirectionGrid::standard(int d, int sphere_points, int radial_points) {
  if (d < 1) throw DomainError("direction grid needs d >= 1");
  if (sphere_points < 1 || radial_points < 1) throw DomainError("direction grid sizes must be positive");
  DirectionGrid g;
  g.d_ = d;
  g.sphere_points_ = sphere_points;
  g.directions_ = sphere_directions(d, sphere_points);
  for (int j = 1; j <= radial_points; ++j) g.radial_.push_back(static_cast<double>(j) / radial_points);
  return g;
}

DirectionGrid DirectionGrid::refined() const {
  DirectionGrid g = standard(d_, 2 * sphere_points_, 2 * static_cast<int>(radial_.size()));
  for (const auto& v : directions_) add_unique(g.directions_, v);
  g.level_ = level_ + 1;
  return g;
}

double difference_norm(const QElement& x, const std::vector<double>& u, int k, double p, const NormOptions& opts) {
  check_order(k);
  if (p == 2.0 && opts.lp.exact_p2) {
    if (u.size() != static_cast<std::size_t>(x.dim())) throw DimensionMismatch("shift has wrong dimension");
    double acc = 0.0;
    for (const Term& t : x.terms()) {
      double dot = 0.0;
      for (int j = 0; j < x.dim(); ++j) dot += u[j] * t.m[j];
      // |e^{i a} - 1| = 2 |sin(a/2)|.
      const double b = 2.0 * std::abs(std::sin(std::numbers::pi * dot));
      acc += std::pow(b, 2 * k) * std::norm(t.c);
    }
    return std::sqrt(acc);
  }
  return lp_norm(difference(x, u, k), p, opts.lp).value;
}

ModulusResult modulus(const QElement& x, int k, double eps, double p, const SmoothnessOptions& opts) {
  check_order(k);
  if (!(eps > 0.0)) throw DomainError("modulus radius eps must be positive");
  auto sup_over = [&](const DirectionGrid& g) {
    double best = 0.0;
    for (const auto& v : g.directions())
      for (double rho : g.radial_fractions()) best = std::max(best, difference_norm(x, scaled(v, rho * eps), k, p, opts.norm));
    return best;
  };
  ModulusResult r;
  DirectionGrid g = DirectionGrid::standard(x.dim(), opts.sphere_points, opts.radial_points);
  r.base_value = sup_over(g);
  r.value = r.base_value;
  if (opts.refine && !x.is_zero()) {
    r.value = std::max(r.base_value, sup_over(g.refined()));
    r.change = r.value > 0.0 ? (r.value - r.base_value) / r.value : 0.0;
    r.stable = r.change <= opts.refine_tol;
  }
  return r;
}

std::vector<double> modulus_profile(const QElement& x, int k, double p, const std::vector<double>& radii,
                                    const SmoothnessOptions& opts) {
  check_order(k);
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("modulus profile radii must be ascending");
  const auto dirs = grid_directions(x.dim(), opts);
  std::vector<double> out(radii.size(), 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!x.is_zero())
      for (const auto& v : dirs) running = std::max(running, difference_norm(x, scaled(v, radii[i]), k, p, opts.norm));
    out[i] = running;
  }
  return out;
}

ModulusSeries modulus_series(const QElement& x, int k, double p, const QuadratureGrid& grid,
                             const SmoothnessOptions& opts) {
  check_order(k);
  ModulusSeries e;
  e.k = k;
  e.mean_abs = std::abs(x.mean());
  auto nodes = grid.nodes();
  std::reverse(nodes.begin(), nodes.end());
  for (const auto& n : nodes) {
    e.eps.push_back(n.w);
    e.weight.push_back(n.weight);
  }
  e.omega = modulus_profile(x, k, p, e.eps, opts);
  return e;
}

namespace {

// int_0^1 eps^{-alpha q} omega^q deps/eps with the small-eps tail omega ~ c eps^k.
double diff_integral(const ModulusSeries& e, double alpha, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.eps.size(); ++i) s += e.weight[i] * std::pow(e.eps[i], -alpha * q) * std::pow(e.omega[i], q);
  s += std::pow(e.eps.front(), -alpha * q) * std::pow(e.omega.front(), q) / ((e.k - alpha) * q);
  return s;
}

void check_diff_alpha(double alpha, int k) {
  if (!(alpha > 0.0 && alpha < k))
    throw DomainError("difference characterization requires 0 < alpha < k; got alpha=" + std::to_string(alpha) +
                      ", k=" + std::to_string(k));
}

}  // namespace

NormResult besov_from_modulus(const ModulusSeries& e, double alpha, double q, bool include_mean) {
  check_diff_alpha(alpha, e.k);
  if (std::isnan(q) || q <= 0.0) throw DomainError("exponent q must be positive");
  NormResult r;
  r.q = q;
  const double mean = include_mean ? e.mean_abs : 0.0;
  if (std::isinf(q)) {
    r.aggregation = Aggregation::kMax;
    double sup = 0.0;
    for (std::size_t i = 0; i < e.eps.size(); ++i) sup = std::max(sup, std::pow(e.eps[i], -alpha) * e.omega[i]);
    r.breakdown = {{"mean", mean}, {"sup", sup}};
  } else {
    r.aggregation = Aggregation::kPowerSum;
    r.breakdown = {{"mean", std::pow(mean, q)}, {"integral", diff_integral(e, alpha, q)}};
  }
  r.value = r.aggregate();
  r.diagnostics["quad_points"] = e.eps.size();
  return r;
}

NormResult besov_diff_norm(const QElement& x, double alpha, double p, double q, int k, bool include_mean,
                           const SmoothnessOptions& opts) {
  check_order(k);
  check_diff_alpha(alpha, k);
  const QuadControl& qc = opts.norm.quad;
  QuadratureGrid grid = QuadratureGrid::eps(qc.w_min, qc.points);
  NormResult r = besov_from_modulus(modulus_series(x, k, p, grid, opts), alpha, q, include_mean);
  nlohmann::json deltas = nlohmann::json::array();
  bool converged = !qc.refine;
  for (int level = 0; qc.refine && level < qc.max_refinements; ++level) {
    grid = grid.refined();
    NormResult next = besov_from_modulus(modulus_series(x, k, p, grid, opts), alpha, q, include_mean);
    const double change = std::abs(next.value - r.value) / std::max(next.value, 1e-300);
    deltas.push_back(change);
    r = std::move(next);
    if (change <= qc.rel_tol || r.value == 0.0) {
      converged = true;
      break;
    }
  }
  r.diagnostics["method"] = "diff";
  r.diagnostics["k"] = k;
  r.diagnostics["quad_deltas"] = deltas;
  r.diagnostics["quad_converged"] = converged;
  return r;
}

LimitTable limit_scan(const QElement& x, int k, double p, double q, LimitEnd end, const std::vector<double>& alphas,
                      const SmoothnessOptions& opts) {
  check_order(k);
  if (std::isinf(q) || !(q > 0.0)) throw DomainError("limit scans need a finite q > 0");
  for (double a : alphas)
    if (!(a > 0.0 && a < k)) throw DomainError("limit scan alphas must lie in (0, k)");
  const QuadControl& qc = opts.norm.quad;
  ModulusSeries e = modulus_series(x, k, p, QuadratureGrid::eps(qc.w_min, qc.points), opts);
  // Beyond eps = 1 (alpha -> 0 only): the modulus saturates at sqrt(d)/2.
  ModulusSeries far;
  const double R = saturation_radius(x.dim());
  if (end == LimitEnd::kAlphaToZero && R > 1.0) {
    const int n = 33;
    far.weight = simpson_weights(0.0, std::log(R), n);
    for (int i = 0; i < n; ++i) far.eps.push_back(std::exp(std::log(R) * i / (n - 1)));
    far.omega = modulus_profile(x, k, p, far.eps, opts);
    for (double& w : far.omega) w = std::max(w, e.omega.back());
  }
  double target = 0.0;
  if (end == LimitEnd::kAlphaToK) {
    target = std::pow(q, -1.0 / q) * sobolev_norm(x, k, p, true, opts.norm).value;
  } else {
    target = std::pow(q, -1.0 / q) * lp_norm(x, p, opts.norm.lp).value;
  }
  LimitTable t;
  for (double a : alphas) {
    double integral = diff_integral(e, a, q);
    double scale = 0.0;
    if (end == LimitEnd::kAlphaToK) {
      scale = std::pow(k - a, 1.0 / q);
    } else {
      scale = std::pow(a, 1.0 / q);
      double omega_top = e.omega.back();
      double top = 1.0;
      for (std::size_t i = 0; i < far.eps.size(); ++i)
        integral += far.weight[i] * std::pow(far.eps[i], -a * q) * std::pow(far.omega[i], q);
      if (!far.eps.empty()) {
        omega_top = far.omega.back();
        top = far.eps.back();
      }
      integral += std::pow(omega_top, q) * std::pow(top, -a * q) / (a * q);
    }
    LimitRow row;
    row.alpha = a;
    row.scaled = scale * std::pow(integral, 1.0 / q);
    row.target = target;
    row.ratio = target > 0.0 ? row.scaled / target : (row.scaled == 0.0 ? 1.0 : kInf);
    t.rows.push_back(row);
  }
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    t.successive_differences.push_back(std::abs(t.rows[i].scaled - t.rows[i - 1].scaled));
  t.cauchy_decreasing = true;
  for (std::size_t i = 1; i < t.successive_differences.size(); ++i)
    if (!(t.successive_differences[i] <= t.successive_differences[i - 1])) t.cauchy_decreasing = false;
  return t;
}

LipschitzTable lipschitz_ratio(const QElement& x, int k, double p, const std::vector<double>& eps_list,
                               const SmoothnessOptions& opts) {
  check_order(k);
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) throw DomainError("lipschitz_ratio needs a decreasing eps list");
  const double semi = sobolev_norm(x, k, p, true, opts.norm).value;
  LipschitzTable t;
  for (double eps : eps_list) {
    LipschitzRow row;
    row.eps = eps;
    row.quotient = modulus(x, k, eps, p, opts).value / std::pow(eps, k);
    row.seminorm = semi;
    row.ratio = semi > 0.0 ? row.quotient / semi : (row.quotient == 0.0 ? 1.0 : kInf);
    if (!t.rows.empty() && row.quotient < t.rows.back().quotient * (1.0 - opts.refine_tol)) t.increasing = false;
    t.rows.push_back(row);
  }
  return t;
}

Complex averaged_difference_symbol(const MultiIndex& m, double eps, int k) {
  Complex s{};
  for (int j = 0; j <= k; ++j) {
    Complex avg(1.0);
    for (int v : m) avg *= cube_average(j * eps * v);
    s += binomial(k, j) * (j % 2 ? -1.0 : 1.0) * std::pow(avg, k);
  }
  return s;
}

namespace {

double k2_oracle(const QElement& x, double t, int k) {
  double acc = 0.0;
  for (const Term& term : x.terms()) {
    // w(m)^2 = sum_{|mu|_1 <= k} (2 pi)^{2|mu|_1} m^{2 mu} = sum_{j<=k} (4 pi^2)^j h_j(m_1^2, .., m_d^2),
    // with h_j the complete homogeneous symmetric polynomial.
    std::vector<double> h(static_cast<std::size_t>(k + 1), 0.0);
    h[0] = 1.0;
    for (int v : term.m) {
      const double a = static_cast<double>(v) * v;
      for (int j = 1; j <= k; ++j) h[j] += a * h[j - 1];
    }
    double w2 = 0.0;
    double f = 1.0;
    for (int j = 0; j <= k; ++j) {
      w2 += f * h[j];
      f *= kTwoPi * kTwoPi;
    }
    const double tw2 = t * t * w2;
    acc += std::norm(term.c) * tw2 / (1.0 + tw2);
  }
  return std::sqrt(acc);
}

}  // namespace

KFunctionalResult k_functional(const QElement& x, double t, int k, double p, KMode mode,
                               const SmoothnessOptions& opts) {
  check_order(k);
  if (!(t > 0.0)) throw DomainError("K-functional parameter t must be positive");
  KFunctionalResult r;
  const double eps = std::pow(t, 1.0 / k);
  switch (mode) {
    case KMode::kL2Oracle: {
      if (p != 2.0) throw DomainError("the K-functional oracle is available only for p = 2");
      r.value = k2_oracle(x, t, k);
      r.lower = r.value;
      r.upper = std::sqrt(2.0) * r.value;
      break;
    }
    case KMode::kUpperCertificate: {
      Symbol avg{"averaged-difference",
                 [eps, k](const MultiIndex& m) { return averaged_difference_symbol(m, eps, k); }, {}, {}};
      const QElement y = apply(avg, x);
      const QElement z = x - y;
      const double ny = lp_norm(y, p, opts.norm.lp).value;
      const double nz = sobolev_norm(z, k, p, false, opts.norm).value;
      r.value = ny + t * nz;
      r.diagnostics["y_norm"] = ny;
      r.diagnostics["z_sobolev_norm"] = nz;
      r.diagnostics["decomposition"] = "averaged-difference";
      if (t >= 1.0) {
        const double nx = lp_norm(x, p, opts.norm.lp).value;
        if (nx < r.value) {
          r.value = nx;
          r.diagnostics["decomposition"] = "trivial";
        }
      }
      r.lower = 0.0;
      r.upper = r.value;
      break;
    }
    case KMode::kEquivalence: {
      if (p != 2.0) throw DomainError("the K-functional equivalence check is available only for p = 2");
      const double k2 = k2_oracle(x, t, k);
      const double omega = modulus(x, k, eps, 2.0, opts).value;
      const double reference = t * std::abs(x.mean()) + omega;
      r.value = k2 > 0.0 ? reference / k2 : (reference == 0.0 ? 1.0 : kInf);
      r.lower = k2;
      r.upper = std::sqrt(2.0) * k2;
      r.diagnostics["reference"] = reference;
      r.diagnostics["omega"] = omega;
      r.diagnostics["K2"] = k2;
      break;
    }
  }
  return r;
}

std::vector<MarchaudRow> marchaud_check(const QElement& x, const std::vector<std::pair<int, int>>& pairs, double p,
                                        const std::vector<double>& eps_list, const SmoothnessOptions& opts,
                                        double slack) {
  for (const auto& [n, N] : pairs)
    if (!(n >= 1 && n < N)) throw DomainError("Marchaud check requires 1 <= n < N");
  for (double eps : eps_list)
    if (!(eps > 0.0)) throw DomainError("Marchaud radii must be positive");
  if (eps_list.empty()) return {};
  const double R = saturation_radius(x.dim());
  // Radii: every eps plus a geometric grid with ratio 2^{1/4} from the smallest eps to R.
  std::vector<double> radii(eps_list.begin(), eps_list.end());
  const double lo = *std::min_element(eps_list.begin(), eps_list.end());
  for (double r = lo; r < R; r *= std::pow(2.0, 0.25)) radii.push_back(r);
  radii.push_back(R);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::map<int, std::vector<double>> profile;
  for (const auto& [n, N] : pairs)
    for (int order : {n, N})
      if (!profile.count(order)) profile[order] = modulus_profile(x, order, p, radii, opts);
  auto at = [&](const std::vector<double>& om, double r) {
    return om[static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), r) - radii.begin())];
  };
  std::vector<MarchaudRow> rows;
  for (const auto& [n, N] : pairs) {
    const auto& omN = profile[N];
    const auto& omn = profile[n];
    for (double eps : eps_list) {
      MarchaudRow row;
      row.n = n;
      row.N = N;
      row.eps = eps;
      row.lower_lhs = std::ldexp(at(omN, eps), n - N);
      row.omega_n = at(omn, eps);
      row.lower_ok = row.lower_lhs <= slack * row.omega_n;
      // Trapezoid in log delta over [eps, R], then the saturated tail beyond R.
      double integral = 0.0;
      double top = eps;
      std::size_t i = static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), eps) - radii.begin());
      for (; i + 1 < radii.size(); ++i) {
        const double f0 = omN[i] * std::pow(radii[i], -n), f1 = omN[i + 1] * std::pow(radii[i + 1], -n);
        integral += 0.5 * (f0 + f1) * std::log(radii[i + 1] / radii[i]);
      }
      top = std::max(top, radii.back());
      integral += omN.back() * std::pow(top, -n) / n;
      row.upper_rhs = std::pow(eps, n) * integral;
      row.upper_constant = row.upper_rhs > 0.0 ? row.omega_n / row.upper_rhs : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::pair<double, double> interpolation_sides(const QElement& x, int j, double p, const NormOptions& opts) {
  if (j < 0 || j >= x.dim()) throw DomainError("coordinate index out of range");
  MultiIndex e1(static_cast<std::size_t>(x.dim()));
  e1[j] = 1;
  MultiIndex e2 = e1 + e1;
  const double d1 = lp_norm(derivative(x, e1), p, opts.lp).value;
  const double d0 = lp_norm(x, p, opts.lp).value;
  const double d2 = lp_norm(derivative(x, e2), p, opts.lp).value;
  return {d1, 2.0 * std::sqrt(d0 * d2)};
}

std::pair<double, double> second_order_poincare_sides(const QElement& x, int j, double p, const NormOptions& opts) {
  if (j < 0 || j >= x.dim()) throw DomainError("coordinate index out of range");
  for (const Term& t : x.terms())
    if (t.m[j] == 0)
      throw DomainError("second-order Poincare inequality needs m_j != 0 on the support; found " + t.m.str());
  Symbol sq{"m_j^2", [j](const MultiIndex& m) { return Complex(static_cast<double>(m[j]) * m[j]); }, {}, {}};
  return {lp_norm(x, p, opts.lp).value, kSecondOrderPoincareConstant * lp_norm(apply(sq, x), p, opts.lp).value};
}

}  // namespace qtorus
