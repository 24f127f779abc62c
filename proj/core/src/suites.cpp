#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "qtorus/error.hpp"
#include "qtorus/littlewood_paley.hpp"
#include "qtorus/norm_request.hpp"
#include "qtorus/smoothness.hpp"
#include "qtorus/spaces.hpp"
#include "suite_registry.hpp"

namespace qtorus::detail {
namespace {

using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> exponents(const Json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const Json& e : v) out.push_back(parse_exponent(e));
  } else {
    out.push_back(parse_exponent(v));
  }
  if (out.empty()) throw InvalidInput("empty parameter list");
  return out;
}

std::vector<double> numbers(const Json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const Json& e : v) out.push_back(e.get<double>());
  } else {
    out.push_back(v.get<double>());
  }
  if (out.empty()) throw InvalidInput("empty parameter list");
  return out;
}

std::vector<double> dyadic(int from, int to) {
  std::vector<double> out;
  for (int j = from; j <= to; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

// Largest N <= 2 * degree whose window has at most 289 points.
int default_truncation(const CorpusSpec& c) {
  int N = std::max(1, 2 * c.max_degree);
  while (N > 1 && window_size(c.d, N) > 289) --N;
  return N;
}

bool needs_matrices(const Json& r, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (!r.contains(key)) continue;
    for (double p : exponents(r.at(key)))
      if (p != 2.0) return true;
  }
  return false;
}

NormOptions norm_options(const Json& r) {
  NormOptions o;
  const int N = r.at("truncation").get<int>();
  if (N > 0) {
    o.lp.schedule = {N};
    o.lp.extrapolate = false;
    o.lp.extend = false;
  }
  o.quad.points = r.at("quad_points").get<int>();
  o.quad.refine = false;
  return o;
}

SmoothnessOptions smooth_options(const Json& r) {
  SmoothnessOptions s;
  s.norm = norm_options(r);
  s.sphere_points = r.at("sphere_points").get<int>();
  s.refine = r.at("refine_grid").get<bool>();
  return s;
}

// Common numerical controls; p != 2 selects a fixed raw truncation and coarse grids.
Json numeric_defaults(const Json& user, const CorpusSpec& c, std::initializer_list<const char*> exponent_keys,
                      const Json& base) {
  Json probe = base;
  probe.merge_patch(user);
  const bool matrices = needs_matrices(probe, exponent_keys);
  Json d = base;
  d["truncation"] = matrices ? default_truncation(c) : 0;
  d["quad_points"] = matrices ? 17 : 65;
  d["sphere_points"] = matrices ? 16 : 64;
  d["refine_grid"] = !matrices;
  return d;
}

void check_p(double p, const char* name = "p") {
  if (!(p >= 1.0)) throw InvalidInput(std::string(name) + " must lie in [1, inf]");
}

void check_numeric(const Json& r) {
  if (r.at("truncation").get<int>() < 0) throw InvalidInput("truncation must be >= 0");
  const int qp = r.at("quad_points").get<int>();
  if (qp < 5 || qp % 2 == 0) throw InvalidInput("quad_points must be odd and >= 5");
  if (r.at("sphere_points").get<int>() < 1) throw InvalidInput("sphere_points must be positive");
}

Json p_json(const Json& r, const char* key = "p") { return exponent_to_json(parse_exponent(r.at(key))); }

ReportRow make_row(std::string group, Json params, double lhs, double rhs) {
  ReportRow row;
  row.group = std::move(group);
  row.params = std::move(params);
  row.lhs = lhs;
  row.rhs = rhs;
  if (rhs > 0.0) {
    row.ratio = lhs / rhs;
  } else {
    row.ratio = lhs == 0.0 ? 1.0 : kInf;
    row.included = lhs != 0.0;
  }
  return row;
}

void add_truncation(ReportRow& row, const Json& r) {
  if (r.at("truncation").get<int>() > 0) row.diag["truncation_N"] = r.at("truncation");
}

MultiIndex axis(int d, int j) { return MultiIndex::unit(static_cast<std::size_t>(d), static_cast<std::size_t>(j)); }

QElement without_mean(const QElement& x) { return strip_mean(x).second; }

// Smallest admissible order for a characterization.
int auto_order(const std::string& method, double alpha) {
  if (method == "heat" || method == "circular-heat") return static_cast<int>(std::floor(alpha / 2.0)) + 1;
  if (method == "diff") return std::max(1, static_cast<int>(std::floor(alpha)) + 1);
  return static_cast<int>(std::floor(alpha)) + 1;
}

int order_for(const Json& r, const std::string& method, double alpha) {
  const Json& k = r.at("k");
  if (k.is_string()) {
    if (k.get<std::string>() != "auto") throw InvalidInput("k must be an integer or \"auto\"");
    return auto_order(method, alpha);
  }
  return k.get<int>();
}

void check_order(const std::string& method, double alpha, int k) {
  if (method == "diff") {
    if (!(alpha > 0.0 && alpha < k)) throw InvalidInput("difference characterization requires 0 < alpha < k");
    return;
  }
  (void)semigroup_gamma(semigroup_from_name(method), alpha, k);
}

Bound spread(const Json& r) { return {BoundKind::kSpread, 0.0, r.at("spread").get<double>(), 1.0}; }

// Sampled smooth radial symbol with phi(0) = 0, fixed by (seed, sample id).
struct RadialSymbol {
  double a0, a1, omega, decay;
  double operator()(double t) const { return (1.0 - std::exp(-t * t)) * (a0 + a1 * std::cos(omega * t)) * std::exp(-decay * t); }
};

RadialSymbol sample_symbol(std::uint64_t seed, std::size_t id) {
  SampleRng rng(mix_seed(seed, id));
  return {0.5 + rng.uniform(), 2.0 * rng.uniform() - 1.0, 0.2 + 2.0 * rng.uniform(), 0.05 * rng.uniform()};
}

// Lattice points of the ball |m| <= R in Z^d.
std::vector<MultiIndex> ball(int d, double R) {
  const int r = static_cast<int>(std::floor(R));
  std::vector<MultiIndex> out;
  MultiIndex m(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) m[j] = -r;
  while (true) {
    if (m.norm() <= R) out.push_back(m);
    int j = d - 1;
    while (j >= 0 && m[j] == r) m[j--] = -r;
    if (j < 0) break;
    ++m[j];
  }
  return out;
}

// Upper bound for the L_p multiplier norm of a finitely supported symbol: the L_1 norm of
// its kernel on T^d (the multiplier averages trace preserving automorphisms), sampled on
// a grid four times finer than the kernel's frequency box.
double kernel_l1_norm(int d, const std::vector<std::pair<MultiIndex, double>>& coeffs) {
  int R = 0;
  for (const auto& [m, c] : coeffs) R = std::max(R, m.max_abs());
  const int width = 2 * R + 1;
  int G = 4 * width;
  while (G > 8 && std::pow(static_cast<double>(G), d) > 2e6) G /= 2;
  // Dense tensor over frequencies, transformed axis by axis to grid values.
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(width);
  std::vector<Complex> data(total, 0.0);
  for (const auto& [m, c] : coeffs) {
    std::size_t idx = 0;
    for (int j = 0; j < d; ++j) idx = idx * width + static_cast<std::size_t>(m[j] + R);
    data[idx] += c;
  }
  std::vector<std::size_t> dims(static_cast<std::size_t>(d), static_cast<std::size_t>(width));
  for (int axis_j = 0; axis_j < d; ++axis_j) {
    std::size_t inner = 1;
    for (int j = axis_j + 1; j < d; ++j) inner *= dims[j];
    std::size_t outer = 1;
    for (int j = 0; j < axis_j; ++j) outer *= dims[j];
    const std::size_t n_in = dims[axis_j];
    std::vector<Complex> next(outer * G * inner);
    std::vector<Complex> tw(static_cast<std::size_t>(G) * n_in);
    for (int g = 0; g < G; ++g)
      for (std::size_t f = 0; f < n_in; ++f)
        tw[g * n_in + f] = std::polar(1.0, 2.0 * kPi * g * (static_cast<double>(f) - R) / G);
    for (std::size_t o = 0; o < outer; ++o)
      for (int g = 0; g < G; ++g)
        for (std::size_t i = 0; i < inner; ++i) {
          Complex s = 0.0;
          for (std::size_t f = 0; f < n_in; ++f) s += tw[g * n_in + f] * data[(o * n_in + f) * inner + i];
          next[(o * G + g) * inner + i] = s;
        }
    data.swap(next);
    dims[axis_j] = static_cast<std::size_t>(G);
  }
  double acc = 0.0;
  for (const Complex& v : data) acc += std::abs(v);
  return acc / static_cast<double>(data.size());
}

std::vector<QElement> coordinate_probes(const CorpusSpec& c) {
  std::vector<QElement> out;
  for (int j = 0; j < c.d; ++j)
    out.push_back(monomial(sample_theta(c, static_cast<std::size_t>(c.sample_count + j)), axis(c.d, j)));
  return out;
}

std::vector<SuiteDef> build_registry() {
  std::vector<SuiteDef> reg;

  // ||x - x^(0)||_p <= C |x|_{W^1_p}; sharp constant 1/(2 pi) at p = 2.
  reg.push_back(SuiteDef{
      "poincare",
      "||x - x^(0)||_p against |x|_{W^1_p}",
      [](const Json& u, const CorpusSpec& c) { return numeric_defaults(u, c, {"p"}, {{"p", 2}}); },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const NormOptions o = norm_options(r);
        const double lhs = lp_norm(without_mean(x), p, o.lp).value;
        const double rhs = sobolev_norm(x, 1, p, true, o).value;
        ReportRow row = make_row("poincare", {{"p", p_json(r)}}, lhs, rhs);
        add_truncation(row, r);
        return std::vector<ReportRow>{row};
      },
      [](const Json& r) {
        if (parse_exponent(r.at("p")) == 2.0) return Bound{BoundKind::kUpper, 0.0, 1.0 / (2.0 * kPi), 1.0 + 1e-10};
        return Bound{};
      },
      [](const CorpusSpec& c, const Json&) { return coordinate_probes(c); },
      [](InequalityReport& rep) {
        if (parse_exponent(rep.params.at("p")) != 2.0) return;
        const double target = 1.0 / (2.0 * kPi);
        const bool ok = std::abs(rep.max_ratio - target) <= 1e-10;
        rep.checks.push_back({"sharp constant attained", ok,
                              "max ratio " + fmt(rep.max_ratio) + " against 1/(2 pi) = " + fmt(target)});
      },
      {"coordinate unitaries U_j are appended after the corpus as extremal probes"}});

  reg.push_back(SuiteDef{
      "seminorm_monotone",
      "|x|_{W^k_p} against |x|_{W^{k+1}_p}",
      [](const Json& u, const CorpusSpec& c) { return numeric_defaults(u, c, {"p"}, {{"p", 2}, {"k", 1}}); },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        if (r.at("k").get<int>() < 0) throw InvalidInput("k must be >= 0");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const int k = r.at("k").get<int>();
        const NormOptions o = norm_options(r);
        ReportRow row = make_row("monotone", {{"p", p_json(r)}, {"k", k}}, sobolev_norm(x, k, p, true, o).value,
                                 sobolev_norm(x, k + 1, p, true, o).value);
        add_truncation(row, r);
        return std::vector<ReportRow>{row};
      },
      [](const Json&) { return Bound{}; },
      nullptr,
      nullptr,
      {"ratios are recorded; the constant is not asserted"}});

  // J^beta and I^beta as isomorphisms between potential / Besov scales.
  reg.push_back(SuiteDef{
      "lifting",
      "||J^beta x||_{B^{alpha-beta}} / ||x||_{B^alpha} and ||I^beta x'||_{H^{alpha-beta}} / ||x'||_{H^alpha}",
      [](const Json& u, const CorpusSpec& c) {
        Json base = {{"p", 2}, {"q", 2}, {"alpha", 0.5}, {"beta", 1.0}};
        Json probe = base;
        probe.merge_patch(u);
        base["spread"] = parse_exponent(probe.at("p")) == 2.0 ? 4.0 : 10.0;
        return numeric_defaults(u, c, {"p"}, base);
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        if (!(parse_exponent(r.at("q")) > 0.0)) throw InvalidInput("q must be positive");
        (void)r.at("alpha").get<double>();
        (void)r.at("beta").get<double>();
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const double q = parse_exponent(r.at("q"));
        const double a = r.at("alpha").get<double>();
        const double b = r.at("beta").get<double>();
        const NormOptions o = norm_options(r);
        Json params = {{"p", p_json(r)}, {"q", p_json(r, "q")}, {"alpha", a}, {"beta", b}};
        std::vector<ReportRow> rows;
        rows.push_back(make_row("bessel_besov", params, besov_norm(bessel_potential(x, b), a - b, p, q, o).value,
                                besov_norm(x, a, p, q, o).value));
        const QElement y = without_mean(x);
        rows.push_back(make_row("riesz_potential", params,
                                potential_norm(riesz_potential(y, b), a - b, p, o).value,
                                potential_norm(y, a, p, o).value));
        for (auto& row : rows) add_truncation(row, r);
        return rows;
      },
      spread,
      nullptr,
      nullptr,
      {"riesz rows use x without its mean"}});

  // B_{p,min(p,2)} in H_p in B_{p,max(p,2)}.
  reg.push_back(SuiteDef{
      "sandwich",
      "||x||_{H^alpha_p} / ||x||_{B^alpha_{p,min(p,2)}} and ||x||_{B^alpha_{p,max(p,2)}} / ||x||_{H^alpha_p}",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p"}, {{"p", 2}, {"alpha", 1.0}, {"constant", nullptr}});
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        (void)r.at("alpha").get<double>();
        if (!r.at("constant").is_null() && !(r.at("constant").get<double>() > 0.0))
          throw InvalidInput("constant must be positive or null");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const double a = r.at("alpha").get<double>();
        const NormOptions o = norm_options(r);
        const double qmin = std::min(p, 2.0), qmax = std::max(p, 2.0);
        const BlockNorms blocks = besov_blocks(x, p, o);
        const double h = potential_norm(x, a, p, o).value;
        const double bmin = besov_from_blocks(blocks, a, qmin).value;
        const double bmax = besov_from_blocks(blocks, a, qmax).value;
        Json params = {{"p", p_json(r)}, {"alpha", a}};
        std::vector<ReportRow> rows;
        rows.push_back(make_row("H/B_min", params, h, bmin));
        rows.push_back(make_row("B_max/H", params, bmax, h));
        if (p == 2.0) {
          // B^alpha_{2,2} and H^alpha_2 as Plancherel sums with their weights.
          double b2 = 0.0, h2 = 0.0;
          for (const Term& t : x.terms()) {
            double w = t.m.is_zero() ? 1.0 : 0.0;
            for (int k = 0; k <= 64; ++k) {
              const double ph = o.profile.phi_block(t.m, k);
              w += std::pow(4.0, k * a) * ph * ph;
            }
            b2 += w * std::norm(t.c);
            h2 += std::pow(1.0 + t.m.norm_sq(), a) * std::norm(t.c);
          }
          const double dev = std::max(std::abs(std::sqrt(b2) - bmin) / std::max(1.0, bmin),
                                      std::abs(std::sqrt(h2) - h) / std::max(1.0, h));
          for (auto& row : rows) row.diag["plancherel_dev"] = dev;
        }
        for (auto& row : rows) add_truncation(row, r);
        return rows;
      },
      [](const Json& r) {
        if (r.at("constant").is_null()) return Bound{};
        return Bound{BoundKind::kUpper, 0.0, r.at("constant").get<double>(), 1.0};
      },
      nullptr,
      [](InequalityReport& rep) {
        if (parse_exponent(rep.params.at("p")) != 2.0) return;
        double worst = 0.0;
        for (const auto& row : rep.rows)
          if (row.diag.contains("plancherel_dev")) worst = std::max(worst, row.diag["plancherel_dev"].get<double>());
        rep.checks.push_back({"Plancherel weights", worst <= 1e-10, "max relative deviation " + fmt(worst)});
      },
      {"the inclusion constants are existential; set \"constant\" to assert one"}});

  // Every Besov characterization against the block norm.
  reg.push_back(SuiteDef{
      "besov_equiv",
      "characterization / block norm per (alpha, q)",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(
            u, c, {"p"}, {{"p", 2}, {"q", 2}, {"alpha", 0.5}, {"method", "poisson"}, {"k", "auto"}, {"spread", 10.0}});
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        for (double q : exponents(r.at("q")))
          if (!(q > 0.0)) throw InvalidInput("q must be positive");
        const std::string method = r.at("method");
        if (method != "diff") (void)semigroup_from_name(method);
        for (double a : numbers(r.at("alpha"))) check_order(method, a, order_for(r, method, a));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const std::string method = r.at("method");
        const NormOptions o = norm_options(r);
        const BlockNorms blocks = besov_blocks(x, p, o);
        std::map<int, SemigroupSeries> series;
        std::map<int, ModulusSeries> moduli;
        std::vector<ReportRow> rows;
        for (double a : numbers(r.at("alpha"))) {
          const int k = order_for(r, method, a);
          for (double q : exponents(r.at("q"))) {
            NormResult lhs;
            if (method == "diff") {
              if (!moduli.count(k))
                moduli[k] = modulus_series(x, k, p, QuadratureGrid::eps(o.quad.w_min, o.quad.points), smooth_options(r));
              lhs = besov_from_modulus(moduli[k], a, q);
            } else {
              const Semigroup kind = semigroup_from_name(method);
              if (!series.count(k)) {
                const QuadratureGrid grid(is_circular(kind) ? QuadratureGrid::Variable::kRadius
                                                            : QuadratureGrid::Variable::kEps,
                                          o.quad.w_min, o.quad.points);
                series.emplace(k, semigroup_series(x, p, kind, k, grid, o));
              }
              lhs = besov_from_series(series.at(k), a, q);
            }
            const double rhs = besov_from_blocks(blocks, a, q).value;
            ReportRow row = make_row("alpha=" + fmt(a) + ",q=" + fmt(q),
                                     {{"p", p_json(r)}, {"q", exponent_to_json(q)}, {"alpha", a}, {"k", k},
                                      {"method", method}},
                                     lhs.value, rhs);
            add_truncation(row, r);
            rows.push_back(std::move(row));
          }
        }
        return rows;
      },
      spread,
      nullptr,
      nullptr,
      {"equivalence constants are existential; each (alpha, q) group asserts a bounded spread"}});

  reg.push_back(SuiteDef{
      "triebel_equiv",
      "semigroup square function / block Triebel-Lizorkin norm per alpha; hardy: F^{0,c}_p against H^c_p",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p"},
                                {{"p", 2}, {"alpha", 0.5}, {"method", "poisson"}, {"flavor", "column"},
                                 {"k", "auto"}, {"spread", 10.0}});
      },
      [](const Json& r, const CorpusSpec&) {
        const double p = parse_exponent(r.at("p"));
        check_p(p);
        if (std::isinf(p)) throw InvalidInput("triebel_equiv needs a finite p");
        (void)triebel_flavor_from_name(r.at("flavor"));
        const std::string method = r.at("method");
        if (method == "hardy") return;
        if (method != "poisson" && method != "heat") throw InvalidInput("method must be poisson, heat or hardy");
        for (double a : numbers(r.at("alpha"))) check_order(method, a, order_for(r, method, a));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const std::string method = r.at("method");
        const TriebelFlavor flavor = triebel_flavor_from_name(r.at("flavor"));
        const NormOptions o = norm_options(r);
        std::vector<ReportRow> rows;
        if (method == "hardy") {
          // Column Hardy norm through the Poisson square function (k = 1, alpha = 0).
          const double h = triebel_norm_semigroup(x, 0.0, p, Semigroup::kPoisson, 1, o).value;
          const double f = triebel_norm(x, 0.0, p, flavor, o).value;
          rows.push_back(make_row("hardy", {{"p", p_json(r)}, {"alpha", 0}, {"flavor", r.at("flavor")}}, h, f));
        } else {
          for (double a : numbers(r.at("alpha"))) {
            const int k = order_for(r, method, a);
            const double lhs = triebel_norm_semigroup(x, a, p, semigroup_from_name(method), k, o).value;
            const double rhs = triebel_norm(x, a, p, flavor, o).value;
            rows.push_back(make_row("alpha=" + fmt(a),
                                    {{"p", p_json(r)}, {"alpha", a}, {"k", k}, {"method", method},
                                     {"flavor", r.at("flavor")}},
                                    lhs, rhs));
          }
        }
        for (auto& row : rows) add_truncation(row, r);
        return rows;
      },
      spread,
      nullptr,
      nullptr,
      {"row and mixture flavors for p < 2 are upper bounds over a finite family of decompositions"}});

  // ||x||_{B^{alpha1}_{p1,q}} against ||x||_{B^alpha_{p,q}} with alpha - d/p = alpha1 - d/p1.
  reg.push_back(SuiteDef{
      "besov_embedding",
      "||x||_{B^{alpha1}_{p1,q}} / ||x||_{B^alpha_{p,q}}",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p", "p1"}, {{"p", 1}, {"p1", 2}, {"alpha", 1.0}, {"q", 2}});
      },
      [](const Json& r, const CorpusSpec&) {
        const double p = parse_exponent(r.at("p")), p1 = parse_exponent(r.at("p1"));
        check_p(p);
        check_p(p1, "p1");
        if (!(p1 >= p)) throw InvalidInput("embedding needs p1 >= p");
        if (!(parse_exponent(r.at("q")) > 0.0)) throw InvalidInput("q must be positive");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p")), p1 = parse_exponent(r.at("p1"));
        const double q = parse_exponent(r.at("q"));
        const double a = r.at("alpha").get<double>();
        const double a1 = a - x.dim() / p + x.dim() / p1;
        const NormOptions o = norm_options(r);
        ReportRow row = make_row("embedding",
                                 {{"p", p_json(r)}, {"p1", p_json(r, "p1")}, {"q", p_json(r, "q")}, {"alpha", a},
                                  {"alpha1", a1}},
                                 besov_norm(x, a1, p1, q, o).value, besov_norm(x, a, p, q, o).value);
        add_truncation(row, r);
        return std::vector<ReportRow>{row};
      },
      [](const Json&) { return Bound{}; },
      nullptr,
      nullptr,
      {"ratios are recorded; the embedding constant is not asserted"}});

  // ||W_r x||_{p1} against (1-r)^{(d/2)(1/p1 - 1/p)} ||x||_p.
  reg.push_back(SuiteDef{
      "heat_smoothing",
      "||W_r x||_{p1} / ((1-r)^{(d/2)(1/p1-1/p)} ||x||_p) per r",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p", "p1"},
                                {{"p", 2}, {"p1", 2}, {"r", {0.1, 0.5, 0.9, 0.99}}, {"slack", 1.0 + 1e-10}});
      },
      [](const Json& r, const CorpusSpec&) {
        const double p = parse_exponent(r.at("p")), p1 = parse_exponent(r.at("p1"));
        check_p(p);
        check_p(p1, "p1");
        if (!(p1 >= p)) throw InvalidInput("heat_smoothing needs p1 >= p");
        for (double v : numbers(r.at("r")))
          if (!(v >= 0.0 && v < 1.0)) throw InvalidInput("r must lie in [0, 1)");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p")), p1 = parse_exponent(r.at("p1"));
        const NormOptions o = norm_options(r);
        const double nx = lp_norm(x, p, o.lp).value;
        const double e = 0.5 * x.dim() * (1.0 / p1 - 1.0 / p);
        std::vector<ReportRow> rows;
        for (double rr : numbers(r.at("r"))) {
          const double lhs = lp_norm(semigroup(x, Semigroup::kCircularHeat, rr, 0), p1, o.lp).value;
          ReportRow row = make_row("r=" + fmt(rr), {{"p", p_json(r)}, {"p1", p_json(r, "p1")}, {"r", rr}}, lhs,
                                   std::pow(1.0 - rr, e) * nx);
          add_truncation(row, r);
          rows.push_back(std::move(row));
        }
        return rows;
      },
      [](const Json& r) {
        if (parse_exponent(r.at("p")) == parse_exponent(r.at("p1")))
          return Bound{BoundKind::kUpper, 0.0, 1.0, r.at("slack").get<double>()};
        return Bound{};
      },
      nullptr,
      nullptr,
      {"for p1 = p the heat semigroup is a contraction and the bound 1 is asserted; otherwise ratios are recorded"}});

  // Both directions of the Besov multiplier characterization with the explicit constants.
  reg.push_back(SuiteDef{
      "multiplier_besov",
      "||M_phi x||_B <= 3 2^|alpha| S ||x||_B and ||M_{phi phi_k} x||_p <= 9 4^|alpha| R ||x||_p",
      [](const Json& u, const CorpusSpec& c) {
        Json base = {{"p", 2}, {"q", 2}, {"alpha", 0.5}, {"symbol_seed", 1}};
        Json probe = base;
        probe.merge_patch(u);
        base["slack"] = parse_exponent(probe.at("p")) == 2.0 ? 1.0 + 1e-10 : 1.05;
        return numeric_defaults(u, c, {"p"}, base);
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        if (!(parse_exponent(r.at("q")) > 0.0)) throw InvalidInput("q must be positive");
        (void)r.at("alpha").get<double>();
        (void)r.at("symbol_seed").get<std::uint64_t>();
        check_numeric(r);
      },
      [](const QElement& x, std::size_t id, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const double q = parse_exponent(r.at("q"));
        const double a = r.at("alpha").get<double>();
        const NormOptions o = norm_options(r);
        const RadialSymbol f = sample_symbol(r.at("symbol_seed").get<std::uint64_t>(), id);
        const Symbol phi{"sampled-radial", [f](const MultiIndex& m) { return Complex(f(m.norm())); }, {}, {}};
        const auto range = block_range(x, o.profile);
        Json params = {{"p", p_json(r)}, {"q", p_json(r, "q")}, {"alpha", a}};
        if (!range) {
          ReportRow row = make_row("upper", params, 0.0, 0.0);
          return std::vector<ReportRow>{row};
        }
        // Multiplier norm of phi phi^(k): exact sup at p = 2, kernel L_1 bound otherwise.
        auto block_norm = [&](int k) {
          std::vector<std::pair<MultiIndex, double>> coeffs;
          double sup = 0.0;
          for (const MultiIndex& m : ball(x.dim(), std::ldexp(2.0, k))) {
            const double v = f(m.norm()) * o.profile.phi_block(m, k);
            if (v == 0.0) continue;
            sup = std::max(sup, std::abs(v));
            coeffs.emplace_back(m, v);
          }
          return p == 2.0 ? sup : kernel_l1_norm(x.dim(), coeffs);
        };
        double S = 0.0;
        for (int k = range->first; k <= range->second; ++k) S = std::max(S, block_norm(k));
        std::vector<ReportRow> rows;
        const double mx = besov_norm(apply(phi, x), a, p, q, o).value;
        const double nx = besov_norm(x, a, p, q, o).value;
        ReportRow up = make_row("upper", params, mx, 3.0 * std::pow(2.0, std::abs(a)) * S * nx);
        up.diag["S"] = S;
        rows.push_back(std::move(up));
        // Per-sample lower bound R = ||M_phi y||_B / ||y||_B of the Besov multiplier norm,
        // y = (phi_{k-1} + phi_k + phi_{k+1}) x, worst block k.
        const double ca = 9.0 * std::pow(4.0, std::abs(a));
        double worst = -1.0;
        ReportRow low;
        for (int k = range->first; k <= range->second; ++k) {
          QElement y = lp_block(x, k, o.profile);
          if (k >= 1) y = y + lp_block(x, k - 1, o.profile);
          y = y + lp_block(x, k + 1, o.profile);
          const double ny = besov_norm(y, a, p, q, o).value;
          if (ny == 0.0) continue;
          const double R = besov_norm(apply(phi, y), a, p, q, o).value / ny;
          const double lhs = lp_norm(apply(phi * o.profile.block_symbol(k), x), p, o.lp).value;
          const double rhs = ca * R * lp_norm(x, p, o.lp).value;
          ReportRow cand = make_row("lower", params, lhs, rhs);
          cand.diag["k"] = k;
          cand.diag["R"] = R;
          const double score = cand.included ? cand.ratio : -1.0;
          if (score > worst) {
            worst = score;
            low = std::move(cand);
          }
        }
        if (worst >= 0.0) rows.push_back(std::move(low));
        for (auto& row : rows) add_truncation(row, r);
        return rows;
      },
      [](const Json& r) { return Bound{BoundKind::kUpper, 0.0, 1.0, r.at("slack").get<double>()}; },
      nullptr,
      nullptr,
      {"per-sample ratios test the inequalities on sampled inputs and symbols only; they cannot certify "
       "operator norms of multipliers",
       "S is the exact symbol sup at p = 2 and the kernel L_1 norm (an upper bound) otherwise, over the "
       "blocks present in x"}});

  // Matrix-entry formula and the Fourier-Schur transfer, entrywise.
  reg.push_back(SuiteDef{
      "schur_identity",
      "max entrywise deviation of the matrix-entry formula and of S_phi([x]) = [M_phi x]",
      [](const Json& u, const CorpusSpec& c) { return numeric_defaults(u, c, {}, {{"N", 8}, {"symbol_seed", 1}, {"tol", 1e-12}}); },
      [](const Json& r, const CorpusSpec& c) {
        const int N = r.at("N").get<int>();
        if (N < 0) throw InvalidInput("N must be >= 0");
        if (window_size(c.d, N) > kDefaultMaxDim) throw InvalidInput("window exceeds the matrix budget");
        (void)r.at("symbol_seed").get<std::uint64_t>();
      },
      [](const QElement& x, std::size_t id, const Json& r) {
        const int N = r.at("N").get<int>();
        const TruncatedMatrix a = to_matrix(x, N);
        const TruncationWindow& w = a.window;
        // Entry (m, n) = tau((U^m)^* x U^n) read off the product x U^n.
        double entry_dev = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
          const MultiIndex n = w.point(j);
          const QElement col = multiply(x, monomial(x.theta(), n));
          for (std::size_t i = 0; i < w.size(); ++i)
            entry_dev = std::max(entry_dev, std::abs(a.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                                     col.coeff(w.point(i))));
        }
        SampleRng rng(mix_seed(r.at("symbol_seed").get<std::uint64_t>(), id));
        std::vector<double> u;
        for (int j = 0; j < x.dim(); ++j) u.push_back(rng.uniform());
        const double beta = 2.0 * rng.uniform() - 1.0;
        const Symbol phi = translation_symbol(u) * bessel_symbol(beta);
        const TruncatedMatrix lhs = schur_multiply(a, phi.value);
        const TruncatedMatrix rhs = to_matrix(apply(phi, x), N);
        const double schur_dev = (lhs.entries - rhs.entries).cwiseAbs().maxCoeff();
        Json params = {{"N", N}};
        ReportRow e = make_row("entry", params, entry_dev, 1.0);
        ReportRow s = make_row("schur", params, schur_dev, 1.0);
        s.diag["u"] = u;
        s.diag["beta"] = beta;
        return std::vector<ReportRow>{e, s};
      },
      [](const Json& r) { return Bound{BoundKind::kExact, 0.0, r.at("tol").get<double>(), 1.0}; },
      nullptr,
      nullptr,
      {"ratio is the absolute max entrywise deviation; phi is a translation times a Bessel potential"}});

  auto limit_suite = [](const char* name, LimitEnd end, Json alphas, const char* description) {
    return SuiteDef{
        name,
        description,
        [alphas](const Json& u, const CorpusSpec& c) {
          return numeric_defaults(u, c, {"p"},
                                  {{"p", 2}, {"q", 2}, {"k", 1}, {"alphas", alphas}, {"bracket", {0.25, 4.0}}});
        },
        [](const Json& r, const CorpusSpec&) {
          check_p(parse_exponent(r.at("p")));
          const double q = parse_exponent(r.at("q"));
          if (!(q > 0.0) || std::isinf(q)) throw InvalidInput("q must be finite and positive");
          const int k = r.at("k").get<int>();
          if (k < 1) throw InvalidInput("k must be >= 1");
          for (double a : numbers(r.at("alphas")))
            if (!(a > 0.0 && a < k)) throw InvalidInput("alphas must lie in (0, k)");
          const auto b = numbers(r.at("bracket"));
          if (b.size() != 2 || !(b[0] > 0.0 && b[0] <= b[1])) throw InvalidInput("bracket must be [lo, hi]");
          check_numeric(r);
        },
        [end](const QElement& x, std::size_t, const Json& r) {
          const double p = parse_exponent(r.at("p"));
          const double q = parse_exponent(r.at("q"));
          const int k = r.at("k").get<int>();
          SmoothnessOptions so = smooth_options(r);
          so.norm.quad.points = std::max(so.norm.quad.points, 129);
          const LimitTable t = limit_scan(x, k, p, q, end, numbers(r.at("alphas")), so);
          const LimitRow& last = t.rows.back();
          ReportRow row = make_row("limit", {{"p", p_json(r)}, {"q", p_json(r, "q")}, {"k", k}}, last.scaled,
                                   last.target);
          Json scaled = Json::array();
          for (const auto& lr : t.rows) scaled.push_back(lr.scaled);
          row.diag["scaled"] = scaled;
          row.diag["successive_differences"] = t.successive_differences;
          row.diag["cauchy_decreasing"] = t.cauchy_decreasing;
          add_truncation(row, r);
          return std::vector<ReportRow>{row};
        },
        [](const Json& r) {
          const auto b = numbers(r.at("bracket"));
          return Bound{BoundKind::kBracket, b[0], b[1], 1.0};
        },
        nullptr,
        [](InequalityReport& rep) {
          std::size_t bad = 0;
          for (const auto& row : rep.rows)
            if (row.included && row.diag.contains("cauchy_decreasing") && !row.diag["cauchy_decreasing"].get<bool>())
              ++bad;
          rep.checks.push_back({"Cauchy decreasing", bad == 0, std::to_string(bad) + " sample(s) not decreasing"});
        },
        {"the scaled value at the last alpha is compared with q^{-1/q} times the limit norm"}};
  };
  reg.push_back(limit_suite("bbm", LimitEnd::kAlphaToK, {0.9, 0.99, 0.999},
                            "(k - alpha)^{1/q} ||x||_{B^{alpha,omega}} against q^{-1/q} |x|_{W^k_p} as alpha -> k"));
  reg.push_back(limit_suite("ms_limit", LimitEnd::kAlphaToZero, {0.1, 0.01, 0.001},
                            "alpha^{1/q} ||x||_{B^{alpha,omega}} against q^{-1/q} ||x||_p as alpha -> 0"));

  reg.push_back(SuiteDef{
      "kfunc",
      "(eps^k |x^(0)| + omega_2^k(x, eps)) / K_2(x, eps^k) over dyadic eps",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {}, {{"k", 1}, {"eps", dyadic(1, 8)}, {"spread", 10.0}});
      },
      [](const Json& r, const CorpusSpec&) {
        if (r.at("k").get<int>() < 1) throw InvalidInput("k must be >= 1");
        for (double e : numbers(r.at("eps")))
          if (!(e > 0.0)) throw InvalidInput("eps must be positive");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const int k = r.at("k").get<int>();
        const SmoothnessOptions so = smooth_options(r);
        std::vector<ReportRow> rows;
        for (double e : numbers(r.at("eps"))) {
          const double t = std::pow(e, k);
          const KFunctionalResult eq = k_functional(x, t, k, 2.0, KMode::kEquivalence, so);
          const KFunctionalResult cert = k_functional(x, t, k, 2.0, KMode::kUpperCertificate, so);
          const double k2 = eq.diagnostics["K2"].get<double>();
          ReportRow row = make_row("equivalence", {{"k", k}, {"eps", e}}, eq.diagnostics["reference"].get<double>(), k2);
          row.diag["certificate"] = cert.value;
          row.diag["certificate_ok"] = cert.value >= k2 * (1.0 - 1e-12);
          rows.push_back(std::move(row));
        }
        return rows;
      },
      spread,
      nullptr,
      [](InequalityReport& rep) {
        std::size_t bad = 0;
        for (const auto& row : rep.rows)
          if (row.diag.contains("certificate_ok") && !row.diag["certificate_ok"].get<bool>()) ++bad;
        rep.checks.push_back({"certificate >= K_2", bad == 0, std::to_string(bad) + " violation(s)"});
      },
      {"p = 2 only: K_2 is the exact per-frequency minimum and the certificate is the averaged-difference split"}});

  reg.push_back(SuiteDef{
      "marchaud",
      "2^{n-N} omega^N(x, eps) / omega^n(x, eps) per (n, N), worst eps",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p"},
                                {{"p", 2}, {"pairs", {{1, 2}, {1, 3}, {2, 3}}}, {"eps", dyadic(1, 6)}, {"slack", 1.05}});
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        for (const Json& pr : r.at("pairs")) {
          const int n = pr.at(0).get<int>(), N = pr.at(1).get<int>();
          if (!(n >= 1 && n < N)) throw InvalidInput("pairs must satisfy 1 <= n < N");
        }
        for (double e : numbers(r.at("eps")))
          if (!(e > 0.0)) throw InvalidInput("eps must be positive");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const SmoothnessOptions so = smooth_options(r);
        const double slack = r.at("slack").get<double>();
        std::vector<std::pair<int, int>> pairs;
        for (const Json& pr : r.at("pairs")) pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
        const auto table = marchaud_check(x, pairs, p, numbers(r.at("eps")), so, slack);
        std::vector<ReportRow> rows;
        for (const auto& [n, N] : pairs) {
          ReportRow worst;
          bool have = false;
          double upper_constant = 0.0;
          for (const auto& mr : table) {
            if (mr.n != n || mr.N != N) continue;
            ReportRow cand = make_row("n=" + std::to_string(n) + ",N=" + std::to_string(N),
                                      {{"p", p_json(r)}, {"n", n}, {"N", N}}, mr.lower_lhs, mr.omega_n);
            cand.diag["eps"] = mr.eps;
            upper_constant = std::max(upper_constant, mr.upper_constant);
            if (!have || (cand.included && (!worst.included || cand.ratio > worst.ratio))) {
              worst = std::move(cand);
              have = true;
            }
          }
          worst.diag["upper_constant_max"] = upper_constant;
          add_truncation(worst, r);
          rows.push_back(std::move(worst));
        }
        return rows;
      },
      [](const Json& r) { return Bound{BoundKind::kUpper, 0.0, 1.0, r.at("slack").get<double>()}; },
      nullptr,
      nullptr,
      {"the upper Marchaud constant omega^n / (eps^n int omega^N delta^{-n} ddelta/delta) is recorded per row"}});

  reg.push_back(SuiteDef{
      "lipschitz",
      "omega_p^k(x, eps) / eps^k against |x|_{W^k_p} as eps decreases",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p"}, {{"p", 2}, {"k", 1}, {"eps", dyadic(2, 8)}});
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        if (r.at("k").get<int>() < 1) throw InvalidInput("k must be >= 1");
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const int k = r.at("k").get<int>();
        const LipschitzTable t = lipschitz_ratio(x, k, p, numbers(r.at("eps")), smooth_options(r));
        const auto& last = t.rows.back();
        ReportRow row = make_row("lipschitz", {{"p", p_json(r)}, {"k", k}}, last.quotient, last.seminorm);
        Json q = Json::array();
        for (const auto& lr : t.rows) q.push_back(lr.quotient);
        row.diag["quotients"] = q;
        row.diag["increasing"] = t.increasing;
        add_truncation(row, r);
        return std::vector<ReportRow>{row};
      },
      [](const Json&) { return Bound{}; },
      nullptr,
      [](InequalityReport& rep) {
        std::size_t bad = 0;
        for (const auto& row : rep.rows)
          if (row.included && row.diag.contains("increasing") && !row.diag["increasing"].get<bool>()) ++bad;
        rep.checks.push_back({"quotients increase as eps decreases", bad == 0, std::to_string(bad) + " sample(s)"});
      },
      {"the ratio is recorded at the smallest eps"}});

  reg.push_back(SuiteDef{
      "interpolation",
      "||d_j x||_p against 2 sqrt(||x||_p ||d_j^2 x||_p)",
      [](const Json& u, const CorpusSpec& c) { return numeric_defaults(u, c, {"p"}, {{"p", 2}}); },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const NormOptions o = norm_options(r);
        std::vector<ReportRow> rows;
        for (int j = 0; j < x.dim(); ++j) {
          const auto [lhs, rhs] = interpolation_sides(x, j, p, o);
          ReportRow row = make_row("j=" + std::to_string(j + 1), {{"p", p_json(r)}, {"j", j + 1}}, lhs, rhs);
          add_truncation(row, r);
          rows.push_back(std::move(row));
        }
        return rows;
      },
      [](const Json& r) {
        return Bound{BoundKind::kUpper, 0.0, 1.0, parse_exponent(r.at("p")) == 2.0 ? 1.0 + 1e-12 : 1.05};
      },
      nullptr,
      nullptr,
      {}});

  reg.push_back(SuiteDef{
      "poincare_second_order",
      "||x||_p against (2 pi^2 / (9 sqrt 3)) ||M_{m_j^2} x||_p for x with m_j != 0 on its support",
      [](const Json& u, const CorpusSpec& c) { return numeric_defaults(u, c, {"p"}, {{"p", 2}}); },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const NormOptions o = norm_options(r);
        std::vector<ReportRow> rows;
        for (int j = 0; j < x.dim(); ++j) {
          std::vector<Term> kept;
          for (const Term& t : x.terms())
            if (t.m[j] != 0) kept.push_back(t);
          const QElement y = x.with_terms(kept);
          const auto [lhs, rhs] = second_order_poincare_sides(y, j, p, o);
          ReportRow row = make_row("j=" + std::to_string(j + 1), {{"p", p_json(r)}, {"j", j + 1}}, lhs, rhs);
          add_truncation(row, r);
          rows.push_back(std::move(row));
        }
        return rows;
      },
      [](const Json& r) {
        return Bound{BoundKind::kUpper, 0.0, 1.0, parse_exponent(r.at("p")) == 2.0 ? 1.0 + 1e-12 : 1.05};
      },
      nullptr,
      nullptr,
      {"each sample is restricted to frequencies with m_j != 0 before the check"}});

  reg.push_back(SuiteDef{
      "profile_independence",
      "Besov norm with the shifted bump profile / default bump profile per alpha",
      [](const Json& u, const CorpusSpec& c) {
        return numeric_defaults(u, c, {"p"}, {{"p", 2}, {"q", 2}, {"alpha", {-1.0, 0.0, 0.5, 1.0}}, {"spread", 10.0}});
      },
      [](const Json& r, const CorpusSpec&) {
        check_p(parse_exponent(r.at("p")));
        if (!(parse_exponent(r.at("q")) > 0.0)) throw InvalidInput("q must be positive");
        (void)numbers(r.at("alpha"));
        check_numeric(r);
      },
      [](const QElement& x, std::size_t, const Json& r) {
        const double p = parse_exponent(r.at("p"));
        const double q = parse_exponent(r.at("q"));
        NormOptions a_opts = norm_options(r);
        NormOptions b_opts = a_opts;
        b_opts.profile = LPProfile::bump_shifted();
        const BlockNorms a = besov_blocks(x, p, a_opts);
        const BlockNorms b = besov_blocks(x, p, b_opts);
        std::vector<ReportRow> rows;
        for (double al : numbers(r.at("alpha"))) {
          ReportRow row = make_row("alpha=" + fmt(al), {{"p", p_json(r)}, {"q", p_json(r, "q")}, {"alpha", al}},
                                   besov_from_blocks(b, al, q).value, besov_from_blocks(a, al, q).value);
          add_truncation(row, r);
          rows.push_back(std::move(row));
        }
        return rows;
      },
      spread,
      nullptr,
      nullptr,
      {}});

  return reg;
}

}  // namespace

const std::vector<SuiteDef>& suite_registry() {
  static const std::vector<SuiteDef> reg = build_registry();
  return reg;
}

}  // namespace qtorus::detail
