// One line per acceptance criterion; exit status 1 if any criterion fails.
// Usage: qtorus_acceptance [criterion numbers...]
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "qtorus/corpus.hpp"
#include "qtorus/littlewood_paley.hpp"
#include "qtorus/matrix_rep.hpp"
#include "qtorus/multipliers.hpp"
#include "qtorus/norm_request.hpp"
#include "qtorus/smoothness.hpp"
#include "qtorus/spaces.hpp"
#include "qtorus/verify.hpp"

using namespace qtorus;
using qtorus::testing::circle_lp_norm;
using qtorus::testing::kPi;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CorpusSpec corpus(int d, double theta, int degree, int n, std::uint64_t seed) {
  CorpusSpec c;
  c.d = d;
  c.theta = theta;
  c.max_degree = degree;
  c.sample_count = n;
  c.seed = seed;
  return c;
}

Outcome algebra_exactness() {
  double comm = 0.0, assoc = 0.0, adj = 0.0;
  for (double t : {0.0, 0.3, 1.0 / 7.0, std::sqrt(2.0) - 1.0}) {
    const ThetaMatrix th = ThetaMatrix::uniform(2, t);
    const QElement u1 = monomial(th, {1, 0}), u2 = monomial(th, {0, 1});
    const QElement lhs = u2 * u1, rhs = std::polar(1.0, 2.0 * kPi * th(1, 0)) * (u1 * u2);
    comm = std::max(comm, (lhs - rhs).l2_norm());
  }
  CorpusSpec c2 = corpus(2, 0.3, 4, 100, 101), c3 = corpus(3, 0.0, 3, 100, 102);
  c3.theta_law = ThetaLaw::kRandomSkew;
  for (const CorpusSpec& c : {c2, c3}) {
    for (std::size_t i = 0; i < 100; ++i) {
      // Random-skew samples carry their own theta, so y and z are moved into the algebra of x.
      const QElement x = random_element(c, 3 * i);
      auto along = [&](std::size_t j) {
        const QElement e = random_element(c, j);
        return x.with_terms({e.terms().begin(), e.terms().end()});
      };
      const QElement y = along(3 * i + 1), z = along(3 * i + 2);
      const QElement xyz = (x * y) * z;
      const double scale = std::max(1.0, xyz.l2_norm());
      assoc = std::max(assoc, (xyz - x * (y * z)).l2_norm() / scale);
      adj = std::max(adj, (adjoint(adjoint(x)) - x).l2_norm() / std::max(1.0, x.l2_norm()));
      const QElement xy = x * y;
      adj = std::max(adj, (adjoint(xy) - adjoint(y) * adjoint(x)).l2_norm() / std::max(1.0, xy.l2_norm()));
    }
  }
  return {comm <= 1e-10 && assoc <= 1e-10 && adj <= 1e-12,
          "commutation " + fmt("%.2e", comm) + ", associativity " + fmt("%.2e", assoc) + ", adjoint " +
              fmt("%.2e", adj) + " over 2 x 100 triples"};
}

Outcome trace_laws() {
  const CorpusSpec c = corpus(2, 0.3, 4, 400, 201);
  const ThetaMatrix th = random_element(c, 0).theta();
  double delta = 0.0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      delta = std::max(delta, std::abs(trace(monomial(th, {a, b})) - Complex(a == 0 && b == 0 ? 1.0 : 0.0)));
  double cyc = 0.0, parts = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    const QElement x = random_element(c, 2 * i), y = random_element(c, 2 * i + 1);
    const double scale = std::max(1.0, x.l2_norm() * y.l2_norm());
    cyc = std::max(cyc, std::abs(trace(x * y) - trace(y * x)) / scale);
    for (const MultiIndex& e : {MultiIndex{1, 0}, MultiIndex{0, 1}}) {
      const Complex lhs = trace(derivative(x, e) * y), rhs = -trace(x * derivative(y, e));
      parts = std::max(parts, std::abs(lhs - rhs) / (scale * 2.0 * kPi * 4.0));
    }
  }
  return {delta <= 1e-12 && cyc <= 1e-12 && parts <= 1e-12,
          "tau(U^m) " + fmt("%.1e", delta) + ", tau(xy)-tau(yx) " + fmt("%.2e", cyc) + ", integration by parts " +
              fmt("%.2e", parts) + " over 200 samples"};
}

Outcome matrix_identities() {
  const CorpusSpec c = corpus(2, 0.3, 4, 20, 301);
  SampleRng rng(mix_seed(301, 7));
  double entry = 0.0, schur = 0.0;
  for (std::size_t s = 0; s < 20; ++s) {
    const QElement x = random_element(c, s);
    const TruncatedMatrix a = to_matrix(x, 8);
    for (std::size_t j = 0; j < a.window.size(); ++j) {
      const QElement col = x * monomial(x.theta(), a.window.point(j));
      for (std::size_t i = 0; i < a.window.size(); ++i)
        entry = std::max(entry, std::abs(a.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                         col.coeff(a.window.point(i))));
    }
    const std::vector<double> u = {rng.uniform(), rng.uniform()};
    const Symbol phi = translation_symbol(u) * bessel_symbol(4.0 * rng.uniform() - 2.0);
    const TruncatedMatrix lhs = schur_multiply(a, phi.value), rhs = to_matrix(apply(phi, x), 8);
    schur = std::max(schur, (lhs.entries - rhs.entries).cwiseAbs().maxCoeff());
  }
  return {entry <= 1e-12 && schur <= 1e-12,
          "entry formula " + fmt("%.2e", entry) + ", Schur identity " + fmt("%.2e", schur) + " (20 pairs, N = 8)"};
}

Outcome plancherel_calibration() {
  const CorpusSpec c = corpus(2, 0.3, 4, 20, 401);
  double closed = 0.0, exact = 0.0;
  for (std::size_t s = 0; s < 20; ++s) {
    const QElement x = random_element(c, s);
    for (int N : {4, 8, 16}) {
      const TruncatedMatrix a = to_matrix(x, N);
      const double frob = a.entries.norm() / std::sqrt(static_cast<double>(a.window.size()));
      closed = std::max(closed, std::abs(truncated_l2(x, N) - frob) / frob);
    }
    LpControl ctrl;
    ctrl.exact_p2 = false;
    exact = std::max(exact, std::abs(lp_norm(x, 2.0, ctrl).value - x.l2_norm()) / x.l2_norm());
  }
  double unit = 0.0;
  const ThetaMatrix th = ThetaMatrix::uniform(2, 0.3);
  for (const MultiIndex& m : {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{2, -3}, MultiIndex{4, 4}})
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      LpControl ctrl;
      ctrl.exact_p2 = false;
      unit = std::max(unit, std::abs(lp_norm(monomial(th, m), p, ctrl).value - 1.0));
    }
  return {closed <= 1e-12 && exact <= 1e-3 && unit <= 1e-3,
          "closed form " + fmt("%.2e", closed) + ", Plancherel at adaptive N " + fmt("%.2e", exact) +
              ", max |‖U^m‖_p - 1| " + fmt("%.2e", unit)};
}

Outcome littlewood_paley_partition() {
  double worst = 0.0;
  std::size_t count = 0;
  for (const LPProfile& profile : {LPProfile::bump(), LPProfile::bump_shifted()})
    for (int a = 0; a <= 1000; ++a)
      for (int b = 0; a * a + b * b <= 1000 * 1000; ++b) {
        if (a == 0 && b == 0) continue;
        const MultiIndex m{a, b};
        double s = 0.0;
        for (int k = 0; k <= 12; ++k) s += profile.phi_block(m, k);
        worst = std::max(worst, std::abs(s - 1.0));
        ++count;
      }
  const CorpusSpec c = corpus(2, 0.3, 16, 50, 501);
  double recon = 0.0;
  std::size_t overlaps = 0;
  for (std::size_t s = 0; s < 50; ++s) {
    const QElement x = random_element(c, s);
    recon = std::max(recon, (reconstruct_from_blocks(x) - x).l2_norm() / x.l2_norm());
    const auto r = block_range(x);
    if (!r) continue;
    std::vector<QElement> blocks;
    for (int k = 0; k <= r->second + 2; ++k) blocks.push_back(lp_block(x, k));
    for (std::size_t j = 0; j < blocks.size(); ++j)
      for (std::size_t k = j + 2; k < blocks.size(); ++k)
        for (const Term& t : blocks[j].terms())
          if (blocks[k].coeff(t.m) != Complex{}) ++overlaps;
  }
  return {worst <= 1e-12 && recon <= 1e-12 && overlaps == 0,
          "partition " + fmt("%.2e", worst) + " over " + std::to_string(count / 2) +
              " frequencies (m in first quadrant, both profiles), reconstruction " + fmt("%.2e", recon) +
              ", overlapping supports " + std::to_string(overlaps)};
}

Outcome sharp_poincare() {
  CorpusSpec c = corpus(2, 0.3, 6, 1000, 601);
  c.mean_zero = true;
  const InequalityReport r = run_suite("poincare", c);
  double corpus_max = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].sample_id < static_cast<std::size_t>(c.sample_count))
      corpus_max = std::max(corpus_max, r.rows[i].ratio);
    if (r.rows[i].ratio > r.rows[argmax].ratio) argmax = i;
  }
  const double target = 1.0 / (2.0 * kPi);
  const bool probe = r.rows[argmax].sample_id >= static_cast<std::size_t>(c.sample_count);
  return {r.verdict && std::abs(r.max_ratio - target) <= 1e-10 && corpus_max <= target * (1.0 + 1e-12) && probe,
          "max ratio " + fmt("%.12f", r.max_ratio) + " (1/(2 pi) = " + fmt("%.12f", target) + "), attained by U_j; " +
              "corpus max " + fmt("%.6f", corpus_max)};
}

std::size_t violations(const InequalityReport& r) {
  std::size_t v = 0;
  for (const auto& row : r.rows)
    if (row.group == "error" || (row.included && row.ratio > r.bound.hi * r.bound.slack)) ++v;
  return v;
}

Outcome interpolation_inequalities() {
  CorpusSpec c = corpus(2, 0.3, 4, 500, 701);
  const InequalityReport a = run_suite("interpolation", c);
  const InequalityReport b = run_suite("poincare_second_order", c);
  const std::size_t va = violations(a), vb = violations(b);
  return {a.verdict && b.verdict && va == 0 && vb == 0,
          "interpolation (constant 2): " + std::to_string(va) + " violations, max ratio " +
              fmt("%.4f", a.max_ratio) + "; second order Poincare (2 pi^2/(9 sqrt 3)): " + std::to_string(vb) +
              " violations, max ratio " + fmt("%.4f", b.max_ratio) + "; 500 samples"};
}

// One equivalence family: a suite with fixed parameters evaluated at several p.
struct Family {
  std::string label;
  std::string suite;
  Json params;
  std::vector<Json> ps;
};

Outcome norm_equivalences() {
  const Json alphas = {-1, 0, 0.5, 1};
  const Json qs = {1, 2, "inf"};
  const std::vector<Json> all_p = {1, 2, "inf"}, finite_p = {1, 2};
  std::vector<Family> families;
  for (const char* m : {"poisson", "heat", "circular-poisson", "circular-heat"})
    families.push_back({std::string("besov/") + m, "besov_equiv", {{"method", m}, {"alpha", alphas}, {"q", qs}}, all_p});
  families.push_back({"besov/diff", "besov_equiv", {{"method", "diff"}, {"alpha", {0.5, 1}}, {"q", qs}}, all_p});
  for (const char* m : {"poisson", "heat"})
    families.push_back({std::string("triebel/") + m, "triebel_equiv", {{"method", m}, {"alpha", alphas}}, finite_p});
  families.push_back({"triebel/hardy", "triebel_equiv", {{"method", "hardy"}}, finite_p});

  const std::uint64_t seeds[2] = {801, 802};
  std::size_t groups = 0, bad_spread = 0, bad_drift = 0;
  double worst_spread = 0.0, worst_drift = 0.0;
  std::string worst_spread_at, worst_drift_at;
  std::vector<std::string> failures;
  // Failing groups are re-run on mean-zero corpora as a diagnostic; the verdict is unchanged.
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::string>> failing_runs;
  double mz_spread = 0.0, mz_drift = 0.0;
  auto run_pair = [&](const Family& f, const Json& params, bool mean_zero) {
    std::array<std::map<std::string, GroupSummary>, 2> by_seed;
    for (int s = 0; s < 2; ++s) {
      CorpusSpec c = corpus(2, 0.3, 2, 200, seeds[s]);
      c.mean_zero = mean_zero;
      const InequalityReport r = run_suite(f.suite, c, params);
      for (const auto& g : r.groups) by_seed[s][g.group] = g;
    }
    return by_seed;
  };
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const Family& f = families[fi];
    for (std::size_t pi = 0; pi < f.ps.size(); ++pi) {
      const Json& p = f.ps[pi];
      Json params = f.params;
      params["p"] = p;
      const auto by_seed = run_pair(f, params, false);
      for (const auto& [name, g0] : by_seed[0]) {
        const auto it = by_seed[1].find(name);
        if (it == by_seed[1].end()) continue;
        const GroupSummary& g1 = it->second;
        ++groups;
        const std::string where = f.label + " p=" + (p.is_string() ? p.get<std::string>() : p.dump()) + " " + name;
        const double spread = std::max(g0.max_ratio / g0.min_ratio, g1.max_ratio / g1.min_ratio);
        const double drift = std::abs(g1.median_ratio - g0.median_ratio) / g0.median_ratio;
        if (spread > worst_spread) {
          worst_spread = spread;
          worst_spread_at = where;
        }
        if (drift > worst_drift) {
          worst_drift = drift;
          worst_drift_at = where;
        }
        const bool s_ok = spread < 10.0, d_ok = drift < 0.2;
        if (!s_ok) ++bad_spread;
        if (!d_ok) ++bad_drift;
        if (!s_ok || !d_ok) {
          failures.push_back(where + " (spread " + fmt("%.2f", spread) + ", drift " + fmt("%.3f", drift) + ")");
          failing_runs[{fi, pi}].insert(name);
        }
      }
    }
  }
  for (const auto& [run, names] : failing_runs) {
    Json params = families[run.first].params;
    params["p"] = families[run.first].ps[run.second];
    const auto by_seed = run_pair(families[run.first], params, true);
    for (const auto& [name, g0] : by_seed[0]) {
      const auto it = by_seed[1].find(name);
      if (it == by_seed[1].end() || !names.count(name)) continue;
      mz_spread = std::max({mz_spread, g0.max_ratio / g0.min_ratio, it->second.max_ratio / it->second.min_ratio});
      mz_drift = std::max(mz_drift, std::abs(it->second.median_ratio - g0.median_ratio) / g0.median_ratio);
    }
  }
  std::string detail = std::to_string(groups) + " groups x 2 seeds x 200 samples; worst spread " +
                       fmt("%.2f", worst_spread) + " at " + worst_spread_at + "; worst drift " +
                       fmt("%.3f", worst_drift) + " at " + worst_drift_at;
  if (!failures.empty()) {
    detail += "; failing groups (" + std::to_string(bad_spread) + " spread, " + std::to_string(bad_drift) + " drift):";
    for (const auto& s : failures) detail += "\n      " + s;
    detail += "\n      diagnostic: the failing groups on mean-zero corpora give max spread " + fmt("%.2f", mz_spread) +
              " and max drift " + fmt("%.3f", mz_drift);
  }
  return {failures.empty(), detail};
}

Outcome single_frequency_forms() {
  const ThetaMatrix th = ThetaMatrix::uniform(2, 0.3);
  double besov = 0.0;
  for (int k = 0; k <= 6; ++k)
    for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0})
      for (double q : {1.0, 2.0, kInf}) {
        const double v = besov_norm(monomial(th, {1 << k, 0}), a, 2.0, q).value;
        besov = std::max(besov, std::abs(v / std::pow(2.0, k * a) - 1.0));
      }
  double omega = 0.0;
  for (const MultiIndex& m : {MultiIndex{1, 0}, MultiIndex{0, 2}, MultiIndex{3, 1}, MultiIndex{-2, 5}})
    for (int k : {1, 2, 3})
      for (double frac : {0.05, 0.2, 0.5}) {
        const double eps = frac / m.norm();
        const double expect = std::pow(2.0 * std::sin(kPi * eps * m.norm()), k);
        omega = std::max(omega, std::abs(modulus(monomial(th, m), k, eps, 2.0).value / expect - 1.0));
      }
  return {besov <= 1e-12 && omega <= 0.01,
          "Besov 2^{k alpha} max rel. error " + fmt("%.2e", besov) + "; modulus (2 sin(pi eps |m|))^k max rel. error " +
              fmt("%.2e", omega)};
}

Outcome limits() {
  const CorpusSpec c = corpus(2, 0.3, 3, 20, 1001);
  const InequalityReport bbm = run_suite("bbm", c);
  const InequalityReport ms = run_suite("ms_limit", c);
  auto checks_ok = [](const InequalityReport& r) {
    return std::all_of(r.checks.begin(), r.checks.end(), [](const CheckOutcome& o) { return o.pass; });
  };
  return {bbm.verdict && ms.verdict && checks_ok(bbm) && checks_ok(ms),
          "alpha -> 1: last ratio in [" + fmt("%.3f", bbm.min_ratio) + ", " + fmt("%.3f", bbm.max_ratio) +
              "]; alpha -> 0: [" + fmt("%.3f", ms.min_ratio) + ", " + fmt("%.3f", ms.max_ratio) +
              "]; Cauchy decreasing on all 20 samples: " + (checks_ok(bbm) && checks_ok(ms) ? "yes" : "no")};
}

// inf over y = sum s_m x^(m) U^m of (||x - y||^2 + t^2 ||y||_{W^k_2}^2)^{1/2}, one frequency at a time.
double brute_k2(const QElement& x, double t, int k) {
  double total = 0.0;
  for (const Term& term : x.terms()) {
    const QElement single = monomial(x.theta(), term.m, term.c);
    const double w = sobolev_norm(single, k, 2.0, false).value;
    const double c = std::abs(term.c);
    auto f = [&](double s) { return (1.0 - s) * (1.0 - s) * c * c + t * t * s * s * w * w; };
    double a = 0.0, b = 1.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
      const double u = b - g * (b - a), v = a + g * (b - a);
      if (f(u) < f(v)) {
        b = v;
      } else {
        a = u;
      }
    }
    total += f(0.5 * (a + b));
  }
  return std::sqrt(total);
}

Outcome k_functional_checks() {
  const CorpusSpec c = corpus(2, 0.3, 3, 20, 1101);
  double match = 0.0;
  for (std::size_t s = 0; s < 20; ++s) {
    const QElement x = random_element(c, s);
    for (int k : {1, 2})
      for (int j = 1; j <= 8; ++j) {
        const double t = std::pow(std::ldexp(1.0, -j), k);
        const double oracle = k_functional(x, t, k, 2.0, KMode::kL2Oracle).value;
        match = std::max(match, std::abs(brute_k2(x, t, k) - oracle) / std::max(1.0, oracle));
      }
  }
  const InequalityReport r = run_suite("kfunc", c);
  const bool cert = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckOutcome& o) { return o.pass; });
  return {match <= 1e-8 && cert && r.verdict,
          "K_2 vs brute force " + fmt("%.2e", match) + "; certificate >= K_2: " + (cert ? "always" : "violated") +
              "; equivalence ratio in [" + fmt("%.3f", r.min_ratio) + ", " + fmt("%.3f", r.max_ratio) +
              "], spread " + fmt("%.2f", r.max_ratio / r.min_ratio)};
}

Outcome marchaud() {
  const InequalityReport r = run_suite("marchaud", corpus(2, 0.3, 4, 200, 1201));
  const std::size_t v = violations(r);
  return {r.verdict && v == 0, std::to_string(v) + " violations over 200 samples x 3 pairs x 6 radii, max ratio " +
                                   fmt("%.4f", r.max_ratio) + " (slack 1.05)"};
}

Outcome commutative_oracle() {
  const CorpusSpec c = corpus(1, 0.0, 4, 50, 1301);
  double worst = 0.0;
  std::string at;
  for (std::size_t s = 0; s < 50; ++s) {
    const QElement x = random_element(c, s);
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      LpControl ctrl;
      ctrl.exact_p2 = false;
      ctrl.rel_tol = 1e-5;
      const double v = lp_norm(x, p, ctrl).value;
      const double oracle = circle_lp_norm(x, p);
      const double e = std::abs(v - oracle) / oracle;
      if (e > worst) {
        worst = e;
        at = "sample " + std::to_string(s) + ", p = " + (std::isinf(p) ? std::string("inf") : fmt("%g", p));
      }
    }
  }
  return {worst <= 1e-4, "max relative deviation from scalar quadrature " + fmt("%.2e", worst) + " (" + at + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"algebra exactness", algebra_exactness},
      {"trace laws", trace_laws},
      {"matrix entries and Schur identity", matrix_identities},
      {"Plancherel calibration", plancherel_calibration},
      {"Littlewood-Paley partition", littlewood_paley_partition},
      {"sharp Poincare constant at p = 2", sharp_poincare},
      {"interpolation inequalities at p = 2", interpolation_inequalities},
      {"norm equivalences", norm_equivalences},
      {"single-frequency closed forms", single_frequency_forms},
      {"BBM and MS limits", limits},
      {"K-functional", k_functional_checks},
      {"Marchaud lower bound", marchaud},
      {"commutative oracle", commutative_oracle},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
