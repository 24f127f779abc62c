#include <algorithm>
#include <cmath>

#include "qtorus/error.hpp"
#include "qtorus/matrix_rep.hpp"

namespace qtorus {
namespace {

enum class Spectrum { kModulus, kPositive };

// Polynomial extrapolation to h = 0 through (h_i, y_i).
double neville_at_zero(const std::vector<double>& h, const std::vector<double>& y) {
  std::vector<double> p = y;
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
    }
  }
  return p[0];
}

std::vector<int> automatic_schedule(const QElement& x, const LpControl& ctrl) {
  const int d = x.dim();
  const int base = std::max(x.degree(), 1);
  std::vector<int> s;
  for (int f : {2, 4, 8})
    if (window_size(d, f * base) <= ctrl.max_dim) s.push_back(f * base);
  if (s.size() >= 3) return s;
  int n_max = 0;
  while (window_size(d, n_max + 1) <= ctrl.max_dim) ++n_max;
  if (n_max < 1) throw BudgetExceeded("dimension budget too small for any truncation in d=" + std::to_string(d));
  s.clear();
  // Windows narrower than the degree see only part of the support.
  for (int n : {n_max / 4, n_max / 2, n_max})
    if (n >= 1 && (2 * n + 1 > base || n == n_max) && (s.empty() || n > s.back())) s.push_back(n);
  return s;
}

struct Engine {
  const QElement& x;
  Spectrum mode;
  const LpControl& ctrl;

  // Per-exponent densities D(N): (1/n) sum v^r, or max v for r = inf.
  std::vector<LpResult> run(std::span<const double> ps) {
    std::vector<int> schedule = ctrl.schedule.empty() ? automatic_schedule(x, ctrl) : ctrl.schedule;
    for (int N : schedule)
      if (window_size(x.dim(), N) > ctrl.max_dim)
        throw BudgetExceeded("truncation N=" + std::to_string(N) + " exceeds dimension budget " +
                             std::to_string(ctrl.max_dim));
    const std::size_t np = ps.size();
    std::vector<std::vector<double>> dens(np);
    std::vector<double> hs, hs2;
    std::vector<LpResult> out(np);
    std::vector<double> prev(np, NAN);
    std::vector<bool> done(np, false);

    auto to_value = [&](std::size_t i, double dval) {
      double p = ps[i];
      if (std::isinf(p)) return mode == Spectrum::kPositive ? std::sqrt(std::max(dval, 0.0)) : std::max(dval, 0.0);
      return std::pow(std::max(dval, 0.0), 1.0 / p);
    };

    std::size_t step = 0;
    int N = 0;
    while (true) {
      if (step < schedule.size()) {
        N = schedule[step];
      } else {
        if (!ctrl.extend) break;
        bool all_done = std::all_of(done.begin(), done.end(), [](bool b) { return b; });
        if (all_done) break;
        int next = 2 * N;
        if (window_size(x.dim(), next) > ctrl.max_dim) break;
        N = next;
      }
      ++step;
      TruncatedMatrix a = to_matrix(x, N, ctrl.max_dim);
      std::vector<double> v = mode == Spectrum::kModulus ? singular_values(a) : hermitian_eigenvalues(a);
      for (double& e : v) e = std::max(e, 0.0);
      const double n = static_cast<double>(v.size());
      const double h = 1.0 / (2.0 * N + 1.0);
      hs.push_back(h);
      hs2.push_back(h * h);
      for (std::size_t i = 0; i < np; ++i) {
        const double p = ps[i];
        double dval;
        if (std::isinf(p)) {
          dval = *std::max_element(v.begin(), v.end());
        } else {
          const double r = mode == Spectrum::kModulus ? p : p / 2.0;
          double s = 0.0;
          for (double e : v) s += std::pow(e, r);
          dval = s / n;
        }
        dens[i].push_back(dval);
        double est = dval;
        if (ctrl.extrapolate && dens[i].size() >= 2)
          est = neville_at_zero(std::isinf(p) ? hs2 : hs, dens[i]);
        double val = to_value(i, est);
        LpResult& r = out[i];
        r.raw_value = to_value(i, dval);
        r.value = val;
        r.N_used = N;
        r.schedule_used.push_back(N);
        if (!std::isnan(prev[i])) {
          r.last_change = std::abs(val - prev[i]) / std::max(std::abs(val), 1e-300);
          if (r.last_change <= ctrl.rel_tol || val < 1e-300) done[i] = true;
        }
        prev[i] = val;
      }
    }
    const double l2 = x.l2_norm();
    for (std::size_t i = 0; i < np; ++i) {
      out[i].converged = done[i] && N >= x.degree();
      out[i].p2_calibration_error = l2 > 0 ? (l2 - truncated_l2(x, out[i].N_used)) / l2 : 0.0;
    }
    return out;
  }
};

void check_exponent(double p, double lo) {
  if (std::isnan(p) || !(p >= lo)) throw DomainError("exponent p=" + std::to_string(p) + " out of range");
}

LpResult exact(double v) {
  LpResult r;
  r.value = v;
  r.raw_value = v;
  r.converged = true;
  r.exact = true;
  return r;
}

}  // namespace

std::vector<LpResult> lp_norms(const QElement& x, std::span<const double> ps, const LpControl& ctrl) {
  for (double p : ps) check_exponent(p, 1.0);
  std::vector<LpResult> out(ps.size());
  std::vector<double> rest;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (x.is_zero()) {
      out[i] = exact(0.0);
    } else if (ps[i] == 2.0 && ctrl.exact_p2) {
      out[i] = exact(x.l2_norm());
    } else {
      rest.push_back(ps[i]);
      where.push_back(i);
    }
  }
  if (!rest.empty()) {
    Engine e{x, Spectrum::kModulus, ctrl};
    auto r = e.run(rest);
    for (std::size_t i = 0; i < rest.size(); ++i) out[where[i]] = std::move(r[i]);
  }
  return out;
}

LpResult lp_norm(const QElement& x, double p, const LpControl& ctrl) {
  return lp_norms(x, std::span<const double>(&p, 1), ctrl).front();
}

LpResult positive_root_norm(const QElement& s, double p, const LpControl& ctrl) {
  check_exponent(p, 1e-300);
  if (s.is_zero()) return exact(0.0);
  if (p == 2.0 && ctrl.exact_p2) return exact(std::sqrt(std::max(s.mean().real(), 0.0)));
  Engine e{s, Spectrum::kPositive, ctrl};
  return e.run(std::span<const double>(&p, 1)).front();
}

}  // namespace qtorus
