#include "qtorus/multipliers.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "qtorus/error.hpp"

namespace qtorus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const std::vector<double>& u, const MultiIndex& m) {
  if (u.size() != m.size())
    throw DimensionMismatch("shift has " + std::to_string(u.size()) + " components, frequency has " +
                            std::to_string(m.size()));
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * m[j];
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// (|m|)(|m|-1)...(|m|-k+1) for k >= 0, 1/((|m|+1)...(|m|-k)) for k < 0.
double circular_factor(double a, int k) {
  double c = 1.0;
  if (k >= 0) {
    for (int i = 0; i < k; ++i) c *= a - i;
  } else {
    for (int i = 1; i <= -k; ++i) c /= a + i;
  }
  return c;
}

}  // namespace

Symbol operator*(const Symbol& a, const Symbol& b) {
  Symbol s;
  s.name = a.name + "*" + b.name;
  s.value = [fa = a.value, fb = b.value](const MultiIndex& m) { return fa(m) * fb(m); };
  if (a.domain || b.domain) {
    s.domain = [da = a.domain, db = b.domain](const MultiIndex& m) {
      return (!da || da(m)) && (!db || db(m));
    };
    s.domain_rule = a.domain_rule + (a.domain && b.domain ? "; " : "") + b.domain_rule;
  }
  return s;
}

QElement apply(const Symbol& phi, const QElement& x) {
  if (phi.domain) {
    for (const Term& t : x.terms()) {
      if (!phi.domain(t.m))
        throw DomainError(phi.name + ": frequency " + t.m.str() + " violates " + phi.domain_rule);
    }
  }
  return map_coefficients(x, [&](const MultiIndex& m, Complex c) { return phi.value(m) * c; });
}

const char* semigroup_name(Semigroup s) {
  switch (s) {
    case Semigroup::kPoisson: return "poisson";
    case Semigroup::kHeat: return "heat";
    case Semigroup::kCircularPoisson: return "circular-poisson";
    case Semigroup::kCircularHeat: return "circular-heat";
  }
  return "?";
}

Semigroup semigroup_from_name(const std::string& name) {
  if (name == "poisson") return Semigroup::kPoisson;
  if (name == "heat") return Semigroup::kHeat;
  if (name == "circular-poisson") return Semigroup::kCircularPoisson;
  if (name == "circular-heat") return Semigroup::kCircularHeat;
  throw InvalidInput("unknown semigroup '" + name + "' (poisson, heat, circular-poisson, circular-heat)");
}

bool is_circular(Semigroup s) { return s == Semigroup::kCircularPoisson || s == Semigroup::kCircularHeat; }

Symbol identity_symbol() {
  return {"identity", [](const MultiIndex&) { return Complex(1.0); }, {}, {}};
}

Symbol translation_symbol(std::vector<double> u) {
  return {"translate", [u = std::move(u)](const MultiIndex& m) { return std::polar(1.0, kTwoPi * dot(u, m)); },
          {}, {}};
}

Symbol derivative_symbol(const MultiIndex& mu) {
  for (int v : mu)
    if (v < 0) throw DomainError("derivative order must be non-negative");
  return {"deriv", [mu](const MultiIndex& m) {
            if (m.size() != mu.size()) throw DimensionMismatch("derivative order has wrong dimension");
            Complex c(1.0);
            for (std::size_t j = 0; j < mu.size(); ++j)
              for (int i = 0; i < mu[j]; ++i) c *= Complex(0.0, kTwoPi * m[j]);
            return c;
          },
          {}, {}};
}

Symbol laplacian_symbol() {
  return {"laplacian",
          [](const MultiIndex& m) { return Complex(-kTwoPi * kTwoPi * static_cast<double>(m.norm_sq())); }, {}, {}};
}

Symbol bessel_symbol(double alpha) {
  return {"bessel:alpha=" + fmt(alpha),
          [alpha](const MultiIndex& m) {
            return Complex(std::pow(1.0 + static_cast<double>(m.norm_sq()), alpha / 2.0));
          },
          {}, {}};
}

Symbol riesz_symbol(double alpha) {
  return {"riesz:alpha=" + fmt(alpha),
          [alpha](const MultiIndex& m) { return m.is_zero() ? Complex{} : Complex(std::pow(m.norm(), alpha)); },
          [](const MultiIndex& m) { return !m.is_zero(); }, "zero mean (no m=0 term)"};
}

Symbol difference_symbol(std::vector<double> u, int k) {
  if (k < 1) throw DomainError("difference order must be >= 1");
  return {"diff:k=" + std::to_string(k),
          [u = std::move(u), k](const MultiIndex& m) {
            Complex b = std::polar(1.0, kTwoPi * dot(u, m)) - 1.0;
            Complex c(1.0);
            for (int i = 0; i < k; ++i) c *= b;
            return c;
          },
          {}, {}};
}

Symbol fejer_symbol(int N) {
  if (N < 0) throw DomainError("Fejer order must be >= 0");
  return {"fejer:N=" + std::to_string(N),
          [N](const MultiIndex& m) {
            double w = 1.0;
            for (int v : m) w *= std::abs(v) > N ? 0.0 : 1.0 - std::abs(v) / (N + 1.0);
            return Complex(w);
          },
          {}, {}};
}

Symbol semigroup_symbol(Semigroup kind, double eps, int k) {
  if (is_circular(kind)) throw DomainError("use circular_symbol for circular semigroups");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("semigroup parameter eps must be >= 0");
  const bool heat = kind == Semigroup::kHeat;
  Symbol s;
  s.name = std::string(semigroup_name(kind)) + ":eps=" + fmt(eps) + ":k=" + std::to_string(k);
  s.value = [heat, eps, k](const MultiIndex& m) {
    if (m.is_zero()) return Complex(k == 0 ? 1.0 : 0.0);
    const double a = heat ? kTwoPi * kTwoPi * static_cast<double>(m.norm_sq()) : kTwoPi * m.norm();
    const double decay = std::exp(-a * eps);
    if (k == 0) return Complex(decay);
    return Complex(std::pow(k > 0 ? -a : a, k) * decay);
  };
  if (k < 0) {
    s.domain = [](const MultiIndex& m) { return !m.is_zero(); };
    s.domain_rule = "zero mean (negative order integrates)";
  }
  return s;
}

Symbol circular_symbol(Semigroup kind, double r, int k) {
  if (!is_circular(kind)) throw DomainError("use semigroup_symbol for eps-parametrized semigroups");
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("circular parameter r must lie in [0, 1)");
  const bool heat = kind == Semigroup::kCircularHeat;
  Symbol s;
  s.name = std::string(semigroup_name(kind)) + ":r=" + fmt(r) + ":k=" + std::to_string(k);
  s.value = [heat, r, k](const MultiIndex& m) {
    const double a = heat ? static_cast<double>(m.norm_sq()) : m.norm();
    const double c = circular_factor(a, k);
    if (c == 0.0) return Complex{};
    return Complex(c * std::pow(r, a - k));
  };
  if (!heat && k >= 1) {
    s.domain = [k](const MultiIndex& m) { return m.norm_sq() >= static_cast<long long>(k) * k; };
    s.domain_rule = "frequencies |m| < " + std::to_string(k) + " removed first (x_k)";
  }
  return s;
}

QElement derivative(const QElement& x, const MultiIndex& mu) { return apply(derivative_symbol(mu), x); }
QElement laplacian(const QElement& x) { return apply(laplacian_symbol(), x); }
QElement bessel_potential(const QElement& x, double alpha) { return apply(bessel_symbol(alpha), x); }
QElement riesz_potential(const QElement& x, double alpha) { return apply(riesz_symbol(alpha), x); }
QElement translate(const QElement& x, const std::vector<double>& u) { return apply(translation_symbol(u), x); }
QElement difference(const QElement& x, const std::vector<double>& u, int k) {
  return apply(difference_symbol(u, k), x);
}
QElement fejer_mean(const QElement& x, int N) { return apply(fejer_symbol(N), x); }

QElement semigroup(const QElement& x, Semigroup kind, double eps_or_r, int k) {
  return apply(is_circular(kind) ? circular_symbol(kind, eps_or_r, k) : semigroup_symbol(kind, eps_or_r, k), x);
}

std::pair<Complex, QElement> strip_mean(const QElement& x) {
  Complex mu = x.mean();
  return {mu, map_coefficients(x, [](const MultiIndex& m, Complex c) { return m.is_zero() ? Complex{} : c; })};
}

Symbol parse_multiplier_spec(const std::string& spec, int d) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.empty() || parts[0].empty()) throw InvalidInput("empty multiplier spec");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw InvalidInput("multiplier spec field '" + parts[i] + "' lacks '='");
    kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }
  auto number = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (fallback) return *fallback;
      throw InvalidInput("multiplier '" + parts[0] + "' needs " + key + "=...");
    }
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InvalidInput("bad number for " + key + ": '" + it->second + "'");
    }
  };
  auto vec = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidInput("multiplier '" + parts[0] + "' needs " + key + "=a,b,...");
    std::vector<double> v;
    std::stringstream vs(it->second);
    for (std::string t; std::getline(vs, t, ',');) {
      try {
        v.push_back(std::stod(t));
      } catch (const std::exception&) {
        throw InvalidInput("bad component '" + t + "' in " + key);
      }
    }
    if (static_cast<int>(v.size()) != d)
      throw DimensionMismatch(key + " has " + std::to_string(v.size()) + " components, expected " + std::to_string(d));
    return v;
  };
  auto integer = [&](const std::string& key, int fallback) {
    double v = number(key, static_cast<double>(fallback));
    if (v != std::floor(v)) throw InvalidInput(key + " must be an integer");
    return static_cast<int>(v);
  };
  const std::string& name = parts[0];
  if (name == "identity") return identity_symbol();
  if (name == "bessel") return bessel_symbol(number("alpha"));
  if (name == "riesz") return riesz_symbol(number("alpha"));
  if (name == "laplacian") return laplacian_symbol();
  if (name == "fejer") return fejer_symbol(integer("N", -1));
  if (name == "translate") return translation_symbol(vec("u"));
  if (name == "diff") return difference_symbol(vec("u"), integer("k", 1));
  if (name == "deriv") {
    std::vector<double> mu = vec("mu");
    MultiIndex m(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) m[j] = static_cast<int>(mu[j]);
    return derivative_symbol(m);
  }
  if (name == "poisson" || name == "heat")
    return semigroup_symbol(semigroup_from_name(name), number("eps"), integer("k", 0));
  if (name == "circular-poisson" || name == "circular-heat")
    return circular_symbol(semigroup_from_name(name), number("r"), integer("k", 0));
  throw InvalidInput("unknown multiplier '" + name + "'");
}

}  // namespace qtorus
