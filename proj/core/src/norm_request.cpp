#include <cmath>
#include <set>

#include "qtorus/error.hpp"
#include "qtorus/norm_request.hpp"
#include "qtorus/smoothness.hpp"

namespace qtorus {
namespace {

using Json = nlohmann::json;

int auto_order(const std::string& method, double alpha) {
  if (method == "heat" || method == "circular-heat") return static_cast<int>(std::floor(alpha / 2.0)) + 1;
  if (method == "diff") return std::max(1, static_cast<int>(std::floor(alpha)) + 1);
  return static_cast<int>(std::floor(alpha)) + 1;
}

int order_of(const Json& r, const std::string& method, double alpha) {
  const Json& k = r.at("k");
  if (k.is_string()) {
    if (k.get<std::string>() != "auto") throw InvalidInput("k must be an integer or \"auto\"");
    return auto_order(method, alpha);
  }
  return k.get<int>();
}

NormOptions options_of(const Json& r) {
  NormOptions o;
  o.profile = LPProfile::by_name(r.at("profile").get<std::string>());
  const int N = r.at("truncation").get<int>();
  if (N < 0) throw InvalidInput("truncation must be >= 0");
  if (N > 0) {
    o.lp.schedule = {N};
    o.lp.extrapolate = false;
    o.lp.extend = false;
  }
  o.quad.points = r.at("quad_points").get<int>();
  if (o.quad.points < 5 || o.quad.points % 2 == 0) throw InvalidInput("quad_points must be odd and >= 5");
  return o;
}

const std::set<std::string> kSpaces = {"lp", "sobolev", "potential", "besov", "triebel"};

}  // namespace

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Infinity" || s == "INF") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("invalid exponent '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("invalid exponent '" + s + "'");
  return v;
}

double parse_exponent(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_exponent(v.get<std::string>());
  throw InvalidInput("exponent must be a number or \"inf\", got " + v.dump());
}

Json exponent_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

Json resolve_norm_request(const Json& request) {
  if (!request.is_object()) throw InvalidInput("norm request must be an object");
  if (!request.contains("space")) throw InvalidInput("norm request needs a \"space\"");
  const std::string space = request.at("space").get<std::string>();
  if (!kSpaces.count(space)) throw InvalidInput("unknown space '" + space + "' (lp, sobolev, potential, besov, triebel)");
  Json r = {{"space", space}, {"p", 2}, {"truncation", 0}, {"profile", "bump"}, {"quad_points", 129}};
  if (space == "sobolev") {
    r["k"] = 1;
    r["seminorm"] = false;
  } else if (space == "potential") {
    r["alpha"] = 1;
    r["kind"] = "bessel";
  } else if (space == "besov") {
    r["alpha"] = 0.5;
    r["q"] = 2;
    r["method"] = "blocks";
    r["k"] = "auto";
    r["include_mean"] = true;
  } else if (space == "triebel") {
    r["alpha"] = 0.5;
    r["method"] = "blocks";
    r["flavor"] = "column";
    r["k"] = "auto";
  }
  for (auto it = request.begin(); it != request.end(); ++it)
    if (!r.contains(it.key())) throw InvalidInput("space '" + space + "' has no parameter '" + it.key() + "'");
  r.merge_patch(request);
  const double p = parse_exponent(r.at("p"));
  if (!(p >= 1.0)) throw InvalidInput("p must lie in [1, inf]");
  r["p"] = exponent_to_json(p);
  if (r.contains("q")) {
    const double q = parse_exponent(r.at("q"));
    if (!(q > 0.0)) throw InvalidInput("q must be positive");
    r["q"] = exponent_to_json(q);
  }
  return r;
}

NormResult evaluate_norm(const QElement& x, const Json& request) {
  Json r;
  NormOptions opts;
  try {
    r = resolve_norm_request(request);
    opts = options_of(r);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("norm request: ") + e.what());
  }
  const std::string space = r.at("space");
  const double p = parse_exponent(r.at("p"));
  NormResult out;
  if (space == "lp") {
    LpResult lp = lp_norm(x, p, opts.lp);
    out.value = lp.value;
    out.breakdown.push_back({"lp", lp.value});
    out.diagnostics = {{"N_used", lp.N_used},
                       {"raw_value", lp.raw_value},
                       {"p2_calibration_error", lp.p2_calibration_error},
                       {"last_change", lp.last_change},
                       {"converged", lp.converged},
                       {"exact", lp.exact}};
  } else if (space == "sobolev") {
    out = sobolev_norm(x, r.at("k").get<int>(), p, r.at("seminorm").get<bool>(), opts);
  } else if (space == "potential") {
    const double alpha = r.at("alpha").get<double>();
    const std::string kind = r.at("kind");
    if (kind == "bessel") {
      out = potential_norm(x, alpha, p, opts);
    } else if (kind == "riesz") {
      out = riesz_potential_norm(x, alpha, p, opts);
    } else {
      throw InvalidInput("potential kind must be bessel or riesz");
    }
  } else if (space == "besov") {
    const double alpha = r.at("alpha").get<double>();
    const double q = parse_exponent(r.at("q"));
    const std::string method = r.at("method");
    if (method == "blocks") {
      out = besov_norm(x, alpha, p, q, opts);
    } else if (method == "diff") {
      SmoothnessOptions so;
      so.norm = opts;
      out = besov_diff_norm(x, alpha, p, q, order_of(r, method, alpha), r.at("include_mean").get<bool>(), so);
    } else {
      const Semigroup kind = semigroup_from_name(method);
      out = besov_norm_semigroup(x, alpha, p, q, kind, order_of(r, method, alpha), opts);
    }
  } else {
    const double alpha = r.at("alpha").get<double>();
    const std::string method = r.at("method");
    if (method == "blocks") {
      out = triebel_norm(x, alpha, p, triebel_flavor_from_name(r.at("flavor")), opts);
    } else if (method == "poisson" || method == "heat") {
      out = triebel_norm_semigroup(x, alpha, p, semigroup_from_name(method), order_of(r, method, alpha), opts);
    } else {
      throw InvalidInput("Triebel-Lizorkin method must be blocks, poisson or heat");
    }
  }
  out.diagnostics["request"] = r;
  return out;
}

}  // namespace qtorus
