#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "qtorus/element_io.hpp"
#include "qtorus/error.hpp"
#include "qtorus/parallel.hpp"
#include "qtorus/verify.hpp"
#include "suite_registry.hpp"

namespace qtorus {
namespace {

const detail::SuiteDef& find_suite(const std::string& name) {
  for (const auto& s : detail::suite_registry())
    if (s.name == name) return s;
  std::string known;
  for (const auto& s : detail::suite_registry()) known += (known.empty() ? "" : ", ") + s.name;
  throw InvalidInput("unknown suite '" + name + "' (known: " + known + ")");
}

bool respects(const Bound& b, double r) {
  if (!std::isfinite(r)) return b.kind == BoundKind::kRecord;
  switch (b.kind) {
    case BoundKind::kRecord: return true;
    case BoundKind::kUpper: return r <= b.hi * b.slack;
    case BoundKind::kLower: return r >= b.lo / b.slack;
    case BoundKind::kBracket: return r >= b.lo && r <= b.hi;
    case BoundKind::kExact: return r <= b.hi;
    case BoundKind::kSpread: return r > 0.0;
  }
  return false;
}

double median(std::vector<double> v) {
  if (v.empty()) return NAN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

const char* bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::kRecord: return "record";
    case BoundKind::kUpper: return "upper";
    case BoundKind::kLower: return "lower";
    case BoundKind::kBracket: return "bracket";
    case BoundKind::kSpread: return "spread";
    case BoundKind::kExact: return "exact";
  }
  return "?";
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : detail::suite_registry()) out.push_back(s.name);
  return out;
}

bool is_known_suite(const std::string& name) {
  const auto& r = detail::suite_registry();
  return std::any_of(r.begin(), r.end(), [&](const auto& s) { return s.name == name; });
}

nlohmann::json resolve_suite_params(const std::string& name, const nlohmann::json& params, const CorpusSpec& corpus) {
  const auto& def = find_suite(name);
  nlohmann::json user = params.is_null() ? nlohmann::json::object() : params;
  if (!user.is_object()) throw InvalidInput("suite parameters must be an object");
  nlohmann::json resolved = def.defaults(user, corpus);
  for (auto it = user.begin(); it != user.end(); ++it)
    if (!resolved.contains(it.key()))
      throw InvalidInput("suite '" + name + "' has no parameter '" + it.key() + "'");
  resolved.merge_patch(user);
  try {
    def.validate(resolved, corpus);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("suite '" + name + "' parameters: " + e.what());
  } catch (const DomainError& e) {
    throw InvalidInput("suite '" + name + "': " + e.what());
  }
  return resolved;
}

std::vector<QElement> suite_samples(const std::string& name, const CorpusSpec& corpus, const nlohmann::json& resolved) {
  const auto& def = find_suite(name);
  std::vector<QElement> samples = make_corpus(corpus);
  if (def.probes) {
    auto extra = def.probes(corpus, resolved);
    samples.insert(samples.end(), extra.begin(), extra.end());
  }
  return samples;
}

std::vector<ReportRow> evaluate_sample(const std::string& name, const nlohmann::json& resolved, const QElement& x,
                                       std::size_t sample_id) {
  const auto& def = find_suite(name);
  try {
    auto rows = def.rows(x, sample_id, resolved);
    for (auto& r : rows) r.sample_id = sample_id;
    return rows;
  } catch (const Error& e) {
    ReportRow r;
    r.sample_id = sample_id;
    r.group = "error";
    r.lhs = r.rhs = r.ratio = NAN;
    r.diag["error"] = e.what();
    r.diag["error_kind"] = dynamic_cast<const ConvergenceFailure*>(&e) || dynamic_cast<const BudgetExceeded*>(&e)
                               ? "numerical"
                               : "domain";
    return {r};
  }
}

InequalityReport run_suite(const std::string& name, const CorpusSpec& corpus, const nlohmann::json& params) {
  const auto& def = find_suite(name);
  InequalityReport rep;
  rep.suite = name;
  rep.corpus = corpus;
  rep.params = resolve_suite_params(name, params, corpus);
  rep.notes = def.notes;
  std::vector<QElement> samples = suite_samples(name, corpus, rep.params);
  std::vector<std::vector<ReportRow>> per(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { per[i] = evaluate_sample(name, rep.params, samples[i], i); });
  for (auto& v : per)
    for (auto& r : v) rep.rows.push_back(std::move(r));

  rep.bound = def.bound(rep.params);
  std::vector<double> all;
  std::map<std::string, std::vector<double>> by_group;
  std::vector<std::string> order;
  std::size_t errors = 0;
  for (const auto& r : rep.rows) {
    if (r.group == "error") {
      ++errors;
      continue;
    }
    if (!r.included) continue;
    if (!by_group.count(r.group)) order.push_back(r.group);
    by_group[r.group].push_back(r.ratio);
    all.push_back(r.ratio);
  }
  bool pass = errors == 0;
  for (const auto& g : order) {
    const auto& v = by_group[g];
    GroupSummary s;
    s.group = g;
    s.count = v.size();
    s.min_ratio = *std::min_element(v.begin(), v.end());
    s.max_ratio = *std::max_element(v.begin(), v.end());
    s.median_ratio = median(v);
    s.pass = std::all_of(v.begin(), v.end(), [&](double r) { return respects(rep.bound, r); });
    if (rep.bound.kind == BoundKind::kSpread) s.pass = s.pass && s.max_ratio / s.min_ratio < rep.bound.hi;
    pass = pass && s.pass;
    rep.groups.push_back(s);
  }
  if (!all.empty()) {
    rep.min_ratio = *std::min_element(all.begin(), all.end());
    rep.max_ratio = *std::max_element(all.begin(), all.end());
    rep.median_ratio = median(all);
  }
  if (errors) rep.checks.push_back({"evaluation errors", false, std::to_string(errors) + " sample(s) failed to evaluate"});
  if (def.finalize) def.finalize(rep);
  for (const auto& c : rep.checks) pass = pass && c.pass;
  rep.verdict = pass;

  // Extremal witness: smallest ratio for lower bounds, otherwise the ratio farthest
  // from its group median on a log scale (the largest one for one-sided bounds).
  std::optional<std::size_t> best;
  double score = -1.0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (!r.included || r.group == "error" || !std::isfinite(r.ratio)) continue;
    double s;
    if (rep.bound.kind == BoundKind::kLower) {
      s = -r.ratio;
    } else if (rep.bound.kind == BoundKind::kSpread || rep.bound.kind == BoundKind::kBracket) {
      double med = 1.0;
      for (const auto& g : rep.groups)
        if (g.group == r.group) med = g.median_ratio;
      s = (r.ratio > 0 && med > 0) ? std::abs(std::log(r.ratio / med)) : 1e300;
    } else {
      s = r.ratio;
    }
    if (!best || s > score) {
      best = i;
      score = s;
    }
  }
  if (best) {
    rep.witness_row = best;
    rep.witness_element = element_to_json(samples[rep.rows[*best].sample_id]);
  }
  return rep;
}

std::string report_csv(const InequalityReport& r) {
  std::ostringstream os;
  os << kCsvSchema << "\n";
  for (const auto& row : r.rows) {
    nlohmann::json params = row.params;
    if (!row.group.empty()) params["group"] = row.group;
    nlohmann::json diag = row.diag;
    if (!row.included) diag["included"] = false;
    os << r.suite << "," << row.sample_id << "," << csv_quote(params.dump()) << "," << num(row.lhs) << ","
       << num(row.rhs) << "," << num(row.ratio) << "," << csv_quote(diag.dump()) << "\n";
  }
  return os.str();
}

nlohmann::json report_summary(const InequalityReport& r, const nlohmann::json& config) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : r.groups)
    groups.push_back({{"group", g.group},
                      {"count", g.count},
                      {"min_ratio", g.min_ratio},
                      {"median_ratio", g.median_ratio},
                      {"max_ratio", g.max_ratio},
                      {"pass", g.pass}});
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  nlohmann::json j = {
      {"tool_version", kToolVersion},
      {"csv_schema", kCsvSchema},
      {"csv_schema_version", kCsvSchemaVersion},
      {"suite", r.suite},
      {"config", config},
      {"params", r.params},
      {"corpus", corpus_to_json(r.corpus)},
      {"rows", r.rows.size()},
      {"summary", {{"min_ratio", r.min_ratio}, {"median_ratio", r.median_ratio}, {"max_ratio", r.max_ratio}}},
      {"groups", groups},
      {"bound", {{"kind", bound_name(r.bound.kind)}, {"lo", r.bound.lo}, {"hi", r.bound.hi}, {"slack", r.bound.slack}}},
      {"checks", checks},
      {"verdict", r.verdict ? "pass" : "fail"},
      {"notes", r.notes},
  };
  if (r.witness_row) {
    const auto& row = r.rows[*r.witness_row];
    j["witness"] = {{"row", *r.witness_row},
                    {"sample_id", row.sample_id},
                    {"group", row.group},
                    {"ratio", row.ratio},
                    {"element", r.witness_element}};
  }
  return j;
}

}  // namespace qtorus
