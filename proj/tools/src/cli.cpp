#include "qtorus/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "qtorus/corpus.hpp"
#include "qtorus/element_io.hpp"
#include "qtorus/error.hpp"
#include "qtorus/multipliers.hpp"
#include "qtorus/norm_request.hpp"
#include "qtorus/verify.hpp"

namespace qtorus::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusFlags {
  std::optional<int> d, deg, n;
  std::optional<double> theta, density;
  std::optional<std::string> theta_law, law;
  std::optional<std::uint64_t> seed;
  bool mean_zero = false;

  void attach(CLI::App* app) {
    app->add_option("--d", d, "Dimension of the torus");
    app->add_option("--deg", deg, "Maximal |m_j| of sampled frequencies");
    app->add_option("--n", n, "Number of samples");
    app->add_option("--theta", theta, "Off-diagonal value theta_kj (k > j) for the fixed law");
    app->add_option("--density", density, "Support density in (0, 1]");
    app->add_option("--theta-law", theta_law, "fixed or random-skew");
    app->add_option("--law", law, "complex-gaussian or unit-circle");
    app->add_option("--seed", seed, "Corpus seed");
    app->add_flag("--mean-zero", mean_zero, "Drop the zero frequency");
  }

  Json patch() const {
    Json j = Json::object();
    if (d) j["d"] = *d;
    if (deg) j["max_degree"] = *deg;
    if (n) j["sample_count"] = *n;
    if (theta) j["theta"] = *theta;
    if (density) j["support_density"] = *density;
    if (theta_law) j["theta_law"] = *theta_law;
    if (law) j["coefficient_law"] = *law;
    if (seed) j["seed"] = *seed;
    if (mean_zero) j["mean_zero"] = true;
    return j;
  }
};

// Corpus flag names map to corpus document keys.
std::string corpus_key(const std::string& key) {
  static const std::map<std::string, std::string> alias = {{"deg", "max_degree"},
                                                           {"n", "sample_count"},
                                                           {"density", "support_density"},
                                                           {"theta-law", "theta_law"},
                                                           {"law", "coefficient_law"},
                                                           {"mean-zero", "mean_zero"}};
  const auto it = alias.find(key);
  return it == alias.end() ? key : it->second;
}

Json parse_value(const std::string& s) {
  Json v = Json::parse(s, nullptr, false);
  if (v.is_discarded()) return s;
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& kv, const char* flag) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(std::string(flag) + " expects key=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

Json read_config(const std::string& path) {
  Json j = Json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("config file '" + path + "' is not a JSON object");
  // A report summary carries its run configuration under "config".
  if (j.contains("config") && j["config"].is_object()) return j["config"];
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Suite flags shared by check and sweep.
struct CheckFlags {
  std::string suite;
  CorpusFlags corpus;
  std::vector<std::string> params;
  std::optional<std::string> p, q, alpha, method, k;
  std::string config;
  std::string out = ".";
  bool verbose = false;

  void attach(CLI::App* app) {
    app->add_option("--suite", suite, "Suite name");
    corpus.attach(app);
    app->add_option("--param", params, "Suite parameter key=value (value parsed as JSON when possible)");
    app->add_option("--p", p, "Shortcut for --param p=...");
    app->add_option("--q", q, "Shortcut for --param q=...");
    app->add_option("--alpha", alpha, "Shortcut for --param alpha=...");
    app->add_option("--method", method, "Shortcut for --param method=...");
    app->add_option("--k", k, "Shortcut for --param k=...");
    app->add_option("--config", config, "JSON run configuration (or a report summary); flags override it");
    app->add_option("--out", out, "Output directory");
    app->add_flag("-v,--verbose", verbose, "Progress on stderr");
  }

  // Run configuration: config file overlaid with flags.
  Json resolve() const {
    Json cfg = config.empty() ? Json::object() : read_config(config);
    Json run = {{"command", "check"},
                {"suite", cfg.value("suite", "")},
                {"corpus", cfg.value("corpus", Json::object())},
                {"params", cfg.value("params", Json::object())}};
    if (!suite.empty()) run["suite"] = suite;
    if (run["suite"].get<std::string>().empty()) throw UsageError("--suite is required");
    run["corpus"].merge_patch(corpus.patch());
    Json& params = run["params"];
    auto set = [&](const char* key, const std::optional<std::string>& v) {
      if (v) params[key] = parse_value(*v);
    };
    set("p", p);
    set("q", q);
    set("alpha", alpha);
    set("method", method);
    set("k", k);
    for (const auto& kv : params_list()) params[kv.first] = parse_value(kv.second);
    // Canonical corpus so the embedded configuration is complete.
    run["corpus"] = corpus_to_json(corpus_from_json(run["corpus"]));
    return run;
  }

  std::vector<std::pair<std::string, std::string>> params_list() const {
    std::vector<std::pair<std::string, std::string>> out_list;
    for (const auto& kv : params) out_list.push_back(split_assignment(kv, "--param"));
    return out_list;
  }
};

struct SuiteOutcome {
  int code = kPass;
  InequalityReport report;
};

SuiteOutcome run_check(const Json& run, const fs::path& dir, std::ostream& out, std::ostream& err, bool verbose) {
  const std::string suite = run.at("suite");
  if (!is_known_suite(suite)) {
    std::string known;
    for (const auto& n : suite_names()) known += " " + n;
    throw UsageError("unknown suite '" + suite + "'; known suites:" + known);
  }
  const CorpusSpec corpus = corpus_from_json(run.at("corpus"));
  if (verbose) err << "running " << suite << " on " << corpus.sample_count << " samples\n";
  SuiteOutcome o;
  o.report = run_suite(suite, corpus, run.at("params"));
  const InequalityReport& rep = o.report;
  fs::create_directories(dir);
  write_file_atomic(dir / (suite + ".csv"), report_csv(rep));
  write_file_atomic(dir / (suite + ".summary.json"), report_summary(rep, run).dump(2) + "\n");
  if (rep.witness_row) write_file_atomic(dir / (suite + ".witness.json"), rep.witness_element.dump(2) + "\n");

  out << suite << ": " << (rep.verdict ? "pass" : "FAIL") << "  rows=" << rep.rows.size()
      << "  ratio min/median/max = " << fmt(rep.min_ratio) << " / " << fmt(rep.median_ratio) << " / "
      << fmt(rep.max_ratio) << "\n";
  for (const auto& g : rep.groups)
    if (!g.pass || rep.groups.size() > 1)
      out << "  group " << g.group << ": " << (g.pass ? "pass" : "FAIL") << "  [" << fmt(g.min_ratio) << ", "
          << fmt(g.max_ratio) << "]\n";
  for (const auto& c : rep.checks) out << "  check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << "  " << c.detail << "\n";
  if (rep.verdict) return o;
  o.code = kMathFailure;
  for (const auto& row : rep.rows)
    if (row.group == "error" && row.diag.value("error_kind", "") == "numerical") o.code = kNonConvergence;
  return o;
}

int cmd_gen(const CorpusFlags& flags, const std::string& config, const std::string& dir, const std::string& prefix,
            std::ostream& out) {
  Json base = config.empty() ? Json::object() : read_config(config);
  if (base.contains("corpus")) base = base["corpus"];
  base.merge_patch(flags.patch());
  const CorpusSpec spec = corpus_from_json(base);
  fs::create_directories(dir);
  const std::vector<QElement> corpus = make_corpus(spec);
  char name[64];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::snprintf(name, sizeof name, "%s_%04zu.json", prefix.c_str(), i);
    write_element_file(fs::path(dir) / name, corpus[i]);
  }
  write_file_atomic(fs::path(dir) / (prefix + "_corpus.json"), corpus_to_json(spec).dump(2) + "\n");
  out << "wrote " << corpus.size() << " elements to " << dir << "\n";
  return kPass;
}

int cmd_info(const std::string& file, std::ostream& out) {
  const QElement x = read_element_file(file);
  out << "d = " << x.dim() << "\n";
  out << "theta = " << theta_to_json(x.theta()).dump() << "\n";
  out << "support = " << x.support_size() << " terms\n";
  out << "degree = " << x.degree() << "\n";
  out << "max |m| = " << fmt(x.max_frequency_norm()) << "\n";
  const Complex m = x.mean();
  out << "mean = " << fmt(m.real()) << (m.imag() < 0 ? " - " : " + ") << fmt(std::abs(m.imag())) << "i\n";
  out << "||x||_2 = " << fmt(x.l2_norm()) << "\n";
  return kPass;
}

struct NormFlags {
  std::string file;
  std::string space;
  std::optional<std::string> p, q, method, flavor, kind, profile, k;
  std::optional<double> alpha;
  std::optional<int> truncation, quad_points;
  bool seminorm = false;
  std::vector<std::string> apply;
  bool json = false;
};

int cmd_norm(const NormFlags& f, std::ostream& out) {
  QElement x = read_element_file(f.file);
  for (const auto& spec : f.apply) x = qtorus::apply(parse_multiplier_spec(spec, x.dim()), x);
  Json req = {{"space", f.space}};
  if (f.p) req["p"] = parse_value(*f.p);
  if (f.q) req["q"] = parse_value(*f.q);
  if (f.alpha) req["alpha"] = *f.alpha;
  if (f.k) req["k"] = parse_value(*f.k);
  if (f.method) req["method"] = *f.method;
  if (f.flavor) req["flavor"] = *f.flavor;
  if (f.kind) req["kind"] = *f.kind;
  if (f.profile) req["profile"] = *f.profile;
  if (f.truncation) req["truncation"] = *f.truncation;
  if (f.quad_points) req["quad_points"] = *f.quad_points;
  if (f.seminorm) req["seminorm"] = true;
  const NormResult r = evaluate_norm(x, req);
  if (f.json) {
    Json j = norm_result_to_json(r);
    j["tool_version"] = kToolVersion;
    j["element"] = f.file;
    j["apply"] = f.apply;
    out << j.dump(2) << "\n";
  } else {
    out << f.space << " norm = " << fmt(r.value) << "\n";
    if (r.breakdown.size() <= 12)
      for (const auto& c : r.breakdown) out << "  " << c.label << ": " << fmt(c.amount) << "\n";
  }
  return kPass;
}

int cmd_sweep(const CheckFlags& flags, const std::vector<std::string>& grid, std::ostream& out, std::ostream& err) {
  const Json base = flags.resolve();
  std::vector<std::pair<std::string, std::vector<Json>>> axes;
  for (const auto& g : grid) {
    auto [key, values] = split_assignment(g, "--grid");
    key = corpus_key(key);
    std::vector<Json> vs;
    std::size_t start = 0;
    while (start <= values.size()) {
      const auto comma = values.find(',', start);
      const std::string item = values.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (item.empty()) throw UsageError("--grid " + key + " has an empty value");
      vs.push_back(parse_value(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    axes.emplace_back(key, std::move(vs));
  }
  if (axes.empty()) throw UsageError("sweep needs at least one --grid key=v1,v2");
  std::vector<std::size_t> idx(axes.size(), 0);
  std::string table = "run,params_json,verdict,min_ratio,median_ratio,max_ratio\n";
  int code = kPass;
  for (std::size_t run_id = 0;; ++run_id) {
    Json run = base;
    Json point = Json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& [key, values] = axes[a];
      // Corpus keys route to the corpus, everything else to the suite.
      Json probe = run["corpus"];
      if (probe.contains(key)) {
        run["corpus"][key] = values[idx[a]];
      } else {
        run["params"][key] = values[idx[a]];
      }
      point[key] = values[idx[a]];
    }
    run["corpus"] = corpus_to_json(corpus_from_json(run["corpus"]));
    char sub[32];
    std::snprintf(sub, sizeof sub, "run_%03zu", run_id);
    SuiteOutcome o = run_check(run, fs::path(flags.out) / sub, out, err, flags.verbose);
    code = std::max(code, o.code);
    std::string pj = point.dump();
    std::string quoted = "\"";
    for (char c : pj) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    quoted += "\"";
    table += std::string(sub) + "," + quoted + "," + (o.report.verdict ? "pass" : "fail") + "," +
             fmt(o.report.min_ratio) + "," + fmt(o.report.median_ratio) + "," + fmt(o.report.max_ratio) + "\n";
    std::size_t a = 0;
    while (a < axes.size() && ++idx[a] == axes[a].second.size()) idx[a++] = 0;
    if (a == axes.size()) break;
  }
  write_file_atomic(fs::path(flags.out) / "sweep.csv", table);
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Function spaces on quantum tori: norms, corpora and inequality suites", "qtorus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* gen = app.add_subcommand("gen", "Write a random corpus as element files");
  CorpusFlags gen_flags;
  gen_flags.attach(gen);
  std::string gen_out = ".", gen_prefix = "sample", gen_config;
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--prefix", gen_prefix, "File name prefix");
  gen->add_option("--config", gen_config, "JSON corpus spec (or run configuration)");

  auto* norm = app.add_subcommand("norm", "Evaluate a norm of an element file");
  NormFlags nf;
  norm->add_option("file", nf.file, "Element file")->required();
  norm->add_option("--space", nf.space, "lp, sobolev, potential, besov or triebel")->required();
  norm->add_option("--p", nf.p, "Integrability exponent (number or inf)");
  norm->add_option("--q", nf.q, "Summability exponent (number or inf)");
  norm->add_option("--alpha", nf.alpha, "Smoothness");
  norm->add_option("--k", nf.k, "Order (integer or auto)");
  norm->add_option("--method", nf.method, "Characterization: blocks, poisson, heat, circular-poisson, circular-heat, diff");
  norm->add_option("--flavor", nf.flavor, "Triebel-Lizorkin flavor: column, row, mixture");
  norm->add_option("--kind", nf.kind, "Potential kind: bessel or riesz");
  norm->add_option("--profile", nf.profile, "Littlewood-Paley profile: bump or bump-shifted");
  norm->add_option("--truncation", nf.truncation, "Fixed matrix truncation level N (0 = adaptive)");
  norm->add_option("--quad-points", nf.quad_points, "Quadrature points (odd)");
  norm->add_flag("--seminorm", nf.seminorm, "Top-order Sobolev seminorm only");
  norm->add_option("--apply", nf.apply, "Multiplier applied first, e.g. circular-poisson:r=0.5:k=1");
  norm->add_flag("--json", nf.json, "Print the full result as JSON");

  auto* check = app.add_subcommand("check", "Run an inequality suite and write CSV + summary");
  CheckFlags cf;
  cf.attach(check);

  auto* sweep = app.add_subcommand("sweep", "Run a suite over the cartesian product of parameter lists");
  CheckFlags sf;
  sf.attach(sweep);
  std::vector<std::string> grid;
  sweep->add_option("--grid", grid, "key=v1,v2,... (corpus or suite key)")->required();

  auto* info = app.add_subcommand("info", "Print theta, support and degree of an element file");
  std::string info_file;
  info->add_option("file", info_file, "Element file")->required();

  auto* suites = app.add_subcommand("suites", "List suite names");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  try {
    if (gen->parsed()) return cmd_gen(gen_flags, gen_config, gen_out, gen_prefix, out);
    if (norm->parsed()) return cmd_norm(nf, out);
    if (check->parsed()) return run_check(cf.resolve(), cf.out, out, err, cf.verbose).code;
    if (sweep->parsed()) return cmd_sweep(sf, grid, out, err);
    if (info->parsed()) return cmd_info(info_file, out);
    if (suites->parsed()) {
      for (const auto& n : suite_names()) out << n << "\n";
      return kPass;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qtorus::cli
