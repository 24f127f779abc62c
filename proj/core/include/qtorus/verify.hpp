#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtorus/corpus.hpp"
#include "qtorus/element.hpp"

namespace qtorus {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kCsvSchema = "suite,sample_id,param_json,lhs,rhs,ratio,diag_json";
inline constexpr int kCsvSchemaVersion = 1;

struct ReportRow {
  std::size_t sample_id = 0;
  // Rows sharing a group are judged together (e.g. one spread per (alpha, q)).
  std::string group;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  // False for degenerate rows (0/0) that carry no information about the bound.
  bool included = true;
  nlohmann::json diag = nlohmann::json::object();
};

enum class BoundKind {
  kRecord,   // no assertion; ratios are reported
  kUpper,    // ratio <= hi * slack
  kLower,    // ratio >= lo / slack
  kBracket,  // lo <= ratio <= hi
  kSpread,   // max/min < hi within each group
  kExact,    // ratio (an absolute deviation) <= hi
};

struct Bound {
  BoundKind kind = BoundKind::kRecord;
  double lo = 0.0;
  double hi = 0.0;
  double slack = 1.0;
};

struct CheckOutcome {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct GroupSummary {
  std::string group;
  std::size_t count = 0;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  bool pass = true;
};

struct InequalityReport {
  std::string suite;
  nlohmann::json params;
  CorpusSpec corpus;
  std::vector<ReportRow> rows;
  std::vector<GroupSummary> groups;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  Bound bound;
  std::vector<CheckOutcome> checks;
  bool verdict = true;
  std::optional<std::size_t> witness_row;
  nlohmann::json witness_element;  // element document of the extremal sample
  std::vector<std::string> notes;
};

std::vector<std::string> suite_names();
bool is_known_suite(const std::string& name);
// Suite parameters with defaults filled in.
nlohmann::json resolve_suite_params(const std::string& name, const nlohmann::json& params, const CorpusSpec& corpus);

// Never throws on mathematical failure; throws InvalidInput for unknown suites or bad parameters.
InequalityReport run_suite(const std::string& name, const CorpusSpec& corpus, const nlohmann::json& params = {});

// Elements evaluated by a suite: the corpus plus any fixed probe elements.
std::vector<QElement> suite_samples(const std::string& name, const CorpusSpec& corpus, const nlohmann::json& resolved);
// Rows of one sample under resolved parameters; re-evaluating a witness reproduces its rows.
std::vector<ReportRow> evaluate_sample(const std::string& name, const nlohmann::json& resolved, const QElement& x,
                                       std::size_t sample_id);

// Serialization.
std::string report_csv(const InequalityReport& r);
nlohmann::json report_summary(const InequalityReport& r, const nlohmann::json& config = nlohmann::json::object());

}  // namespace qtorus
