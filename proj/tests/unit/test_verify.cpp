#include <doctest.h>

#include "qtorus/corpus.hpp"
#include "qtorus/element_io.hpp"
#include "qtorus/error.hpp"
#include "qtorus/verify.hpp"

using namespace qtorus;

namespace {

CorpusSpec small_corpus() {
  CorpusSpec c;
  c.max_degree = 3;
  c.sample_count = 6;
  c.seed = 11;
  return c;
}

}  // namespace

TEST_CASE("suite registry") {
  const auto names = suite_names();
  CHECK(names.size() == 18);
  for (const char* n : {"poincare", "besov_equiv", "triebel_equiv", "schur_identity", "marchaud", "kfunc"})
    CHECK(is_known_suite(n));
  CHECK_FALSE(is_known_suite("nope"));
  CHECK_THROWS_AS(run_suite("nope", small_corpus()), InvalidInput);
  CHECK_THROWS_AS(resolve_suite_params("poincare", {{"bogus", 1}}, small_corpus()), InvalidInput);
  CHECK_THROWS_AS(resolve_suite_params("besov_equiv", {{"p", 0.5}}, small_corpus()), InvalidInput);
}

TEST_CASE("reports are deterministic") {
  const CorpusSpec c = small_corpus();
  const InequalityReport a = run_suite("besov_equiv", c);
  const InequalityReport b = run_suite("besov_equiv", c);
  CHECK(report_csv(a) == report_csv(b));
  CHECK(report_summary(a).dump() == report_summary(b).dump());
  CHECK(a.verdict);
}

TEST_CASE("CSV layout") {
  const InequalityReport r = run_suite("poincare", small_corpus());
  const std::string csv = report_csv(r);
  CHECK(csv.rfind(std::string(kCsvSchema) + "\n", 0) == 0);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(static_cast<std::size_t>(lines) == r.rows.size() + 1);
  const nlohmann::json s = report_summary(r);
  CHECK(s.at("csv_schema_version") == kCsvSchemaVersion);
  CHECK(s.at("verdict") == "pass");
  CHECK(s.at("tool_version") == kToolVersion);
}

TEST_CASE("witness replays to the same rows") {
  const CorpusSpec c = small_corpus();
  for (const char* suite : {"poincare", "besov_equiv", "lifting"}) {
    CAPTURE(suite);
    const InequalityReport r = run_suite(suite, c);
    REQUIRE(r.witness_row.has_value());
    const ReportRow& w = r.rows[*r.witness_row];
    const QElement x = element_from_json(r.witness_element);
    const auto replay = evaluate_sample(suite, r.params, x, w.sample_id);
    bool found = false;
    for (const ReportRow& row : replay)
      if (row.group == w.group && row.params == w.params) {
        found = true;
        CHECK(row.ratio == w.ratio);
        CHECK(row.lhs == w.lhs);
      }
    CHECK(found);
  }
}

TEST_CASE("a bound that cannot hold fails with a witness") {
  const InequalityReport r = run_suite("sandwich", small_corpus(), {{"constant", 0.5}});
  CHECK_FALSE(r.verdict);
  CHECK(r.witness_row.has_value());
}

TEST_CASE("mathematical errors become error rows") {
  const CorpusSpec c = small_corpus();
  const nlohmann::json resolved = resolve_suite_params("schur_identity", {}, c);
  const QElement too_big = monomial(ThetaMatrix::zero(3), {1, 0, 0});
  const auto rows = evaluate_sample("schur_identity", resolved, too_big, 0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].group == "error");
  CHECK(rows[0].diag.at("error_kind") == "numerical");
}

TEST_CASE("the exact Poincare constant is attained by the probes") {
  const InequalityReport r = run_suite("poincare", small_corpus());
  CHECK(r.verdict);
  CHECK(r.max_ratio == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-10));
}
