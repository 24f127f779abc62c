#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qtorus/verify.hpp"

namespace qtorus::detail {

struct SuiteDef {
  std::string name;
  std::string description;
  // Default parameters given the caller's parameters (defaults may depend on p).
  std::function<nlohmann::json(const nlohmann::json& user, const CorpusSpec& corpus)> defaults;
  // Validates resolved parameters; throws InvalidInput.
  std::function<void(const nlohmann::json& resolved, const CorpusSpec& corpus)> validate;
  std::function<std::vector<ReportRow>(const QElement& x, std::size_t id, const nlohmann::json& resolved)> rows;
  std::function<Bound(const nlohmann::json& resolved)> bound;
  // Optional: fixed probe elements appended after the corpus.
  std::function<std::vector<QElement>(const CorpusSpec& corpus, const nlohmann::json& resolved)> probes;
  // Optional: suite-level checks beyond the bound.
  std::function<void(InequalityReport& report)> finalize;
  std::vector<std::string> notes;
};

const std::vector<SuiteDef>& suite_registry();

}  // namespace qtorus::detail
