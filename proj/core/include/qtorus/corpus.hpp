#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtorus/element.hpp"

namespace qtorus {

enum class CoefficientLaw { kComplexGaussian, kUnitCircle };
enum class ThetaLaw { kFixed, kRandomSkew };

struct CorpusSpec {
  int d = 2;
  int max_degree = 4;
  double support_density = 0.5;
  CoefficientLaw coefficient_law = CoefficientLaw::kComplexGaussian;
  ThetaLaw theta_law = ThetaLaw::kFixed;
  // Off-diagonal value for the fixed law: theta_kj = theta for k > j.
  double theta = 0.3;
  std::uint64_t seed = 1;
  int sample_count = 20;
  bool mean_zero = false;
};

// Sample `index` of the corpus; depends only on (spec, index).
QElement random_element(const CorpusSpec& spec, std::size_t index);
std::vector<QElement> make_corpus(const CorpusSpec& spec);
ThetaMatrix sample_theta(const CorpusSpec& spec, std::size_t index);

nlohmann::json corpus_to_json(const CorpusSpec& spec);
// Missing keys keep their defaults.
CorpusSpec corpus_from_json(const nlohmann::json& j, CorpusSpec base = {});

// Deterministic generator with platform-independent uniform and normal draws.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();  // in (0, 1)
  double normal();

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qtorus
