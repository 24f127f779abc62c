#include "qtorus/corpus.hpp"

#include <cmath>
#include <numbers>

#include "qtorus/element_io.hpp"
#include "qtorus/error.hpp"

namespace qtorus {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SampleRng::SampleRng(std::uint64_t seed) : state_(seed) {}

// splitmix64
std::uint64_t SampleRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SampleRng::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

double SampleRng::normal() {
  const double u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

void validate(const CorpusSpec& s) {
  if (s.d < 1 || s.d > static_cast<int>(MultiIndex::kMaxDim)) throw InvalidInput("corpus dimension out of range");
  if (s.max_degree < 1) throw InvalidInput("corpus max_degree must be >= 1");
  if (!(s.support_density > 0.0 && s.support_density <= 1.0))
    throw InvalidInput("corpus support_density must lie in (0, 1]");
  if (s.sample_count < 0) throw InvalidInput("corpus sample_count must be >= 0");
}

}  // namespace

ThetaMatrix sample_theta(const CorpusSpec& spec, std::size_t index) {
  if (spec.theta_law == ThetaLaw::kFixed) return ThetaMatrix::uniform(spec.d, spec.theta);
  SampleRng rng(mix_seed(spec.seed ^ 0x7468657461ull, index));
  std::vector<double> e(static_cast<std::size_t>(spec.d * spec.d), 0.0);
  for (int k = 0; k < spec.d; ++k) {
    for (int j = 0; j < k; ++j) {
      const double t = rng.uniform();
      e[k * spec.d + j] = t;
      e[j * spec.d + k] = -t;
    }
  }
  return ThetaMatrix(spec.d, std::move(e));
}

QElement random_element(const CorpusSpec& spec, std::size_t index) {
  validate(spec);
  SampleRng rng(mix_seed(spec.seed, index));
  auto theta = std::make_shared<const ThetaMatrix>(sample_theta(spec, index));
  const int side = 2 * spec.max_degree + 1;
  std::size_t total = 1;
  for (int j = 0; j < spec.d; ++j) total *= static_cast<std::size_t>(side);
  auto coefficient = [&] {
    if (spec.coefficient_law == CoefficientLaw::kUnitCircle)
      return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    const double re = rng.normal(), im = rng.normal();
    return Complex(re, im) / std::sqrt(2.0);
  };
  auto point = [&](std::size_t i) {
    MultiIndex m(static_cast<std::size_t>(spec.d));
    for (int j = spec.d - 1; j >= 0; --j) {
      m[j] = static_cast<int>(i % static_cast<std::size_t>(side)) - spec.max_degree;
      i /= static_cast<std::size_t>(side);
    }
    return m;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < total; ++i) {
    MultiIndex m = point(i);
    const bool keep = rng.uniform() < spec.support_density;
    if (!keep || (spec.mean_zero && m.is_zero())) continue;
    terms.push_back({m, coefficient()});
  }
  if (terms.empty()) {
    // Guarantee a nonzero sample.
    MultiIndex m = point(static_cast<std::size_t>(rng.next() % total));
    if (m.is_zero()) m[0] = 1;
    terms.push_back({m, coefficient()});
  }
  return QElement(theta, std::move(terms));
}

std::vector<QElement> make_corpus(const CorpusSpec& spec) {
  validate(spec);
  std::vector<QElement> out;
  out.reserve(static_cast<std::size_t>(spec.sample_count));
  for (int i = 0; i < spec.sample_count; ++i) out.push_back(random_element(spec, static_cast<std::size_t>(i)));
  return out;
}

nlohmann::json corpus_to_json(const CorpusSpec& s) {
  return {{"d", s.d},
          {"max_degree", s.max_degree},
          {"support_density", s.support_density},
          {"coefficient_law", s.coefficient_law == CoefficientLaw::kUnitCircle ? "unit-circle" : "complex-gaussian"},
          {"theta_law", s.theta_law == ThetaLaw::kRandomSkew ? "random-skew" : "fixed"},
          {"theta", s.theta},
          {"seed", s.seed},
          {"sample_count", s.sample_count},
          {"mean_zero", s.mean_zero}};
}

CorpusSpec corpus_from_json(const nlohmann::json& j, CorpusSpec s) {
  try {
    if (!j.is_object()) throw InvalidInput("corpus spec must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const auto& v = it.value();
      if (key == "d") {
        s.d = v.get<int>();
      } else if (key == "max_degree") {
        s.max_degree = v.get<int>();
      } else if (key == "support_density") {
        s.support_density = v.get<double>();
      } else if (key == "coefficient_law") {
        const auto law = v.get<std::string>();
        if (law == "complex-gaussian") {
          s.coefficient_law = CoefficientLaw::kComplexGaussian;
        } else if (law == "unit-circle") {
          s.coefficient_law = CoefficientLaw::kUnitCircle;
        } else {
          throw InvalidInput("unknown coefficient_law '" + law + "'");
        }
      } else if (key == "theta_law") {
        const auto law = v.get<std::string>();
        if (law == "fixed") {
          s.theta_law = ThetaLaw::kFixed;
        } else if (law == "random-skew") {
          s.theta_law = ThetaLaw::kRandomSkew;
        } else {
          throw InvalidInput("unknown theta_law '" + law + "'");
        }
      } else if (key == "theta") {
        s.theta = v.get<double>();
      } else if (key == "seed") {
        s.seed = v.get<std::uint64_t>();
      } else if (key == "sample_count") {
        s.sample_count = v.get<int>();
      } else if (key == "mean_zero") {
        s.mean_zero = v.get<bool>();
      } else {
        throw InvalidInput("unknown corpus key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("corpus spec: ") + e.what());
  }
  validate(s);
  return s;
}

}  // namespace qtorus
