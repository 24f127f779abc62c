#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qtorus/element.hpp"
#include "qtorus/spaces.hpp"

namespace qtorus {

// Exponent from a number or one of "inf", "infinity", "Infinity".
double parse_exponent(const nlohmann::json& v);
double parse_exponent(const std::string& s);
// Numbers stay numbers; infinity becomes "inf".
nlohmann::json exponent_to_json(double p);

// Evaluates a norm described by a request such as
//   {"space": "besov", "method": "heat", "alpha": 0.5, "p": 2, "q": 2, "k": 1}.
// Spaces: lp, sobolev, potential (kind bessel|riesz), besov (method blocks|poisson|heat|
// circular-poisson|circular-heat|diff), triebel (method blocks|poisson|heat, flavor
// column|row|mixture). Optional "truncation" fixes the matrix level for p != 2,
// "profile" selects the Littlewood-Paley profile.
NormResult evaluate_norm(const QElement& x, const nlohmann::json& request);

// The request with defaults filled in; throws InvalidInput on unknown keys or bad values.
nlohmann::json resolve_norm_request(const nlohmann::json& request);

}  // namespace qtorus
