#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qtorus/element.hpp"

namespace qtorus {

using Json = nlohmann::json;

// Element document: {"d": 2, "theta": [[0, -t], [t, 0]],
//                    "coeffs": [{"m": [1, 0], "re": 1.0, "im": 0.0}, ...]}
// Doubles are written in shortest round-trip form, so reading back is lossless.
Json theta_to_json(const ThetaMatrix& theta);
ThetaMatrix theta_from_json(const Json& j);
Json element_to_json(const QElement& x);
QElement element_from_json(const Json& j);

QElement read_element_file(const std::filesystem::path& path);
void write_element_file(const std::filesystem::path& path, const QElement& x);

// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qtorus
