#include "qtorus/element_io.hpp"

#include <fstream>
#include <sstream>

#include "qtorus/error.hpp"

namespace qtorus {

Json theta_to_json(const ThetaMatrix& theta) {
  Json rows = Json::array();
  for (int k = 0; k < theta.dim(); ++k) {
    Json row = Json::array();
    for (int j = 0; j < theta.dim(); ++j) row.push_back(theta(k, j));
    rows.push_back(row);
  }
  return rows;
}

ThetaMatrix theta_from_json(const Json& j) {
  if (j.is_number()) return ThetaMatrix::uniform(2, j.get<double>());
  if (!j.is_array()) throw InvalidInput("theta must be a square array of numbers");
  try {
    return ThetaMatrix::from_rows(j.get<std::vector<std::vector<double>>>());
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("theta: ") + e.what());
  }
}

Json element_to_json(const QElement& x) {
  Json coeffs = Json::array();
  for (const Term& t : x.terms()) {
    coeffs.push_back({{"m", std::vector<int>(t.m.begin(), t.m.end())},
                      {"re", t.c.real()},
                      {"im", t.c.imag()}});
  }
  Json j = {{"d", x.dim()}, {"theta", theta_to_json(x.theta())}, {"coeffs", coeffs}};
  if (x.prune_tol() > 0.0) j["prune_tol"] = x.prune_tol();
  return j;
}

QElement element_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InvalidInput("element document must be an object");
    int d = j.at("d").get<int>();
    ThetaMatrix theta = j.contains("theta") ? theta_from_json(j.at("theta")) : ThetaMatrix::zero(d);
    if (theta.dim() != d) throw DimensionMismatch("theta dimension does not match d");
    double tol = j.value("prune_tol", 0.0);
    std::vector<Term> terms;
    for (const Json& c : j.at("coeffs")) {
      auto m = c.at("m").get<std::vector<int>>();
      if (static_cast<int>(m.size()) != d)
        throw DimensionMismatch("coefficient frequency has " + std::to_string(m.size()) +
                                " entries, expected " + std::to_string(d));
      terms.push_back({MultiIndex::from(m), Complex(c.value("re", 0.0), c.value("im", 0.0))});
    }
    return QElement(std::make_shared<const ThetaMatrix>(theta), std::move(terms), tol);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed element document: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QElement read_element_file(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return element_from_json(j);
}

void write_element_file(const std::filesystem::path& path, const QElement& x) {
  write_file_atomic(path, element_to_json(x).dump(2) + "\n");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw InvalidInput("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qtorus
