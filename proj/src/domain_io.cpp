#include "diracgap/domain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "diracgap/error.hpp"

namespace diracgap {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::config_error, std::string("domain file lacks field '") + key + "'");
  if (!j.at(key).is_number()) throw Error(Errc::config_error, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

BoundaryCurve parse_domain(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::config_error, std::string("domain file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw Error(Errc::config_error, "domain file needs a string field 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "disc") return BoundaryCurve::disc(number(j, "R"));
  if (type == "ellipse") return BoundaryCurve::ellipse(number(j, "a"), number(j, "b"));
  if (type == "fourier") {
    std::vector<Harmonic> harmonics;
    if (j.contains("harmonics")) {
      if (!j.at("harmonics").is_array()) throw Error(Errc::config_error, "'harmonics' must be an array");
      for (const auto& h : j.at("harmonics")) {
        if (!h.contains("n") || !h.at("n").is_number_integer())
          throw Error(Errc::config_error, "each harmonic needs an integer 'n'");
        Harmonic term;
        term.n = h.at("n").get<int>();
        term.a = h.contains("a") ? number(h, "a") : 0.0;
        term.b = h.contains("b") ? number(h, "b") : 0.0;
        harmonics.push_back(term);
      }
    }
    return BoundaryCurve::fourier(number(j, "r0"), std::move(harmonics));
  }
  throw Error(Errc::config_error, "unknown domain type '" + type + "' (expected disc, ellipse or fourier)");
}

BoundaryCurve load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open domain file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_domain(buffer.str());
}

std::string domain_to_json(const BoundaryCurve& curve) {
  json j;
  switch (curve.kind()) {
    case CurveKind::disc:
      j = {{"type", "disc"}, {"R", curve.radius()}};
      break;
    case CurveKind::ellipse:
      j = {{"type", "ellipse"}, {"a", curve.semi_axis_a()}, {"b", curve.semi_axis_b()}};
      break;
    case CurveKind::fourier: {
      json harmonics = json::array();
      for (const auto& h : curve.harmonics()) harmonics.push_back({{"n", h.n}, {"a", h.a}, {"b", h.b}});
      j = {{"type", "fourier"}, {"r0", curve.radius()}, {"harmonics", harmonics}};
      break;
    }
  }
  return j.dump();
}

}  // namespace diracgap
