#pragma once

#include <string>

#include "diracgap/geometry.hpp"

namespace diracgap {

/// Parses {"type": "disc", "R": 1}, {"type": "ellipse", "a": 1.5, "b": 0.75}
/// or {"type": "fourier", "r0": 1, "harmonics": [{"n": 3, "a": 0.2, "b": 0}]}.
BoundaryCurve parse_domain(const std::string& json_text);
BoundaryCurve load_domain(const std::string& path);

std::string domain_to_json(const BoundaryCurve& curve);

}  // namespace diracgap
