#pragma once

#include <string>
#include <string_view>

#include "emptysimplex/bodies.hpp"
#include "emptysimplex/experiments.hpp"

namespace emptysimplex {

/// Parses a JSON body description, e.g.
///   {"kind": "box", "lo": [0, 0], "hi": [1, 1]}
///   {"kind": "ball", "dim": 2, "radius": 1, "center": [0, 0]}
///   {"kind": "ellipsoid", "semi_axes": [2, 1]}
///   {"kind": "h_polytope", "normals": [[-1, 0], [0, -1], [1, 1]], "offsets": [0, 0, 1]}
///   {"kind": "unit_cube", "dim": 3}
/// Unknown keys raise ConfigError.
ConvexBody parse_body(std::string_view json_text);

/// Parses an experiment config. Keys are the ExperimentConfig field names;
/// unknown keys raise ConfigError. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace emptysimplex
