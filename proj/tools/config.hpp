// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "krein/boundary.hpp"
#include "krein/models.hpp"

namespace krein::cli {

enum class ModelKind { star, point3d };

/// Parsed model/boundary configuration file.
///
///   {
///     "model": "star" | "point3d",
///     "n": 2,
///     "centers": [[x, y, z], ...],          // point3d only, length n
///     "A": [[[re, im], ...], ...],          // n x n, row-major
///     "B": [[[re, im], ...], ...]
///   }
struct ModelConfig {
  ModelKind model = ModelKind::star;
  Eigen::Index n = 0;
  std::vector<Point3> centers;
  ComplexMatrix a;
  ComplexMatrix b;
};

using AnyModel = std::variant<StarGraphModel, PointInteraction3DModel>;

/// Throws `errc::config_parse` on any structural problem.
ModelConfig parse_config(const nlohmann::json& doc);
ModelConfig load_config(const std::string& path);

AnyModel make_model(const ModelConfig& cfg);

/// Validated pair, or an unchecked one when `bypass_validation` is set.
BoundaryPair make_pair(const ModelConfig& cfg, bool bypass_validation);

std::string_view model_name(ModelKind kind);

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-2.5e-1-3i" (whitespace ignored).
complex parse_complex(std::string_view text);

nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const ComplexVector& v);

}  // namespace krein::cli
