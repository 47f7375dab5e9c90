// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krein {

enum class errc {
  non_square,
  singular,
  dimension_mismatch,
  not_a_graph,
  not_self_adjoint_condition,
  rank_deficient,
  numerically_singular,
  not_unitary,
  not_disjoint,
  on_branch_cut,
  outside_resolvent_set,
  point_at_center,
  coincident_points,
  coincident_spectral_params,
  singular_at_z,
  invalid_point,
  invalid_model,
  bad_range,
  config_parse,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::non_square: return "NonSquare";
    case errc::singular: return "Singular";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_a_graph: return "NotAGraph";
    case errc::not_self_adjoint_condition: return "NotSelfAdjointCondition";
    case errc::rank_deficient: return "RankDeficient";
    case errc::numerically_singular: return "NumericallySingular";
    case errc::not_unitary: return "NotUnitary";
    case errc::not_disjoint: return "NotDisjoint";
    case errc::on_branch_cut: return "OnBranchCut";
    case errc::outside_resolvent_set: return "OutsideResolventSet";
    case errc::point_at_center: return "PointAtCenter";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::coincident_spectral_params: return "CoincidentSpectralParams";
    case errc::singular_at_z: return "SingularAtZ";
    case errc::invalid_point: return "InvalidPoint";
    case errc::invalid_model: return "InvalidModel";
    case errc::bad_range: return "BadRange";
    case errc::config_parse: return "ConfigParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; `code()`
/// identifies the violated condition.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace krein
