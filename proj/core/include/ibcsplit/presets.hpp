#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ibcsplit/fields.hpp"
#include "ibcsplit/grid.hpp"
#include "ibcsplit/reaction.hpp"

namespace ibc {

/// A named benchmark problem: closed-form initial condition with analytic
/// face traces, face coefficients, and the default study parameters.
struct Preset {
  std::string id;
  std::string summary;
  int dimension = 1;
  FaceBC left, right, bottom, top;  // data filled from the trace by default
  std::variant<ScalarField1D, ScalarField2D> initial;
  ReactionTerm reaction = ReactionTerm::square();
  double t_end = 0.5;
  std::vector<double> default_taus;
  Eigen::Index default_n_interior_x = 499;
  Eigen::Index default_n_interior_y = 0;
  /// Boundary values conventionally quoted for this benchmark family; the
  /// default data mode derives b from the initial trace instead (the quoted
  /// values are not always trace-compatible). Usable as explicit overrides.
  std::optional<std::array<double, 2>> quoted_b;
};

const std::vector<Preset>& preset_registry();
const Preset* find_preset(std::string_view id);

}  // namespace ibc
