#pragma once

#include <nlohmann/json.hpp>

#include "rispaces/groups.hpp"
#include "rispaces/linear_map.hpp"
#include "rispaces/norms.hpp"
#include "rispaces/phi.hpp"
#include "rispaces/step_function.hpp"

namespace rispaces::io {

using nlohmann::json;

/// [["l", "r", value], ...] with exact rational breakpoints "num/den".
json to_json(const StepFunction& f);
/// Breakpoints may be rational strings, decimal strings or numbers.
StepFunction step_function_from_json(const json& j);

/// [["l", "r", slope, image_left], ...]. A loaded piece without image_left
/// is placed right after the previous piece's image.
json to_json(const PiecewiseLinearMap& sigma);
PiecewiseLinearMap map_from_json(const json& j);

/// {"h": step function, "sigma": map}
json to_json(const WeightedCompositionOp& op);
WeightedCompositionOp operator_from_json(const json& j);

/// {"family": "power" | "logperiodic" | "scaled" | "piecewise" | "expr" |
/// "tilde" | "inverse" | "weight_to_F", ...}
json to_json(const phi::OrliczFunction& f);
/// Structural parse; no axiom checks.
phi::OrliczFunction function_from_json(const json& j);
/// Parse and check with phi::validate; InvalidArgument lists the violations.
phi::OrliczFunction orlicz_from_json(const json& j);
phi::PhiFunction phi_function_from_json(const json& j);

/// {"family": "constant" | "affine" | "step", ...}
json to_json(const norms::LorentzWeight& w);
norms::LorentzWeight weight_from_json(const json& j);

/// {"kind": "orlicz" | "lorentz" | "orlicz_lorentz" | "ms", ...}; loading
/// validates the space.
json to_json(const norms::SpaceDescriptor& x);
norms::SpaceDescriptor space_from_json(const json& j);

/// {"kind": "NS" | "scale_invariant" | "discrete" | "U", ...}
json to_json(const groups::GroupDescriptor& g);
groups::GroupDescriptor group_from_json(const json& j);

}  // namespace rispaces::io
