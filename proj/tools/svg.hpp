#pragma once

#include "ssys/config.hpp"
#include "ssys/dynamics.hpp"

#include <string>
#include <vector>

namespace ssys::tool {

/// Hand-emitted SVG phase portrait: trajectories as polylines over the
/// window, the u-nullcline in red and the v-nullcline in green, axes in
/// light gray. Deterministic output (shortest round-trip floats).
std::string portrait_svg(const ParameterScheme& scheme, const PortraitWindow& window,
                         const std::vector<Trajectory>& trajectories);

}  // namespace ssys::tool
