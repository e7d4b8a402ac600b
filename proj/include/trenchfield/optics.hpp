#pragma once

#include <string>

#include "trenchfield/geometry.hpp"

namespace trenchfield {

enum class ViewDirection { Up, Down };

struct ApertureResult {
  double na = 1.0;  // sin of the half-angle of the clear cone about vertical
  std::string limiting_edge = "unobstructed";  // electrode id of the clipping corner
};

// Largest circular cone about the vertical axis whose rays reach the detector
// plane (infinity above; the substrate top surface below) without striking
// electrode metal. Clips on electrode corner points; a blocked axis gives 0.
ApertureResult numerical_aperture(const CrossSection& cs, Vec2 ion,
                                  ViewDirection direction);

}  // namespace trenchfield
