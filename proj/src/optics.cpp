#include "trenchfield/optics.hpp"

#include <cmath>

#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

ApertureResult numerical_aperture(const CrossSection& cs, Vec2 ion,
                                  ViewDirection direction) {
  if (cs.point_in_conductor(ion))
    throw IonInsideConductor("ion position lies inside conductor metal");

  const BBox box = cs.electrode_bbox();
  const double up = direction == ViewDirection::Up ? 1.0 : -1.0;

  // detector plane: infinity above, the substrate top surface below
  Vec2 axis_end;
  if (direction == ViewDirection::Up) {
    axis_end = {ion.x, box.hi.y + 10.0 * std::max(100.0, box.height())};
  } else if (cs.substrate_y) {
    axis_end = {ion.x, *cs.substrate_y};
  } else {
    axis_end = {ion.x, box.lo.y - 10.0 * std::max(100.0, box.height())};
  }

  // a blocked vertical axis closes the cone entirely
  for (const auto& seg : cs.segments)
    for (std::size_t i = 0; i + 1 < seg.polyline.size(); ++i)
      if (segments_intersect(ion, axis_end, seg.polyline[i], seg.polyline[i + 1]))
        return {0.0, seg.electrode_id};

  double half_angle = constants::pi / 2;
  std::string limiting = "unobstructed";
  for (const auto& seg : cs.segments)
    for (const auto& p : seg.polyline) {
      const double along = up * (p.y - ion.y);
      if (along <= 0.0) continue;  // at or below the horizon: no clip
      const double angle = std::atan2(std::abs(p.x - ion.x), along);
      if (angle < half_angle) {
        half_angle = angle;
        limiting = seg.electrode_id;
      }
    }
  return {std::sin(half_angle), limiting};
}

}  // namespace trenchfield
