#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trenchfield/geom2d.hpp"

namespace trenchfield {

enum class TrapFamily {
  SetSymmetric,
  SetAntisymmetric,
  SimpleTrenchSymmetric,
  SimpleTrenchAntisymmetric,
  StackedTrenchSymmetric,
  StackedTrenchAntisymmetric,
  WaferSymmetric,
  WaferAntisymmetric,
};

inline constexpr TrapFamily all_families[] = {
    TrapFamily::SetSymmetric,          TrapFamily::SetAntisymmetric,
    TrapFamily::SimpleTrenchSymmetric, TrapFamily::SimpleTrenchAntisymmetric,
    TrapFamily::StackedTrenchSymmetric, TrapFamily::StackedTrenchAntisymmetric,
    TrapFamily::WaferSymmetric,        TrapFamily::WaferAntisymmetric,
};

std::string family_name(TrapFamily family);
TrapFamily family_from_name(const std::string& name);  // throws UnknownFamily
bool family_is_symmetric(TrapFamily family);
bool family_has_substrate(TrapFamily family);

// named lengths in micrometers, keys per family (greek letters spelled out)
using TrapParams = std::map<std::string, double>;

// required keys first, optional (defaulted) keys after
const std::vector<std::string>& family_required_keys(TrapFamily family);
const std::vector<std::string>& family_optional_keys(TrapFamily family);

// fills documented defaults (alpha=100, lambda=50, tau=1000, mu=150, xi=2j)
// and rejects unknown or non-positive entries
TrapParams complete_params(TrapFamily family, const TrapParams& params);

enum class ElectrodeRole { Rf, Dc, Ground };

std::string role_name(ElectrodeRole role);

struct ElectrodeSegment {
  std::vector<Vec2> polyline;  // um, >= 2 points
  ElectrodeRole role = ElectrodeRole::Ground;
  std::string electrode_id;
  double mesh_coarsen = 1.0;  // multiplies l_max (outer wall faces use 4)
};

struct CrossSection {
  std::vector<ElectrodeSegment> segments;
  double gap = 1.0;      // inter-electrode gap width, um
  double extent = 0.0;   // truncation half-width of nominally infinite planes
  std::vector<Rect> bodies;           // solid conductor bodies (walls, slabs)
  std::optional<double> substrate_y;  // top of substrate, if any

  BBox electrode_bbox() const;
  bool point_in_conductor(Vec2 p) const;
  // minimum distance from p to any electrode surface
  double distance_to_electrodes(Vec2 p) const;
};

struct GeometryOptions {
  double gap = 1.0;              // um
  double extent_factor = 30.0;   // extent = extent_factor * separation_nominal
  double separation_nominal = 75.0;  // um; sets extent and the wafer slot rule
  std::optional<double> wafer_slot_halfwidth;  // override for the derived slot
};

CrossSection build_cross_section(TrapFamily family, const TrapParams& params,
                                 const GeometryOptions& options = {});

// mirror about x = 0: geometry equal and roles preserved (symmetric families)
// or RF and DC exchanged (anti-symmetric families); used by tests and checks
CrossSection mirrored(const CrossSection& cs);

}  // namespace trenchfield
