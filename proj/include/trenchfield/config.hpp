#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trenchfield/geometry.hpp"
#include "trenchfield/mesh.hpp"
#include "trenchfield/pseudopotential.hpp"

namespace trenchfield {

enum class SeparationMode { MinSeparation, IonHeight };

struct SeparationConstraint {
  double target_um = 75.0;
  SeparationMode mode = SeparationMode::MinSeparation;
  double tolerance_um = 0.1;
  bool enabled = true;
};

enum class StackedRegime { Walls, GroundPlane };

struct SweepSettings {
  std::string parameter;
  std::vector<double> values;  // ascending
};

// parsed [trap]/[mesh]/[drive]/[ion]/[sweep] document
struct RunConfig {
  TrapFamily family = TrapFamily::SetSymmetric;
  TrapParams params;
  MeshPolicy mesh;
  GeometryOptions geometry;
  DriveConfig drive;
  std::optional<double> fixed_rf_voltage;  // set -> skip calibration
  double target_secular_mhz = 4.0;
  IonProperties ion;
  SeparationConstraint separation;
  StackedRegime regime = StackedRegime::Walls;
  std::optional<SweepSettings> sweep;
};

// fail-closed: unknown sections or keys raise ParseError with the line number
RunConfig parse_geometry_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace trenchfield
