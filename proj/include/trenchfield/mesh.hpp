#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trenchfield/geometry.hpp"

namespace trenchfield {

struct MeshPolicy {
  double l_min = 0.25;            // um
  double l_max = 5.0;             // um
  double grading_fraction = 0.3;  // target length = fraction * distance to corner
  std::size_t max_panels = 20000;
};

struct Panel {
  Vec2 a, b;                   // endpoints, um
  std::uint32_t electrode = 0;  // index into PanelMesh::electrode_ids

  Vec2 midpoint() const { return (a + b) * 0.5; }
  double length() const { return (b - a).norm(); }
};

struct PanelMesh {
  std::vector<Panel> panels;
  std::vector<std::string> electrode_ids;     // index -> id
  std::vector<ElectrodeRole> electrode_roles;  // index -> role

  // carried from the cross-section for validity tests downstream
  std::vector<Rect> bodies;
  std::optional<double> substrate_y;
  double gap = 1.0;

  std::size_t size() const { return panels.size(); }
  std::uint32_t electrode_index(const std::string& id) const;  // throws UnknownParameter
  BBox bbox() const;
  bool point_in_conductor(Vec2 p) const;
  double distance_to_panels(Vec2 p) const;
  std::uint64_t content_hash() const;  // FNV-1a over panel data, stable
};

// graded subdivision: panels shrink toward polyline corners and gap corners,
// capped at l_max * segment.mesh_coarsen, never below l_min
PanelMesh mesh_panels(const CrossSection& cs, const MeshPolicy& policy = {});

}  // namespace trenchfield
