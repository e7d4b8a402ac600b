#include "trenchfield/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

// breakpoints graded geometrically from both ends toward the middle;
// symmetric, no sliver panels
std::vector<double> graded_cuts(double length, double l_min, double l_max,
                                double fraction) {
  std::vector<double> left{0.0};
  double t = 0.0;
  while (true) {
    const double h = std::max(l_min, std::min(l_max, fraction * std::max(t, l_min)));
    t += h;
    if (t >= 0.5 * length - 0.25 * l_min) break;
    left.push_back(t);
  }
  std::vector<double> cuts = left;
  for (auto it = left.rbegin(); it != left.rend(); ++it) cuts.push_back(length - *it);
  return cuts;
}

}  // namespace

std::uint32_t PanelMesh::electrode_index(const std::string& id) const {
  for (std::size_t i = 0; i < electrode_ids.size(); ++i)
    if (electrode_ids[i] == id) return static_cast<std::uint32_t>(i);
  throw UnknownParameter("no electrode with id '" + id + "'");
}

BBox PanelMesh::bbox() const {
  BBox box;
  for (const auto& panel : panels) {
    box.expand(panel.a);
    box.expand(panel.b);
  }
  return box;
}

bool PanelMesh::point_in_conductor(Vec2 p) const {
  if (substrate_y && p.y < *substrate_y) return true;
  for (const auto& body : bodies)
    if (body.contains(p)) return true;
  return false;
}

double PanelMesh::distance_to_panels(Vec2 p) const {
  double d = 1e300;
  for (const auto& panel : panels)
    d = std::min(d, point_segment_distance(p, panel.a, panel.b));
  return d;
}

std::uint64_t PanelMesh::content_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& panel : panels) {
    mix(&panel.a, sizeof(panel.a));
    mix(&panel.b, sizeof(panel.b));
    mix(&panel.electrode, sizeof(panel.electrode));
  }
  for (const auto& id : electrode_ids) mix(id.data(), id.size());
  return h;
}

PanelMesh mesh_panels(const CrossSection& cs, const MeshPolicy& policy) {
  PanelMesh mesh;
  mesh.bodies = cs.bodies;
  mesh.substrate_y = cs.substrate_y;
  mesh.gap = cs.gap;

  for (const auto& seg : cs.segments) {
    if (seg.polyline.size() < 2)
      throw DegeneratePolyline("electrode " + seg.electrode_id);

    std::uint32_t index;
    const auto found =
        std::find(mesh.electrode_ids.begin(), mesh.electrode_ids.end(), seg.electrode_id);
    if (found == mesh.electrode_ids.end()) {
      index = static_cast<std::uint32_t>(mesh.electrode_ids.size());
      mesh.electrode_ids.push_back(seg.electrode_id);
      mesh.electrode_roles.push_back(seg.role);
    } else {
      index = static_cast<std::uint32_t>(found - mesh.electrode_ids.begin());
      if (mesh.electrode_roles[index] != seg.role)
        throw SelfIntersectingGeometry("electrode " + seg.electrode_id +
                                       " appears with two roles");
    }

    const double l_max = policy.l_max * seg.mesh_coarsen;
    for (std::size_t i = 0; i + 1 < seg.polyline.size(); ++i) {
      const Vec2 a = seg.polyline[i];
      const Vec2 b = seg.polyline[i + 1];
      const double length = (b - a).norm();
      if (length < 1e-9)
        throw DegeneratePolyline("zero-length edge on electrode " + seg.electrode_id);
      const auto cuts = graded_cuts(length, policy.l_min, l_max, policy.grading_fraction);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const Vec2 pa = a + (b - a) * (cuts[c] / length);
        const Vec2 pb = a + (b - a) * (cuts[c + 1] / length);
        mesh.panels.push_back({pa, pb, index});
      }
    }
  }

  if (mesh.panels.size() > policy.max_panels)
    throw MeshTooLarge("mesh has " + std::to_string(mesh.panels.size()) +
                       " panels, cap is " + std::to_string(policy.max_panels));
  return mesh;
}

}  // namespace trenchfield
