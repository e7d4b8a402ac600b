#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "trenchfield/errors.hpp"
#include "trenchfield/geometry.hpp"
#include "trenchfield/mesh.hpp"

using namespace trenchfield;

namespace {

// reflect a segment set about x = 0 and match against another set
bool segments_match_mirrored(const CrossSection& cs, ElectrodeRole role_a,
                             ElectrodeRole role_b, double tol) {
  std::vector<std::pair<Vec2, Vec2>> left, right;
  for (const auto& seg : cs.segments) {
    for (std::size_t i = 0; i + 1 < seg.polyline.size(); ++i) {
      if (seg.role == role_a)
        left.push_back({seg.polyline[i], seg.polyline[i + 1]});
      if (seg.role == role_b) {
        const Vec2 a{-seg.polyline[i].x, seg.polyline[i].y};
        const Vec2 b{-seg.polyline[i + 1].x, seg.polyline[i + 1].y};
        right.push_back({a, b});
      }
    }
  }
  if (left.size() != right.size()) return false;
  for (const auto& [a, b] : left) {
    bool found = false;
    for (const auto& [c, d] : right) {
      const bool fwd = (a - c).norm() < tol && (b - d).norm() < tol;
      const bool rev = (a - d).norm() < tol && (b - c).norm() < tol;
      if (fwd || rev) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("family names round trip") {
  for (TrapFamily f : all_families) CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS_AS(family_from_name("hexagonal"), UnknownFamily);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(complete_params(TrapFamily::SetSymmetric, {{"a", 100.0}}),
                  MissingRequiredKey);
  CHECK_THROWS_AS(
      complete_params(TrapFamily::SetSymmetric, {{"a", 100.0}, {"b", 50.0}, {"q", 1.0}}),
      UnknownParameter);
  CHECK_THROWS_AS(
      complete_params(TrapFamily::SetSymmetric, {{"a", -5.0}, {"b", 50.0}}),
      NonPositiveLength);

  const TrapParams wafer = complete_params(TrapFamily::WaferAntisymmetric, {{"k", 53.0}});
  CHECK(wafer.at("lambda") == 50.0);
  CHECK(wafer.at("tau") == 1000.0);
  const TrapParams trench = complete_params(
      TrapFamily::SimpleTrenchSymmetric, {{"c", 210.0}, {"d", 77.3}, {"beta", 600.0}});
  CHECK(trench.at("alpha") == 100.0);
}

TEST_CASE("set symmetric: five-wire strip layout, mirror symmetric") {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetSymmetric, {{"a", 161.2}, {"b", 59.0}});
  std::set<std::string> ids;
  for (const auto& seg : cs.segments) ids.insert(seg.electrode_id);
  CHECK(ids.size() == 5);  // center, two RF, two grounds
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Rf, ElectrodeRole::Rf, 1e-9));
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Dc, ElectrodeRole::Dc, 1e-9));
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Ground, ElectrodeRole::Ground, 1e-9));
  CHECK(cs.substrate_y == 0.0);
}

TEST_CASE("wafer symmetric: slab stack mirrors top to bottom") {
  const CrossSection cs = build_cross_section(TrapFamily::WaferSymmetric, {{"k", 50.0}});
  CHECK(cs.bodies.size() == 6);
  // every body has its vertical mirror image
  for (const auto& body : cs.bodies) {
    bool found = false;
    for (const auto& other : cs.bodies)
      if (std::abs(other.y0 + body.y1) < 1e-12 && std::abs(other.y1 + body.y0) < 1e-12 &&
          std::abs(other.x0 - body.x0) < 1e-12)
        found = true;
    CHECK(found);
  }
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Rf, ElectrodeRole::Rf, 1e-9));
}

TEST_CASE("simple trench symmetric: walls rise to beta, mirror halves agree") {
  const CrossSection cs = build_cross_section(
      TrapFamily::SimpleTrenchSymmetric,
      {{"c", 210.0}, {"d", 77.3}, {"beta", 600.0}, {"alpha", 100.0}});
  double top = 0.0;
  for (const auto& seg : cs.segments)
    for (const auto& p : seg.polyline) top = std::max(top, p.y);
  CHECK(top == doctest::Approx(600.0));
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Rf, ElectrodeRole::Rf, 1e-9));
  CHECK(segments_match_mirrored(cs, ElectrodeRole::Ground, ElectrodeRole::Ground, 1e-9));
}

TEST_CASE("anti-symmetric families swap RF and DC under mirroring") {
  for (auto family : {TrapFamily::SetAntisymmetric, TrapFamily::SimpleTrenchAntisymmetric,
                      TrapFamily::StackedTrenchAntisymmetric,
                      TrapFamily::WaferAntisymmetric}) {
    TrapParams params;
    switch (family) {
      case TrapFamily::SetAntisymmetric: params = {{"phi", 75.0}}; break;
      case TrapFamily::SimpleTrenchAntisymmetric:
        params = {{"e", 135.2}, {"f", 525.0}};
        break;
      case TrapFamily::StackedTrenchAntisymmetric:
        params = {{"i", 150.0}, {"j", 160.0}, {"xi", 280.0}};
        break;
      default: params = {{"k", 53.0}};
    }
    const CrossSection cs = build_cross_section(family, params);
    CAPTURE(family_name(family));
    CHECK(segments_match_mirrored(cs, ElectrodeRole::Rf, ElectrodeRole::Dc, 1e-9));
    CHECK(segments_match_mirrored(cs, ElectrodeRole::Dc, ElectrodeRole::Rf, 1e-9));
  }
}

TEST_CASE("gap property: distinct electrodes separated by at least the gap") {
  for (TrapFamily family : all_families) {
    TrapParams params;
    switch (family) {
      case TrapFamily::SetSymmetric: params = {{"a", 161.2}, {"b", 59.0}}; break;
      case TrapFamily::SetAntisymmetric: params = {{"phi", 75.0}}; break;
      case TrapFamily::SimpleTrenchSymmetric:
        params = {{"c", 210.0}, {"d", 77.3}, {"beta", 600.0}};
        break;
      case TrapFamily::SimpleTrenchAntisymmetric:
        params = {{"e", 135.2}, {"f", 525.0}};
        break;
      case TrapFamily::StackedTrenchSymmetric:
        params = {{"g", 140.0}, {"h", 80.0}, {"epsilon", 300.0}};
        break;
      case TrapFamily::StackedTrenchAntisymmetric:
        params = {{"i", 150.0}, {"j", 160.0}, {"xi", 280.0}};
        break;
      default: params = {{"k", 50.0}};
    }
    const CrossSection cs = build_cross_section(family, params);
    const PanelMesh mesh = mesh_panels(cs);
    double closest = 1e300;
    for (std::size_t i = 0; i < mesh.size(); ++i)
      for (std::size_t j = i + 1; j < mesh.size(); ++j) {
        if (mesh.panels[i].electrode == mesh.panels[j].electrode) continue;
        const double d = std::min(
            {point_segment_distance(mesh.panels[i].a, mesh.panels[j].a, mesh.panels[j].b),
             point_segment_distance(mesh.panels[i].b, mesh.panels[j].a, mesh.panels[j].b),
             point_segment_distance(mesh.panels[j].a, mesh.panels[i].a, mesh.panels[i].b),
             point_segment_distance(mesh.panels[j].b, mesh.panels[i].a,
                                    mesh.panels[i].b)});
        closest = std::min(closest, d);
      }
    CAPTURE(family_name(family));
    CHECK(closest >= cs.gap - 1e-9);
  }
}

TEST_CASE("meshing: pigeonhole on l_max") {
  CrossSection cs;
  cs.segments.push_back({{{0.0, 0.0}, {100.0, 0.0}}, ElectrodeRole::Rf, "strip"});
  cs.extent = 100.0;
  MeshPolicy policy;
  policy.l_max = 10.0;
  const PanelMesh mesh = mesh_panels(cs, policy);
  CHECK(mesh.size() >= 10);
  for (const auto& panel : mesh.panels) CHECK(panel.length() <= 10.0 + 1e-12);
}

TEST_CASE("meshing: panel count roughly doubles when l_max halves") {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetSymmetric, {{"a", 161.2}, {"b", 59.0}});
  MeshPolicy coarse;
  MeshPolicy fine;
  fine.l_max = coarse.l_max / 2;
  const double n0 = static_cast<double>(mesh_panels(cs, coarse).size());
  const double n1 = static_cast<double>(mesh_panels(cs, fine).size());
  CHECK(n1 / n0 == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("meshing: no panel crosses an electrode boundary") {
  const CrossSection cs = build_cross_section(
      TrapFamily::StackedTrenchSymmetric, {{"g", 140.0}, {"h", 80.0}, {"epsilon", 300.0}});
  const PanelMesh mesh = mesh_panels(cs);
  // each panel lies on a source polyline of its own electrode
  for (const auto& panel : mesh.panels) {
    const std::string& id = mesh.electrode_ids[panel.electrode];
    double d = 1e300;
    for (const auto& seg : cs.segments) {
      if (seg.electrode_id != id) continue;
      for (std::size_t i = 0; i + 1 < seg.polyline.size(); ++i)
        d = std::min(d, point_segment_distance(panel.midpoint(), seg.polyline[i],
                                               seg.polyline[i + 1]));
    }
    CHECK(d < 1e-9);
  }
}

TEST_CASE("meshing is deterministic") {
  const CrossSection cs = build_cross_section(
      TrapFamily::SimpleTrenchAntisymmetric, {{"e", 135.2}, {"f", 525.0}});
  const PanelMesh m1 = mesh_panels(cs);
  const PanelMesh m2 = mesh_panels(cs);
  REQUIRE(m1.size() == m2.size());
  CHECK(m1.content_hash() == m2.content_hash());
  for (std::size_t i = 0; i < m1.size(); ++i) {
    CHECK(m1.panels[i].a.x == m2.panels[i].a.x);
    CHECK(m1.panels[i].b.y == m2.panels[i].b.y);
  }
}

TEST_CASE("degenerate polylines are rejected") {
  CrossSection cs;
  cs.segments.push_back({{{0.0, 0.0}}, ElectrodeRole::Rf, "dot"});
  CHECK_THROWS_AS(mesh_panels(cs), DegeneratePolyline);
}

TEST_CASE("mesh cap is enforced") {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetSymmetric, {{"a", 161.2}, {"b", 59.0}});
  MeshPolicy policy;
  policy.max_panels = 10;
  CHECK_THROWS_AS(mesh_panels(cs, policy), MeshTooLarge);
}

TEST_CASE("wafer spacing beyond the separation is rejected") {
  CHECK_THROWS_AS(build_cross_section(TrapFamily::WaferAntisymmetric, {{"k", 80.0}}),
                  SelfIntersectingGeometry);
}
