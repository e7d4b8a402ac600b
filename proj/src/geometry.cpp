#include "trenchfield/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

struct FamilyInfo {
  const char* name;
  bool symmetric;
  bool substrate;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const FamilyInfo& info(TrapFamily family) {
  static const FamilyInfo table[] = {
      {"set_symmetric", true, true, {"a", "b"}, {}},
      {"set_antisymmetric", false, true, {"phi"}, {}},
      {"simple_trench_symmetric", true, true, {"c", "d", "beta"}, {"alpha"}},
      {"simple_trench_antisymmetric", false, true, {"e", "f"}, {"alpha"}},
      {"stacked_trench_symmetric", true, true, {"g", "h", "epsilon"}, {"mu", "alpha"}},
      {"stacked_trench_antisymmetric", false, true, {"i", "j", "xi"}, {"alpha"}},
      {"wafer_symmetric", true, false, {"k"}, {"lambda", "tau"}},
      {"wafer_antisymmetric", false, false, {"k"}, {"lambda", "tau"}},
  };
  return table[static_cast<int>(family)];
}

double get(const TrapParams& p, const std::string& key) { return p.at(key); }

}  // namespace

std::string family_name(TrapFamily family) { return info(family).name; }

TrapFamily family_from_name(const std::string& name) {
  std::string n;
  for (char ch : name) {
    if (ch == '-' || ch == ' ') ch = '_';
    n += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  for (TrapFamily f : all_families) {
    if (n == info(f).name) return f;
  }
  throw UnknownFamily("unknown trap family: " + name);
}

bool family_is_symmetric(TrapFamily family) { return info(family).symmetric; }
bool family_has_substrate(TrapFamily family) { return info(family).substrate; }

const std::vector<std::string>& family_required_keys(TrapFamily family) {
  return info(family).required;
}
const std::vector<std::string>& family_optional_keys(TrapFamily family) {
  return info(family).optional;
}

TrapParams complete_params(TrapFamily family, const TrapParams& params) {
  const FamilyInfo& fi = info(family);
  TrapParams out;
  for (const auto& [key, value] : params) {
    const bool known =
        std::find(fi.required.begin(), fi.required.end(), key) != fi.required.end() ||
        std::find(fi.optional.begin(), fi.optional.end(), key) != fi.optional.end();
    if (!known)
      throw UnknownParameter("parameter '" + key + "' does not belong to family " +
                             fi.name);
    if (!(value > 0.0))
      throw NonPositiveLength("parameter '" + key + "' must be a positive length, got " +
                              std::to_string(value));
    out[key] = value;
  }
  for (const auto& key : fi.required) {
    if (!out.count(key))
      throw MissingRequiredKey("family " + std::string(fi.name) +
                               " requires parameter '" + key + "'");
  }
  // documented defaults
  if (!out.count("alpha") &&
      (family == TrapFamily::SimpleTrenchSymmetric ||
       family == TrapFamily::SimpleTrenchAntisymmetric ||
       family == TrapFamily::StackedTrenchSymmetric ||
       family == TrapFamily::StackedTrenchAntisymmetric))
    out["alpha"] = 100.0;
  if (family == TrapFamily::StackedTrenchSymmetric && !out.count("mu"))
    out["mu"] = 150.0;
  if (family == TrapFamily::WaferSymmetric || family == TrapFamily::WaferAntisymmetric) {
    if (!out.count("lambda")) out["lambda"] = 50.0;
    if (!out.count("tau")) out["tau"] = 1000.0;
  }
  return out;
}

std::string role_name(ElectrodeRole role) {
  switch (role) {
    case ElectrodeRole::Rf: return "rf";
    case ElectrodeRole::Dc: return "dc";
    case ElectrodeRole::Ground: return "ground";
  }
  return "?";
}

BBox CrossSection::electrode_bbox() const {
  BBox box;
  for (const auto& seg : segments)
    for (const auto& p : seg.polyline) box.expand(p);
  return box;
}

bool CrossSection::point_in_conductor(Vec2 p) const {
  if (substrate_y && p.y < *substrate_y) return true;
  for (const auto& body : bodies)
    if (body.contains(p)) return true;
  return false;
}

double CrossSection::distance_to_electrodes(Vec2 p) const {
  double d = 1e300;
  for (const auto& seg : segments)
    for (std::size_t i = 0; i + 1 < seg.polyline.size(); ++i)
      d = std::min(d, point_segment_distance(p, seg.polyline[i], seg.polyline[i + 1]));
  return d;
}

namespace {

class Builder {
 public:
  Builder(double gap, double extent)
      : hg_(gap / 2), qg_(gap / std::sqrt(2.0)), extent_(extent) {
    cs_.gap = gap;
    cs_.extent = extent;
  }

  // horizontal strip on the substrate plane
  void strip(double x0, double x1, ElectrodeRole role, const std::string& id) {
    add({{x0, 0.0}, {x1, 0.0}}, role, id);
  }

  void add(std::vector<Vec2> polyline, ElectrodeRole role, const std::string& id,
           double coarsen = 1.0) {
    if (polyline.size() < 2) throw DegeneratePolyline("polyline needs >= 2 points: " + id);
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
      if ((polyline[i + 1] - polyline[i]).norm() < 1e-9)
        throw DegeneratePolyline("repeated consecutive points in " + id);
    cs_.segments.push_back({std::move(polyline), role, id, coarsen});
  }

  // wall of thickness alpha standing on the substrate; faces meshed inner,
  // top, outer; the outer plane beyond continues as the same electrode
  void simple_wall(double x_inner, double height, double alpha, ElectrodeRole role,
                   const std::string& id) {
    const double s = x_inner > 0 ? 1.0 : -1.0;
    const double xo = x_inner + s * alpha;
    add({{x_inner, qg_}, {x_inner, height}, {xo, height}}, role, id);
    add({{xo, height}, {xo, 0.0}}, role, id, 4.0);
    add({{xo + s * hg_, 0.0}, {s * extent_, 0.0}}, role, id, 4.0);
    cs_.bodies.push_back({std::min(x_inner, xo), std::max(x_inner, xo), 0.0, height});
  }

  void body(double x0, double x1, double y0, double y1) {
    cs_.bodies.push_back({std::min(x0, x1), std::max(x0, x1), std::min(y0, y1),
                          std::max(y0, y1)});
  }

  // closed rectangular slab, all four faces one electrode
  void slab(double x0, double x1, double y0, double y1, ElectrodeRole role,
            const std::string& id) {
    add({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}, role, id);
    body(x0, x1, y0, y1);
  }

  double hg() const { return hg_; }
  double qg() const { return qg_; }
  double extent() const { return extent_; }
  CrossSection take(std::optional<double> substrate) {
    cs_.substrate_y = substrate;
    return std::move(cs_);
  }

 private:
  double hg_, qg_, extent_;
  CrossSection cs_;
};

void check_ordered(std::initializer_list<double> xs, const char* what) {
  double prev = -1e300;
  for (double x : xs) {
    if (!(x > prev)) throw SelfIntersectingGeometry(what);
    prev = x;
  }
}

CrossSection build_set_symmetric(const TrapParams& p, const GeometryOptions& o) {
  const double a = get(p, "a"), b = get(p, "b");
  Builder bd(o.gap, o.extent_factor * o.separation_nominal);
  const double hg = bd.hg();
  check_ordered({b / 2 + hg, b / 2 + a - hg, b / 2 + a + hg, bd.extent()},
                "SET electrodes overlap or exceed the extent");
  bd.strip(-b / 2 + hg, b / 2 - hg, ElectrodeRole::Dc, "dc_center");
  bd.strip(b / 2 + hg, b / 2 + a - hg, ElectrodeRole::Rf, "rf_right");
  bd.strip(-(b / 2 + a - hg), -(b / 2 + hg), ElectrodeRole::Rf, "rf_left");
  bd.strip(b / 2 + a + hg, bd.extent(), ElectrodeRole::Ground, "ground_right");
  bd.strip(-bd.extent(), -(b / 2 + a + hg), ElectrodeRole::Ground, "ground_left");
  return bd.take(0.0);
}

CrossSection build_set_antisymmetric(const TrapParams& p, const GeometryOptions& o) {
  const double phi = get(p, "phi");
  Builder bd(o.gap, o.extent_factor * o.separation_nominal);
  const double hg = bd.hg();
  check_ordered({hg, phi - hg, phi + hg, bd.extent()}, "SET strips too narrow");
  bd.strip(-(phi - hg), -hg, ElectrodeRole::Rf, "rf_strip");
  bd.strip(hg, phi - hg, ElectrodeRole::Dc, "dc_strip");
  bd.strip(phi + hg, bd.extent(), ElectrodeRole::Rf, "rf_plane");
  bd.strip(-bd.extent(), -(phi + hg), ElectrodeRole::Dc, "dc_plane");
  return bd.take(0.0);
}

CrossSection build_simple_trench(const TrapParams& p, const GeometryOptions& o,
                                 bool symmetric) {
  Builder bd(o.gap, o.extent_factor * o.separation_nominal);
  const double hg = bd.hg();
  if (symmetric) {
    // c = RF strip width, d = center DC width; grounded walls replace the
    // outermost plane electrodes directly beyond the RF strips
    const double c = get(p, "c"), d = get(p, "d");
    const double beta = get(p, "beta"), alpha = get(p, "alpha");
    const double w = d / 2 + c;
    check_ordered({d / 2 + hg, d / 2 + c - hg, w + alpha + hg, bd.extent()},
                  "simple trench electrodes overlap");
    bd.strip(-d / 2 + hg, d / 2 - hg, ElectrodeRole::Dc, "dc_center");
    bd.strip(d / 2 + hg, w - bd.qg(), ElectrodeRole::Rf, "rf_right");
    bd.strip(-(w - bd.qg()), -(d / 2 + hg), ElectrodeRole::Rf, "rf_left");
    bd.simple_wall(w, beta, alpha, ElectrodeRole::Ground, "wall_right");
    bd.simple_wall(-w, beta, alpha, ElectrodeRole::Ground, "wall_left");
  } else {
    // e = plane electrode width, f = wall height; the right wall continues
    // the RF half plane, the left wall the DC one
    const double e = get(p, "e"), f = get(p, "f"), alpha = get(p, "alpha");
    check_ordered({hg, e - hg, e + alpha + hg, bd.extent()},
                  "simple trench electrodes overlap");
    bd.strip(-(e - bd.qg()), -hg, ElectrodeRole::Rf, "rf_strip");
    bd.strip(hg, e - bd.qg(), ElectrodeRole::Dc, "dc_strip");
    bd.simple_wall(e, f, alpha, ElectrodeRole::Rf, "rf_wall");
    bd.simple_wall(-e, f, alpha, ElectrodeRole::Dc, "dc_wall");
  }
  return bd.take(0.0);
}

CrossSection build_stacked_symmetric(const TrapParams& p, const GeometryOptions& o) {
  const double g = get(p, "g"), h = get(p, "h"), eps = get(p, "epsilon");
  const double mu = get(p, "mu"), alpha = get(p, "alpha");
  if (h + g >= eps)
    throw SelfIntersectingGeometry("stacked trench: RF band h+g must stay below epsilon");
  Builder bd(o.gap, o.extent_factor * o.separation_nominal);
  const double hg = bd.hg();
  const double w = mu / 2;
  const double qg = bd.qg();
  bd.strip(-w + qg, w - qg, ElectrodeRole::Ground, "ground_floor");
  for (int side : {+1, -1}) {
    const std::string sfx = side > 0 ? "_right" : "_left";
    const double xi = side * w;
    const double xo = side * (w + alpha);
    bd.add({{xi, qg}, {xi, h - hg}}, ElectrodeRole::Dc, "dc_lower" + sfx);
    bd.add({{xi, h + hg}, {xi, h + g - hg}}, ElectrodeRole::Rf, "rf" + sfx);
    bd.add({{xi, h + g + hg}, {xi, eps}, {xo, eps}}, ElectrodeRole::Dc, "dc_upper" + sfx);
    bd.add({{xo, eps}, {xo, qg}}, ElectrodeRole::Dc, "dc_upper" + sfx, 4.0);
    bd.add({{xo + side * qg, 0.0}, {side * bd.extent(), 0.0}}, ElectrodeRole::Ground,
           "ground" + sfx, 4.0);
    bd.body(xi, xo, 0.0, eps);
  }
  return bd.take(0.0);
}

CrossSection build_stacked_antisymmetric(const TrapParams& p, const GeometryOptions& o) {
  const double i = get(p, "i"), j = get(p, "j"), xi_h = get(p, "xi");
  const double alpha = get(p, "alpha");
  if (j >= xi_h)
    throw SelfIntersectingGeometry("stacked trench: bottom electrode j must stay below xi");
  Builder bd(o.gap, o.extent_factor * o.separation_nominal);
  const double hg = bd.hg();
  const double w = i / 2;
  for (int side : {+1, -1}) {
    const std::string sfx = side > 0 ? "_right" : "_left";
    // diagonal assignment: RF occupies floor+lower wall on the left and the
    // upper wall on the right
    const ElectrodeRole lower = side > 0 ? ElectrodeRole::Dc : ElectrodeRole::Rf;
    const ElectrodeRole upper = side > 0 ? ElectrodeRole::Rf : ElectrodeRole::Dc;
    const std::string lower_id = (lower == ElectrodeRole::Rf ? "rf_lower" : "dc_lower") + sfx;
    const std::string upper_id = (upper == ElectrodeRole::Rf ? "rf_upper" : "dc_upper") + sfx;
    const double xin = side * w;
    const double xo = side * (w + alpha);
    bd.add({{side * hg, 0.0}, {xin, 0.0}, {xin, j - hg}}, lower, lower_id);
    bd.add({{xin, j + hg}, {xin, xi_h}, {xo, xi_h}}, upper, upper_id);
    bd.add({{xo, xi_h}, {xo, bd.qg()}}, upper, upper_id, 4.0);
    bd.add({{xo + side * bd.qg(), 0.0}, {side * bd.extent(), 0.0}}, ElectrodeRole::Ground,
           "ground" + sfx, 4.0);
    bd.body(xin, xo, 0.0, xi_h);
  }
  return bd.take(0.0);
}

CrossSection build_wafer(const TrapParams& p, const GeometryOptions& o, bool symmetric) {
  const double k = get(p, "k"), lam = get(p, "lambda"), tau = get(p, "tau");
  const double sep = o.separation_nominal;
  Builder bd(o.gap, o.extent_factor * sep);
  if (symmetric) {
    // three-layer stack: RF on both slabs of the middle layer, grounded
    // outer layers spaced k; slot walls sit at the nominal separation
    const double ws = o.wafer_slot_halfwidth.value_or(sep);
    bd.slab(-ws - tau, -ws, -lam / 2, lam / 2, ElectrodeRole::Rf, "rf_mid_left");
    bd.slab(ws, ws + tau, -lam / 2, lam / 2, ElectrodeRole::Rf, "rf_mid_right");
    for (int side : {+1, -1}) {
      const std::string sfx = side > 0 ? "top" : "bottom";
      const double y0 = side > 0 ? lam / 2 + k : -(lam / 2 + k + lam);
      const double y1 = y0 + lam;
      bd.slab(-ws - tau, -ws, y0, y1, ElectrodeRole::Dc, "dc_" + sfx + "_left");
      bd.slab(ws, ws + tau, y0, y1, ElectrodeRole::Dc, "dc_" + sfx + "_right");
    }
  } else {
    // two layers with facing surfaces at +-k and diagonal RF/DC roles; the
    // slot width keeps the slab inner corners at the nominal separation
    if (k >= sep)
      throw SelfIntersectingGeometry(
          "wafer spacing k must stay below the nominal separation");
    const double ws =
        o.wafer_slot_halfwidth.value_or(std::sqrt(sep * sep - k * k));
    bd.slab(-ws - tau, -ws, k, k + lam, ElectrodeRole::Rf, "rf_top_left");
    bd.slab(ws, ws + tau, k, k + lam, ElectrodeRole::Dc, "dc_top_right");
    bd.slab(-ws - tau, -ws, -k - lam, -k, ElectrodeRole::Dc, "dc_bottom_left");
    bd.slab(ws, ws + tau, -k - lam, -k, ElectrodeRole::Rf, "rf_bottom_right");
  }
  return bd.take(std::nullopt);
}

}  // namespace

CrossSection build_cross_section(TrapFamily family, const TrapParams& params,
                                 const GeometryOptions& options) {
  const TrapParams p = complete_params(family, params);
  switch (family) {
    case TrapFamily::SetSymmetric: return build_set_symmetric(p, options);
    case TrapFamily::SetAntisymmetric: return build_set_antisymmetric(p, options);
    case TrapFamily::SimpleTrenchSymmetric: return build_simple_trench(p, options, true);
    case TrapFamily::SimpleTrenchAntisymmetric:
      return build_simple_trench(p, options, false);
    case TrapFamily::StackedTrenchSymmetric: return build_stacked_symmetric(p, options);
    case TrapFamily::StackedTrenchAntisymmetric:
      return build_stacked_antisymmetric(p, options);
    case TrapFamily::WaferSymmetric: return build_wafer(p, options, true);
    case TrapFamily::WaferAntisymmetric: return build_wafer(p, options, false);
  }
  throw UnknownFamily("unhandled family enum value");
}

CrossSection mirrored(const CrossSection& cs) {
  CrossSection out = cs;
  for (auto& seg : out.segments)
    for (auto& p : seg.polyline) p.x = -p.x;
  for (auto& body : out.bodies) {
    const double x0 = -body.x1, x1 = -body.x0;
    body.x0 = x0;
    body.x1 = x1;
  }
  return out;
}

}  // namespace trenchfield
