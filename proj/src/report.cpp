#include "trenchfield/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "trenchfield/cache.hpp"
#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"
#include "trenchfield/sweep.hpp"

namespace trenchfield {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

// pseudopotential surface with a cheap geometric validity margin, suitable
// for the dense minimum/saddle scans
class ScanPseudoField : public ScalarField {
 public:
  ScanPseudoField(const PseudoField& psi, const PanelMesh& mesh, double margin)
      : psi_(&psi), mesh_(&mesh), margin_(margin) {}

  double value(Vec2 p) const override { return psi_->value(p); }
  Vec2 gradient(Vec2 p) const override { return psi_->gradient(p); }
  Mat2 hessian(Vec2 p) const override { return psi_->hessian(p); }
  bool valid(Vec2 p) const override {
    if (mesh_->substrate_y && p.y < *mesh_->substrate_y + margin_) return false;
    for (const auto& body : mesh_->bodies)
      if (body.contains(p, margin_)) return false;
    return true;
  }

 private:
  const PseudoField* psi_;
  const PanelMesh* mesh_;
  double margin_;
};

BBox ion_seed_region(const CrossSection& cs, double separation) {
  double xr = 1.2 * separation;
  for (const auto& body : cs.bodies)
    if (body.x0 > 0) xr = std::min(xr, body.x0 - 2.0);
  xr = std::max(xr, 4.0);
  BBox box;
  if (cs.substrate_y) {
    double ytop = 4.0 * separation;
    for (const auto& body : cs.bodies) ytop = std::max(ytop, 0.9 * body.y1);
    box.lo = {-xr, *cs.substrate_y + 1.0};
    box.hi = {xr, ytop};
  } else {
    const double yr = std::min(xr, 0.8 * separation);
    box.lo = {-std::min(xr, 0.8 * separation), -yr};
    box.hi = {std::min(xr, 0.8 * separation), yr};
  }
  return box;
}

SearchWindow escape_window(const CrossSection& cs, Vec2 minimum, double separation) {
  BBox box = cs.electrode_bbox().inflated(2.0);
  const double r = 6.0 * separation;
  box.expand({minimum.x - r, minimum.y - r});
  box.expand({minimum.x + r, minimum.y + r});
  if (cs.substrate_y) box.lo.y = std::max(box.lo.y, *cs.substrate_y + 1.0);
  return {box};
}

AnalyzedTrap analyze_trap_full(const RunConfig& config) {
  TrapParams params = complete_params(config.family, config.params);
  int scale_iterations = 0;
  if (config.separation.enabled)
    params = scale_to_separation(config.family, params, config, &scale_iterations);

  const CrossSection cs = build_cross_section(config.family, params, config.geometry);
  const PanelMesh mesh = mesh_panels(cs, config.mesh);
  BemSolution sol = solve_basis_cached(mesh, SolverOptions{config.mesh.max_panels});
  const BoundField rf = rf_unit_field(sol);

  const IonProperties& ion = config.ion;
  const DriveConfig unit_drive{config.drive.rf_frequency_mhz, 1.0};
  const PseudoField psi_unit(rf, unit_drive, ion);
  const ScanPseudoField scan_unit(psi_unit, mesh, 1.0);

  const double sep_target = config.separation.target_um;
  Vec2 ion_pos = find_minimum(scan_unit, ion_seed_region(cs, sep_target));

  const double rf_voltage =
      config.fixed_rf_voltage
          ? *config.fixed_rf_voltage
          : calibrate_rf_voltage(rf, ion, config.drive.rf_frequency_mhz,
                                 config.target_secular_mhz, ion_pos);
  const DriveConfig drive{config.drive.rf_frequency_mhz, rf_voltage};

  const PseudoField psi(rf, drive, ion);
  const ScanPseudoField scan(psi, mesh, 1.0);
  // re-refine at the operating voltage, where the gradient tolerance pins
  // the position far more tightly than on the unit-voltage surface
  {
    BBox tight;
    tight.expand({ion_pos.x - 2.0, ion_pos.y - 2.0});
    tight.expand({ion_pos.x + 2.0, ion_pos.y + 2.0});
    ion_pos = find_minimum(scan, tight, 8, 1e-11);
  }
  const double separation = cs.distance_to_electrodes(ion_pos);
  const SecularModes modes = secular_frequencies(rf, drive, ion, ion_pos);

  TrapReport report;
  report.family = config.family;
  report.params = params;
  report.ion_position = ion_pos;
  report.rf_voltage = rf_voltage;
  report.secular_lower_mhz = modes.lower.frequency_mhz;
  report.secular_upper_mhz = modes.upper.frequency_mhz;

  try {
    const EscapeResult escape =
        find_escape_point(scan, ion_pos, escape_window(cs, ion_pos, sep_target));
    report.depth_ev = escape.depth_ev;
    report.escape_point = escape.saddle;
    report.depth_bounded = true;
  } catch (const NoSaddleFound& e) {
    report.depth_bounded = false;
    report.depth_window_max = e.window_max_ev;
    report.depth_ev = e.window_max_ev;
    report.diagnostics.notes += "depth exceeds search window; ";
  }

  const MultipoleFit fit = fit_multipoles(rf, ion_pos, separation, MultipoleOptions{});
  const DerivedRatios ratios = derived_ratios(fit);
  report.c2 = ratios.c2;
  report.c3_prime = ratios.c3_prime;
  report.c4_prime = ratios.c4_prime;
  if (fit.dipole_flagged)
    report.diagnostics.notes += "multipole dipole term above threshold; ";
  if (fit.residual_flagged)
    report.diagnostics.notes += "multipole fit residual above threshold; ";

  report.na_above = numerical_aperture(cs, ion_pos, ViewDirection::Up);
  report.na_below = numerical_aperture(cs, ion_pos, ViewDirection::Down);

  if (config.family == TrapFamily::StackedTrenchAntisymmetric) {
    const double wall = params.at("i") / 2 - std::abs(ion_pos.x);
    const double floor_d = ion_pos.y;
    const StackedRegime actual =
        wall < floor_d ? StackedRegime::Walls : StackedRegime::GroundPlane;
    if (actual != config.regime)
      report.diagnostics.notes += "separation regime differs from the requested one; ";
  }

  report.diagnostics.panel_count = mesh.size();
  report.diagnostics.rcond = sol.rcond();
  report.diagnostics.fit_residual = fit.residual;
  report.diagnostics.q_parameter = modes.q_parameter;
  if (modes.q_warning)
    report.diagnostics.notes += "stability parameter q above 0.3; ";
  report.diagnostics.scale_iterations = scale_iterations;
  report.diagnostics.separation_um = separation;

  return {cs, std::move(sol), std::move(report)};
}

TrapReport analyze_trap(const RunConfig& config) {
  return analyze_trap_full(config).report;
}

std::string TrapReport::to_text() const {
  std::ostringstream out;
  out << "trap:            " << family_name(family) << "\n";
  out << "parameters (um):";
  for (const auto& [key, value] : params) out << " " << key << "=" << fmt(value);
  out << "\n";
  out << "ion position:    (" << fmt(ion_position.x) << ", " << fmt(ion_position.y)
      << ") um\n";
  out << "separation:      " << fmt(diagnostics.separation_um) << " um\n";
  out << "rf voltage:      " << fmt(rf_voltage) << " V\n";
  out << "secular (MHz):   " << fmt(secular_lower_mhz) << " / " << fmt(secular_upper_mhz)
      << "  (q = " << fmt(diagnostics.q_parameter) << ")\n";
  if (depth_bounded)
    out << "trap depth:      " << fmt(depth_ev) << " eV  (escape at ("
        << fmt(escape_point.x) << ", " << fmt(escape_point.y) << "))\n";
  else
    out << "trap depth:      > " << fmt(depth_window_max) << " eV (window bound)\n";
  out << "quadrupole C2:   " << fmt(c2) << "\n";
  out << "hexapole C3':    " << fmt(c3_prime) << "\n";
  out << "octopole C4':    " << fmt(c4_prime) << "\n";
  out << "NA above:        " << fmt(na_above.na) << " (" << na_above.limiting_edge
      << ")\n";
  out << "NA below:        " << fmt(na_below.na) << " (" << na_below.limiting_edge
      << ")\n";
  out << "panels:          " << diagnostics.panel_count
      << "  rcond: " << fmt(diagnostics.rcond)
      << "  fit residual: " << fmt(diagnostics.fit_residual) << "\n";
  if (!diagnostics.notes.empty()) out << "notes:           " << diagnostics.notes << "\n";
  return out.str();
}

std::string TrapReport::to_report_doc() const {
  std::ostringstream out;
  out << "schema_version = " << constants::schema_version << "\n";
  out << "family = " << family_name(family) << "\n";
  for (const auto& [key, value] : params) out << "param." << key << " = " << fmt(value) << "\n";
  out << "ion_x_um = " << fmt(ion_position.x) << "\n";
  out << "ion_y_um = " << fmt(ion_position.y) << "\n";
  out << "separation_um = " << fmt(diagnostics.separation_um) << "\n";
  out << "rf_voltage_V = " << fmt(rf_voltage) << "\n";
  out << "secular_lower_MHz = " << fmt(secular_lower_mhz) << "\n";
  out << "secular_upper_MHz = " << fmt(secular_upper_mhz) << "\n";
  out << "q_parameter = " << fmt(diagnostics.q_parameter) << "\n";
  out << "depth_eV = " << fmt(depth_ev) << "\n";
  out << "depth_bounded = " << (depth_bounded ? "true" : "false") << "\n";
  out << "C2 = " << fmt(c2) << "\n";
  out << "C3p = " << fmt(c3_prime) << "\n";
  out << "C4p = " << fmt(c4_prime) << "\n";
  out << "na_above = " << fmt(na_above.na) << "\n";
  out << "na_above_edge = " << na_above.limiting_edge << "\n";
  out << "na_below = " << fmt(na_below.na) << "\n";
  out << "na_below_edge = " << na_below.limiting_edge << "\n";
  out << "panel_count = " << diagnostics.panel_count << "\n";
  out << "rcond = " << fmt(diagnostics.rcond) << "\n";
  out << "fit_residual_V = " << fmt(diagnostics.fit_residual) << "\n";
  out << "scale_iterations = " << diagnostics.scale_iterations << "\n";
  if (!diagnostics.notes.empty()) out << "notes = " << diagnostics.notes << "\n";
  return out.str();
}

}  // namespace trenchfield
