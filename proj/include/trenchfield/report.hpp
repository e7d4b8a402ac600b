#pragma once

#include <optional>
#include <string>

#include "trenchfield/bem.hpp"
#include "trenchfield/config.hpp"
#include "trenchfield/multipole.hpp"
#include "trenchfield/optics.hpp"
#include "trenchfield/pseudopotential.hpp"

namespace trenchfield {

struct Diagnostics {
  std::size_t panel_count = 0;
  double rcond = 0.0;
  double fit_residual = 0.0;
  double q_parameter = 0.0;
  int scale_iterations = 0;
  double separation_um = 0.0;
  std::string notes;
};

// one row of the summary table for a single trap
struct TrapReport {
  TrapFamily family = TrapFamily::SetSymmetric;
  TrapParams params;       // after separation calibration
  double depth_ev = 0.0;
  bool depth_bounded = true;     // false: basin open within the search window
  double depth_window_max = 0.0; // lower bound when unbounded
  double c2 = 0.0;
  double c3_prime = 0.0;
  double c4_prime = 0.0;
  ApertureResult na_above, na_below;
  Vec2 ion_position;
  Vec2 escape_point;
  double rf_voltage = 0.0;       // calibrated (or pinned) amplitude
  double secular_lower_mhz = 0.0;
  double secular_upper_mhz = 0.0;
  Diagnostics diagnostics;

  std::string to_text() const;
  std::string to_report_doc() const;  // machine-readable key = value document
};

// full single-trap pipeline: build -> scale to separation -> solve ->
// calibrate -> depth, multipoles, NA
TrapReport analyze_trap(const RunConfig& config);

// the solved state behind a report, for callers needing field access
struct AnalyzedTrap {
  CrossSection cross_section;
  BemSolution solution;
  TrapReport report;
};
AnalyzedTrap analyze_trap_full(const RunConfig& config);

// shared search-region heuristics of the pipeline
BBox ion_seed_region(const CrossSection& cs, double separation);
SearchWindow escape_window(const CrossSection& cs, Vec2 minimum, double separation);

}  // namespace trenchfield
