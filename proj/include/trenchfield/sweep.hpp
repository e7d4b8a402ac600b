#pragma once

#include <string>
#include <vector>

#include "trenchfield/report.hpp"

namespace trenchfield {

struct SweepSpec {
  TrapFamily family = TrapFamily::SetSymmetric;
  std::string swept;            // parameter name mapped to the generic w
  std::vector<double> values;   // um, ascending
  TrapParams fixed;             // remaining parameters
  RunConfig base;               // mesh/drive/ion/separation settings
};

struct SweepRow {
  double w = 0.0;
  TrapParams adjusted_params;
  TrapReport report;
  std::string status = "ok";  // or the per-row error, sweep never aborts
};

SweepSpec sweep_from_config(const RunConfig& config);  // requires [sweep]

// rows in input order; jobs > 1 runs rows on a worker pool with identical
// results to the serial path
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

// uniform rescale of all family lengths until the minimum ion-electrode
// distance (or ion height) meets the constraint; fixed-point iteration
TrapParams scale_to_separation(TrapFamily family, const TrapParams& params,
                               const RunConfig& config, int* iterations = nullptr);

// CSV schema: family,w_name,w_um,depth_eV,C2,C3p,C4p,na_above,na_below,
//             ion_x_um,ion_y_um,rf_voltage_V,status ; floats at 9 significant digits
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace trenchfield
