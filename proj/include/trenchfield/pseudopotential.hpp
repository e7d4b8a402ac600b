#pragma once

#include <optional>

#include "trenchfield/field.hpp"

namespace trenchfield {

struct IonProperties {
  double mass_amu = 40.0;  // 40Ca+
  int charge = 1;

  double mass_kg() const;
  double charge_coulomb() const;
};

struct DriveConfig {
  double rf_frequency_mhz = 40.0;  // Omega / 2 pi
  double rf_voltage = 1.0;         // amplitude on RF electrodes, volts

  double omega_rad_s() const;
};

// Ponderomotive surface Psi = q^2 V^2 |E_unit|^2 / (4 m Omega^2) in eV,
// where E_unit is the unit-voltage RF basis field in V/um.
class PseudoField : public ScalarField {
 public:
  PseudoField(const PotentialField& unit_rf, DriveConfig drive, IonProperties ion);

  double value(Vec2 p) const override;
  Vec2 gradient(Vec2 p) const override;  // analytic via field derivatives
  Mat2 hessian(Vec2 p) const override;
  bool valid(Vec2 p) const override;

  double energy_factor_ev() const { return factor_ev_; }  // Psi = factor * |E|^2

 private:
  const PotentialField* rf_;
  double factor_ev_;
};

double pseudopotential_at(const PotentialField& unit_rf, Vec2 p,
                          const DriveConfig& drive, const IonProperties& ion);

// local minimizer refined to |grad| < grad_tol; the seed box is pre-scanned
// on a coarse grid and must contain exactly one minimum
Vec2 find_minimum(const ScalarField& psi, const BBox& seed_region,
                  int grid = 48, double grad_tol = 1e-9);

struct SearchWindow {
  BBox box;
  int directions = 360;
  int radii = 64;
};

struct EscapeResult {
  Vec2 saddle;
  double depth_ev;  // Psi(saddle) - Psi(minimum)
};

// lowest saddle on the basin boundary: polar bracket scan, then Newton
// refinement, classified by Hessian signature; throws NoSaddleFound with the
// window maximum when the basin is unbounded within the window
EscapeResult find_escape_point(const ScalarField& psi, Vec2 minimum,
                               const SearchWindow& window);

struct SecularMode {
  double frequency_mhz;
  double axis_angle_rad;  // principal axis angle from +x
};

struct SecularModes {
  SecularMode lower, upper;
  double q_parameter;  // 2 sqrt(2) omega_sec / Omega at the lower mode
  bool q_warning;      // q > 0.3, pseudopotential approximation degrading
};

// Hessian by Richardson-extrapolated central differences (step 0.1 um)
SecularModes secular_frequencies(const PotentialField& unit_rf,
                                 const DriveConfig& drive,
                                 const IonProperties& ion, Vec2 minimum);

// voltage putting the LOWER secular mode at target; exact linear scaling
double calibrate_rf_voltage(const PotentialField& unit_rf,
                            const IonProperties& ion, double rf_frequency_mhz,
                            double target_secular_mhz, Vec2 minimum);

}  // namespace trenchfield
