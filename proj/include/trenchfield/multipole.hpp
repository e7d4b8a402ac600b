#pragma once

#include <vector>

#include "trenchfield/field.hpp"

namespace trenchfield {

// Cylindrical harmonic expansion around the ion:
//   V(r, theta) = V0 sum_n C_n (r/r0)^n cos(n theta + phi_n) + V_off
struct MultipoleFit {
  double r0 = 0.0;  // normalization length, um (minimum ion-electrode separation)
  double v0 = 1.0;  // applied RF amplitude, volts
  std::vector<double> c;    // c[n] for n = 0..n_max; c[0] unused, c[1] = residual dipole
  std::vector<double> phi;  // phase in [0, 2 pi / n)
  double v_off = 0.0;
  double residual = 0.0;    // RMS fit error, volts
  int n_max = 0;
  bool dipole_flagged = false;    // |C1| > 1e-3 C2: center is off the null
  bool residual_flagged = false;  // residual above the configured threshold

  double C(int n) const { return c.at(static_cast<std::size_t>(n)); }
};

struct MultipoleOptions {
  int n_max = 6;
  double fit_radius_factor = 0.2;  // fit_radius = factor * r0
  int n_samples = 64;              // per circle; circles at {0.5, 1.0} * radius
  double residual_threshold_factor = 1e-4;  // flags fits with residual > f * V0
};

MultipoleFit fit_multipoles(const PotentialField& potential, Vec2 center,
                            double r0, double v0, int n_max, double fit_radius,
                            int n_samples);

MultipoleFit fit_multipoles(const PotentialField& potential, Vec2 center,
                            double r0, const MultipoleOptions& options = {});

struct DerivedRatios {
  double c2;        // quadrupole strength
  double c3_prime;  // hexapole, C3 / C2
  double c4_prime;  // octopole, C4 / C2
};

DerivedRatios derived_ratios(const MultipoleFit& fit);  // throws ZeroQuadrupole

}  // namespace trenchfield
