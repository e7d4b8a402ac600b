#pragma once

#include <vector>

#include "trenchfield/field.hpp"
#include "trenchfield/geometry.hpp"

namespace trenchfield {

// Gapless infinite-plane surface-electrode model: strips in the y = 0 plane
// held at 1 V, the rest of the plane grounded. Closed-form potential; the
// verification oracle for the BEM solver.
struct StripSet {
  // non-overlapping, ordered (x_left, x_right) intervals; +-infinity allowed
  // via huge sentinels is not needed -- half planes use explicit flags below
  std::vector<std::pair<double, double>> strips;
  bool left_half_plane = false;   // (-inf, strips... ] at 1 V
  double left_edge = 0.0;         // boundary of the left half plane
  bool right_half_plane = false;
  double right_edge = 0.0;
};

double strip_potential(const StripSet& s, Vec2 p);  // y > 0
Vec2 set_field(const StripSet& s, Vec2 p);

class AnalyticSetField : public PotentialField {
 public:
  explicit AnalyticSetField(StripSet strips) : strips_(std::move(strips)) {}

  double potential(Vec2 p) const override;
  Complex field_conj(Complex z) const override;
  Complex field_conj_deriv(Complex z) const override;
  Complex field_conj_second(Complex z) const override;
  void require_valid(Vec2 p) const override;  // NonPositiveHeight below plane

  const StripSet& strips() const { return strips_; }

 private:
  StripSet strips_;
};

// RF strip layouts from the same TrapParams that drive the BEM geometry
StripSet set_symmetric_rf_strips(const TrapParams& params);       // a, b
StripSet set_antisymmetric_rf_strips(const TrapParams& params);   // phi

// closed-form gapless results for the symmetric SET, used as test oracles
double set_symmetric_ion_height(double a, double b);  // sqrt(b(b+2a))/2

}  // namespace trenchfield
