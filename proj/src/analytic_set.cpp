#include "trenchfield/analytic_set.hpp"

#include <cmath>

#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

constexpr double pi = constants::pi;

void check_height(Vec2 p) {
  if (!(p.y > 0.0))
    throw NonPositiveHeight("gapless plane model requires y > 0, got y = " +
                            std::to_string(p.y));
}

}  // namespace

double strip_potential(const StripSet& s, Vec2 p) {
  check_height(p);
  double phi = 0.0;
  for (const auto& [x0, x1] : s.strips)
    phi += (std::atan2(x1 - p.x, p.y) - std::atan2(x0 - p.x, p.y)) / pi;
  if (s.left_half_plane)
    phi += (std::atan2(s.left_edge - p.x, p.y) + pi / 2) / pi;
  if (s.right_half_plane)
    phi += (pi / 2 - std::atan2(s.right_edge - p.x, p.y)) / pi;
  return phi;
}

namespace {

// Ex - i Ey of the unit-potential strip set. The potential of a strip
// [x0, x1] is Re[(i/pi) ln((z-x0)/(z-x1))], so the conjugate field is
// (i/pi) (1/(z-x1) - 1/(z-x0)).
Complex strips_field_conj(const StripSet& s, Complex z, int derivative) {
  const Complex i_pi{0.0, 1.0 / pi};
  const auto pole = [&](double x) -> Complex {
    const Complex d = z - x;
    switch (derivative) {
      case 0: return 1.0 / d;
      case 1: return -1.0 / (d * d);
      default: return 2.0 / (d * d * d);
    }
  };
  Complex f = 0.0;
  for (const auto& [x0, x1] : s.strips) f += i_pi * (pole(x1) - pole(x0));
  if (s.left_half_plane) f += i_pi * pole(s.left_edge);
  if (s.right_half_plane) f += -i_pi * pole(s.right_edge);
  return f;
}

}  // namespace

Vec2 set_field(const StripSet& s, Vec2 p) {
  check_height(p);
  const Complex f = strips_field_conj(s, p.as_complex(), 0);
  return {f.real(), -f.imag()};
}

double AnalyticSetField::potential(Vec2 p) const { return strip_potential(strips_, p); }

Complex AnalyticSetField::field_conj(Complex z) const {
  return strips_field_conj(strips_, z, 0);
}

Complex AnalyticSetField::field_conj_deriv(Complex z) const {
  return strips_field_conj(strips_, z, 1);
}

Complex AnalyticSetField::field_conj_second(Complex z) const {
  return strips_field_conj(strips_, z, 2);
}

void AnalyticSetField::require_valid(Vec2 p) const { check_height(p); }

StripSet set_symmetric_rf_strips(const TrapParams& params) {
  const double a = params.at("a"), b = params.at("b");
  StripSet s;
  s.strips = {{-b / 2 - a, -b / 2}, {b / 2, b / 2 + a}};
  return s;
}

StripSet set_antisymmetric_rf_strips(const TrapParams& params) {
  const double phi = params.at("phi");
  StripSet s;
  s.strips = {{-phi, 0.0}};
  s.right_half_plane = true;
  s.right_edge = phi;
  return s;
}

double set_symmetric_ion_height(double a, double b) {
  return std::sqrt(b * (b + 2 * a)) / 2.0;
}

}  // namespace trenchfield
