#include "trenchfield/field.hpp"

#include "trenchfield/errors.hpp"

namespace trenchfield {

Vec2 PotentialField::field(Vec2 p) const {
  const Complex f = field_conj(p.as_complex());
  return {f.real(), -f.imag()};
}

Complex PotentialField::field_conj_deriv(Complex z) const {
  const double h = 1e-4;
  return (field_conj(z + h) - field_conj(z - h)) / (2.0 * h);
}

Complex PotentialField::field_conj_second(Complex z) const {
  const double h = 1e-3;
  return (field_conj_deriv(z + h) - field_conj_deriv(z - h)) / (2.0 * h);
}

bool PotentialField::is_valid(Vec2 p) const {
  try {
    require_valid(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Vec2 ScalarField::gradient(Vec2 p) const {
  const double h = 1e-3;
  return {(value({p.x + h, p.y}) - value({p.x - h, p.y})) / (2 * h),
          (value({p.x, p.y + h}) - value({p.x, p.y - h})) / (2 * h)};
}

Mat2 ScalarField::hessian(Vec2 p) const {
  const double h = 0.05;
  const double c = value(p);
  Mat2 m;
  m.xx = (value({p.x + h, p.y}) - 2 * c + value({p.x - h, p.y})) / (h * h);
  m.yy = (value({p.x, p.y + h}) - 2 * c + value({p.x, p.y - h})) / (h * h);
  m.xy = m.yx = (value({p.x + h, p.y + h}) + value({p.x - h, p.y - h}) -
                 value({p.x + h, p.y - h}) - value({p.x - h, p.y + h})) /
                (4 * h * h);
  return m;
}

}  // namespace trenchfield
