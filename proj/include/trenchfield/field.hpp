#pragma once

#include "trenchfield/geom2d.hpp"

namespace trenchfield {

// Electrostatic potential with its field in the vacuum region.
// field_conj returns Ex - i*Ey, which is holomorphic for 2D harmonic
// potentials; derivative overloads feed Newton refinements downstream.
class PotentialField {
 public:
  virtual ~PotentialField() = default;

  virtual double potential(Vec2 p) const = 0;  // volts
  virtual Vec2 field(Vec2 p) const;            // V/um, -grad(potential)

  virtual Complex field_conj(Complex z) const = 0;
  virtual Complex field_conj_deriv(Complex z) const;   // default: finite differences
  virtual Complex field_conj_second(Complex z) const;  // default: finite differences

  // throws PointInsideConductor / PointTooCloseToBoundary / NonPositiveHeight
  virtual void require_valid(Vec2 p) const {}
  bool is_valid(Vec2 p) const;
};

// Scalar surface (pseudopotential in eV over um) for minimum/saddle searches.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual double value(Vec2 p) const = 0;
  virtual Vec2 gradient(Vec2 p) const;  // default: central FD
  virtual Mat2 hessian(Vec2 p) const;   // default: central FD
  virtual bool valid(Vec2 p) const { return true; }
};

}  // namespace trenchfield
