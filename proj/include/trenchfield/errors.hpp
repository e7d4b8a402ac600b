#pragma once

#include <stdexcept>
#include <string>

namespace trenchfield {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry / config
struct UnknownFamily : Error { using Error::Error; };
struct UnknownParameter : Error { using Error::Error; };
struct NonPositiveLength : Error { using Error::Error; };
struct SelfIntersectingGeometry : Error { using Error::Error; };
struct DegeneratePolyline : Error { using Error::Error; };
struct MissingRequiredKey : Error { using Error::Error; };

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_ = 0)
      : Error(msg + " (line " + std::to_string(line_) +
              (column_ > 0 ? ", column " + std::to_string(column_) : "") + ")"),
        line(line_),
        column(column_) {}
};

// solver
struct SingularMatrix : Error { using Error::Error; };
struct MeshTooLarge : Error { using Error::Error; };
struct PointInsideConductor : Error { using Error::Error; };
struct PointTooCloseToBoundary : Error { using Error::Error; };

// analytic model
struct NonPositiveHeight : Error { using Error::Error; };

// pseudopotential
struct NoMinimumFound : Error { using Error::Error; };
struct MultipleMinimaInRegion : Error { using Error::Error; };
struct NoSaddleFound : Error {
  double window_max_ev = 0.0;
  NoSaddleFound(const std::string& msg, double window_max)
      : Error(msg), window_max_ev(window_max) {}
};
struct NonPositiveCurvature : Error { using Error::Error; };

// multipole
struct FitCircleIntersectsElectrode : Error { using Error::Error; };
struct IllConditionedFit : Error { using Error::Error; };
struct ZeroQuadrupole : Error { using Error::Error; };

// optics
struct IonInsideConductor : Error { using Error::Error; };

}  // namespace trenchfield
