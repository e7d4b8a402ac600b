#include "trenchfield/multipole.hpp"

#include <Eigen/QR>
#include <cmath>

#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

MultipoleFit fit_multipoles(const PotentialField& potential, Vec2 center, double r0,
                            double v0, int n_max, double fit_radius, int n_samples) {
  if (n_samples < 4 * n_max)
    throw IllConditionedFit("need n_samples >= 4 n_max for a stable fit");

  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(2 * n_samples));
  for (double scale : {0.5, 1.0}) {
    const double r = scale * fit_radius;
    for (int i = 0; i < n_samples; ++i) {
      const double theta = 2.0 * constants::pi * i / n_samples;
      points.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
    }
  }
  for (const Vec2& p : points) {
    try {
      potential.require_valid(p);
    } catch (const Error& err) {
      throw FitCircleIntersectsElectrode(std::string("fit circle hits geometry: ") +
                                         err.what());
    }
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(points.size());
  const Eigen::Index cols = 2 * n_max + 1;
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index row = 0; row < rows; ++row) {
    const Vec2 p = points[static_cast<std::size_t>(row)];
    const double dx = p.x - center.x, dy = p.y - center.y;
    const double r = std::hypot(dx, dy);
    const double theta = std::atan2(dy, dx);
    design(row, 0) = 1.0;
    for (int n = 1; n <= n_max; ++n) {
      const double radial = std::pow(r / r0, n);
      design(row, 2 * n - 1) = radial * std::cos(n * theta);
      design(row, 2 * n) = radial * std::sin(n * theta);
    }
    rhs(row) = potential.potential(p);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols)
    throw IllConditionedFit("rank-deficient multipole design matrix");
  const Eigen::VectorXd coef = qr.solve(rhs);
  const double residual = std::sqrt((design * coef - rhs).squaredNorm() /
                                    static_cast<double>(rows));

  MultipoleFit fit;
  fit.r0 = r0;
  fit.v0 = v0;
  fit.n_max = n_max;
  fit.v_off = coef(0);
  fit.residual = residual;
  fit.c.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  fit.phi.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double a = coef(2 * n - 1) / v0;
    const double b = coef(2 * n) / v0;
    // V0 C_n cos(n theta + phi_n): a = C cos(phi), b = -C sin(phi)
    double c = std::hypot(a, b);
    double phase = c > 0 ? std::atan2(-b, a) : 0.0;
    const double period = 2.0 * constants::pi / n;
    phase = std::fmod(phase, period);
    if (phase < 0) phase += period;
    fit.c[static_cast<std::size_t>(n)] = c;
    fit.phi[static_cast<std::size_t>(n)] = phase;
  }
  if (n_max >= 2 && fit.c[1] > 1e-3 * fit.c[2]) fit.dipole_flagged = true;
  return fit;
}

MultipoleFit fit_multipoles(const PotentialField& potential, Vec2 center, double r0,
                            const MultipoleOptions& options) {
  MultipoleFit fit = fit_multipoles(potential, center, r0, 1.0, options.n_max,
                                    options.fit_radius_factor * r0, options.n_samples);
  fit.residual_flagged = fit.residual > options.residual_threshold_factor * fit.v0;
  return fit;
}

DerivedRatios derived_ratios(const MultipoleFit& fit) {
  if (fit.n_max < 4)
    throw ZeroQuadrupole("fit must include n = 2..4");
  const double c2 = fit.C(2);
  if (!(c2 > 0.0)) throw ZeroQuadrupole("C2 vanishes, ratios undefined");
  return {c2, fit.C(3) / c2, fit.C(4) / c2};
}

}  // namespace trenchfield
