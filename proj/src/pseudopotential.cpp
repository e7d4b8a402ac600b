#include "trenchfield/pseudopotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

constexpr double two_pi = 2.0 * constants::pi;

struct Eigen2 {
  double lo, hi;          // lo <= hi
  Vec2 axis_lo, axis_hi;  // unit eigenvectors
};

Eigen2 eigen_sym(const Mat2& m) {
  const double sym_xy = 0.5 * (m.xy + m.yx);
  const double tr = m.xx + m.yy;
  const double det = m.xx * m.yy - sym_xy * sym_xy;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  Eigen2 out;
  out.lo = tr / 2 - disc;
  out.hi = tr / 2 + disc;
  const auto axis = [&](double lambda) -> Vec2 {
    Vec2 v{sym_xy, lambda - m.xx};
    if (v.norm() < 1e-300) v = {lambda - m.yy, sym_xy};
    if (v.norm() < 1e-300) v = {1.0, 0.0};
    return v / v.norm();
  };
  out.axis_lo = axis(out.lo);
  out.axis_hi = axis(out.hi);
  return out;
}

}  // namespace

double IonProperties::mass_kg() const { return mass_amu * constants::atomic_mass_unit; }
double IonProperties::charge_coulomb() const {
  return charge * constants::elementary_charge;
}

double DriveConfig::omega_rad_s() const { return two_pi * rf_frequency_mhz * 1e6; }

PseudoField::PseudoField(const PotentialField& unit_rf, DriveConfig drive,
                         IonProperties ion)
    : rf_(&unit_rf) {
  const double q = ion.charge_coulomb();
  const double m = ion.mass_kg();
  const double omega = drive.omega_rad_s();
  const double v = drive.rf_voltage;
  // |E| in V/um -> V/m brings a factor 1e12 under the square
  factor_ev_ = q * q * v * v * 1e12 /
               (4.0 * m * omega * omega * constants::elementary_charge);
}

double PseudoField::value(Vec2 p) const {
  const Complex f = rf_->field_conj(p.as_complex());
  return factor_ev_ * std::norm(f);
}

Vec2 PseudoField::gradient(Vec2 p) const {
  const Complex z = p.as_complex();
  const Complex f = rf_->field_conj(z);
  const Complex fp = rf_->field_conj_deriv(z);
  const Complex cross = std::conj(f) * fp;
  return {2 * factor_ev_ * cross.real(), -2 * factor_ev_ * cross.imag()};
}

Mat2 PseudoField::hessian(Vec2 p) const {
  const Complex z = p.as_complex();
  const Complex f = rf_->field_conj(z);
  const Complex fp = rf_->field_conj_deriv(z);
  const Complex fpp = rf_->field_conj_second(z);
  const double fp2 = std::norm(fp);
  const Complex cross = std::conj(f) * fpp;
  Mat2 m;
  m.xx = 2 * factor_ev_ * (fp2 + cross.real());
  m.yy = 2 * factor_ev_ * (fp2 - cross.real());
  m.xy = m.yx = -2 * factor_ev_ * cross.imag();
  return m;
}

bool PseudoField::valid(Vec2 p) const { return rf_->is_valid(p); }

double pseudopotential_at(const PotentialField& unit_rf, Vec2 p,
                          const DriveConfig& drive, const IonProperties& ion) {
  unit_rf.require_valid(p);
  return PseudoField(unit_rf, drive, ion).value(p);
}

namespace {

// damped Newton toward a stationary point; returns false when it leaves the
// region or stalls. Converges the step as well as the gradient: on shallow
// surfaces the gradient tolerance alone leaves the position poorly pinned.
bool newton_stationary(const ScalarField& psi, Vec2& p, const BBox& region,
                       double grad_tol, bool want_minimum) {
  double step_cap = std::max(region.width(), region.height()) / 8;
  double last_step = 1e300;
  for (int it = 0; it < 200; ++it) {
    if (!region.contains(p) || !psi.valid(p)) return false;
    const Vec2 g = psi.gradient(p);
    const double scale = std::max(1.0, p.norm());
    if (g.norm() < grad_tol && last_step < 1e-7 * scale) return true;
    const Mat2 h = psi.hessian(p);
    const double det = h.det();
    const bool pd = det > 0 && h.xx > 0;
    if ((want_minimum && !pd) || std::abs(det) < 1e-300) {
      // fall back: descend along -g with a crude backtracking line search
      double t = step_cap / std::max(g.norm(), 1e-300);
      const double base = psi.value(p);
      bool moved = false;
      for (int ls = 0; ls < 40 && !moved; ++ls, t /= 2) {
        const Vec2 trial = p - g * t;
        if (region.contains(trial) && psi.valid(trial) && psi.value(trial) < base) {
          last_step = (trial - p).norm();
          p = trial;
          moved = true;
        }
      }
      if (!moved) return false;
      continue;
    }
    Vec2 step{(-g.x * h.yy + g.y * h.xy) / det, (-h.xx * g.y + h.yx * g.x) / det};
    const double n = step.norm();
    if (n > step_cap) step = step * (step_cap / n);
    p = p + step;
    last_step = step.norm();
    step_cap = std::max(step_cap * 0.9, 1.0);
    if (last_step < 1e-12 * scale) return psi.gradient(p).norm() < grad_tol;
  }
  return psi.gradient(p).norm() < grad_tol * 10 && last_step < 1e-6;
}

}  // namespace

Vec2 find_minimum(const ScalarField& psi, const BBox& seed_region, int grid,
                  double grad_tol) {
  const int nx = grid, ny = grid;
  std::vector<double> values(static_cast<std::size_t>(nx) * ny,
                             std::numeric_limits<double>::infinity());
  const auto at = [&](int ix, int iy) -> double& {
    return values[static_cast<std::size_t>(iy) * nx + ix];
  };
  const auto point = [&](int ix, int iy) -> Vec2 {
    return {seed_region.lo.x + seed_region.width() * ix / (nx - 1),
            seed_region.lo.y + seed_region.height() * iy / (ny - 1)};
  };
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Vec2 p = point(ix, iy);
      if (psi.valid(p)) at(ix, iy) = psi.value(p);
    }

  // strict local minima of the valid grid samples
  std::vector<Vec2> seeds;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const double v = at(ix, iy);
      if (!std::isfinite(v)) continue;
      bool lowest = true;
      for (int dy = -1; dy <= 1 && lowest; ++dy)
        for (int dx = -1; dx <= 1 && lowest; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
          if (at(jx, jy) < v) lowest = false;
        }
      if (lowest) seeds.push_back(point(ix, iy));
    }
  if (seeds.empty()) throw NoMinimumFound("no pseudopotential minimum in the seed region");

  std::vector<Vec2> minima;
  for (Vec2 p : seeds) {
    if (!newton_stationary(psi, p, seed_region, grad_tol, true)) continue;
    const Mat2 h = psi.hessian(p);
    if (!(h.det() > 0 && h.xx > 0)) continue;  // not positive definite
    bool dup = false;
    for (const Vec2& q : minima)
      if ((p - q).norm() < 1e-3) dup = true;
    if (!dup) minima.push_back(p);
  }
  if (minima.empty())
    throw NoMinimumFound("grid minima did not refine to a positive-definite minimum");
  if (minima.size() > 1)
    throw MultipleMinimaInRegion("seed region holds " + std::to_string(minima.size()) +
                                 " distinct minima");
  return minima.front();
}

EscapeResult find_escape_point(const ScalarField& psi, Vec2 minimum,
                               const SearchWindow& window) {
  const double psi_min = psi.value(minimum);
  const BBox& box = window.box;

  double best_barrier = std::numeric_limits<double>::infinity();
  Vec2 best_point = minimum;
  bool best_at_edge = false;
  double window_max_seen = 0.0;

  for (int d = 0; d < window.directions; ++d) {
    const double theta = two_pi * d / window.directions;
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    // distance to the window boundary along dir
    double rmax = std::numeric_limits<double>::infinity();
    if (dir.x > 1e-12) rmax = std::min(rmax, (box.hi.x - minimum.x) / dir.x);
    if (dir.x < -1e-12) rmax = std::min(rmax, (box.lo.x - minimum.x) / dir.x);
    if (dir.y > 1e-12) rmax = std::min(rmax, (box.hi.y - minimum.y) / dir.y);
    if (dir.y < -1e-12) rmax = std::min(rmax, (box.lo.y - minimum.y) / dir.y);
    if (!(rmax > 2.0)) continue;

    double barrier = -1.0;
    Vec2 arg = minimum;
    bool blocked = false;
    int peak_index = -1;
    for (int k = 0; k < window.radii; ++k) {
      const double r = 2.0 + (rmax - 2.0) * k / (window.radii - 1);
      const Vec2 p = minimum + dir * r;
      if (!psi.valid(p)) {
        blocked = true;
        break;
      }
      const double v = psi.value(p);
      if (v > barrier) {
        barrier = v;
        arg = p;
        peak_index = k;
      }
    }
    if (blocked || barrier < 0.0) continue;  // no escape through metal
    window_max_seen = std::max(window_max_seen, barrier);
    if (barrier < best_barrier) {
      best_barrier = barrier;
      best_point = arg;
      best_at_edge = peak_index == window.radii - 1;
    }
  }

  if (!std::isfinite(best_barrier))
    throw NoSaddleFound("every direction is blocked by conductors", window_max_seen);
  if (best_at_edge)
    throw NoSaddleFound("pseudopotential still rising at the window edge",
                        best_barrier - psi_min);

  // refine the bracket to the stationary point and classify it; the true
  // saddle sits near the bracket but its value may exceed the ray-sampled
  // maximum, so the guard is locality plus Hessian signature
  Vec2 refined = best_point;
  if (newton_stationary(psi, refined, box, 1e-10, false)) {
    const Eigen2 ev = eigen_sym(psi.hessian(refined));
    const double locality =
        std::max(10.0, 0.3 * (best_point - minimum).norm());
    if (ev.lo < 0.0 && ev.hi > 0.0 && (refined - best_point).norm() < locality) {
      return {refined, psi.value(refined) - psi_min};
    }
  }
  return {best_point, best_barrier - psi_min};
}

namespace {

// Richardson-extrapolated central-difference Hessian of the pseudopotential
Mat2 fd_hessian(const PseudoField& psi, Vec2 p, double step) {
  const auto hess = [&](double h) {
    Mat2 m;
    const double c = psi.value(p);
    m.xx = (psi.value({p.x + h, p.y}) - 2 * c + psi.value({p.x - h, p.y})) / (h * h);
    m.yy = (psi.value({p.x, p.y + h}) - 2 * c + psi.value({p.x, p.y - h})) / (h * h);
    m.xy = m.yx = (psi.value({p.x + h, p.y + h}) + psi.value({p.x - h, p.y - h}) -
                   psi.value({p.x + h, p.y - h}) - psi.value({p.x - h, p.y + h})) /
                  (4 * h * h);
    return m;
  };
  const Mat2 coarse = hess(step);
  const Mat2 fine = hess(step / 2);
  Mat2 out;
  out.xx = (4 * fine.xx - coarse.xx) / 3;
  out.yy = (4 * fine.yy - coarse.yy) / 3;
  out.xy = out.yx = (4 * fine.xy - coarse.xy) / 3;
  return out;
}

}  // namespace

SecularModes secular_frequencies(const PotentialField& unit_rf, const DriveConfig& drive,
                                 const IonProperties& ion, Vec2 minimum) {
  const PseudoField psi(unit_rf, drive, ion);
  const Mat2 h_ev_um = fd_hessian(psi, minimum, 0.1);
  // eV/um^2 -> J/m^2
  const double to_si = constants::elementary_charge * 1e12;
  const Eigen2 ev = eigen_sym(h_ev_um);
  if (!(ev.lo > 0.0))
    throw NonPositiveCurvature("pseudopotential curvature at the minimum is not positive");
  const double m = ion.mass_kg();
  const auto to_mhz = [&](double lambda) {
    return std::sqrt(lambda * to_si / m) / (two_pi * 1e6);
  };
  const auto fold = [](Vec2 v) {
    double angle = std::atan2(v.y, v.x);
    if (angle < 0) angle += constants::pi;
    if (angle >= constants::pi) angle -= constants::pi;
    return angle;
  };
  SecularModes modes;
  modes.lower = {to_mhz(ev.lo), fold(ev.axis_lo)};
  modes.upper = {to_mhz(ev.hi), fold(ev.axis_hi)};
  modes.q_parameter = 2.0 * std::sqrt(2.0) * modes.lower.frequency_mhz /
                      drive.rf_frequency_mhz;
  modes.q_warning = modes.q_parameter > 0.3;
  return modes;
}

double calibrate_rf_voltage(const PotentialField& unit_rf, const IonProperties& ion,
                            double rf_frequency_mhz, double target_secular_mhz,
                            Vec2 minimum) {
  if (!(target_secular_mhz > 0.0))
    throw NonPositiveCurvature("target secular frequency must be positive");
  DriveConfig unit_drive{rf_frequency_mhz, 1.0};
  const SecularModes at_unit = secular_frequencies(unit_rf, unit_drive, ion, minimum);
  return target_secular_mhz / at_unit.lower.frequency_mhz;
}

}  // namespace trenchfield
