#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "na_oracle.hpp"
#include "trenchfield/errors.hpp"
#include "trenchfield/optics.hpp"

using namespace trenchfield;
using trenchfield::testing::raycast_na;

namespace {

constexpr double pi = 3.14159265358979323846;

CrossSection trench_like(double wall_halfwidth, double wall_height,
                         double wall_thickness = 100.0) {
  CrossSection cs;
  cs.gap = 1.0;
  cs.extent = 1500.0;
  cs.substrate_y = 0.0;
  cs.segments.push_back(
      {{{-wall_halfwidth + 0.5, 0.0}, {wall_halfwidth - 0.5, 0.0}},
       ElectrodeRole::Ground,
       "floor"});
  for (int side : {+1, -1}) {
    const double xi = side * wall_halfwidth;
    const double xo = side * (wall_halfwidth + wall_thickness);
    cs.segments.push_back({{{xi, 0.5}, {xi, wall_height}, {xo, wall_height}, {xo, 0.0}},
                           ElectrodeRole::Ground,
                           side > 0 ? "wall_right" : "wall_left"});
    cs.bodies.push_back({std::min(xi, xo), std::max(xi, xo), 0.0, wall_height});
  }
  return cs;
}

}  // namespace

TEST_CASE("SET geometry: NA above is exactly one") {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetSymmetric, {{"a", 161.2}, {"b", 59.0}});
  const ApertureResult na = numerical_aperture(cs, {0.0, 75.0}, ViewDirection::Up);
  CHECK(na.na == 1.0);
  CHECK(na.limiting_edge == "unobstructed");
}

TEST_CASE("SET geometry: NA below is blocked by the plane metal") {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetSymmetric, {{"a", 161.2}, {"b", 59.0}});
  const ApertureResult na = numerical_aperture(cs, {0.0, 75.0}, ViewDirection::Down);
  CHECK(na.na == 0.0);
}

TEST_CASE("trench walls clip the upward cone at the derived angle") {
  // ion at 75 um between walls of inner half width 87.5 um and height 600 um
  const CrossSection cs = trench_like(87.5, 600.0);
  const ApertureResult na = numerical_aperture(cs, {0.0, 75.0}, ViewDirection::Up);
  const double expected = std::sin(std::atan(87.5 / 525.0));
  CHECK(na.na == doctest::Approx(expected).epsilon(1e-9));
  CHECK(na.na == doctest::Approx(0.164).epsilon(0.005));
  CHECK(std::abs(na.na - raycast_na(cs, {0.0, 75.0}, ViewDirection::Up)) < 1e-6);
}

TEST_CASE("walls at the ion height do not clip") {
  const CrossSection cs = trench_like(87.5, 75.0);
  const ApertureResult na = numerical_aperture(cs, {0.0, 75.0}, ViewDirection::Up);
  CHECK(na.na == 1.0);
}

TEST_CASE("monotonicity: higher walls never increase NA above") {
  double last = 2.0;
  for (double height : {100.0, 200.0, 400.0, 800.0}) {
    const CrossSection cs = trench_like(87.5, height);
    const double na = numerical_aperture(cs, {0.0, 75.0}, ViewDirection::Up).na;
    CHECK(na <= last + 1e-12);
    last = na;
  }
}

TEST_CASE("symmetric trap: mirrored corners clip at equal angles") {
  const CrossSection cs = trench_like(90.0, 500.0);
  const Vec2 ion{0.0, 80.0};
  double best_left = pi, best_right = pi;
  for (const auto& seg : cs.segments)
    for (const auto& p : seg.polyline) {
      if (p.y <= ion.y) continue;
      const double angle = std::atan2(std::abs(p.x - ion.x), p.y - ion.y);
      (p.x < 0 ? best_left : best_right) = std::min(p.x < 0 ? best_left : best_right,
                                                    angle);
    }
  CHECK(best_left == doctest::Approx(best_right).epsilon(1e-9));
}

TEST_CASE("wafer trap: equal NA above and below") {
  const CrossSection cs = build_cross_section(TrapFamily::WaferAntisymmetric, {{"k", 53.0}});
  const ApertureResult up = numerical_aperture(cs, {0.0, 0.0}, ViewDirection::Up);
  const ApertureResult down = numerical_aperture(cs, {0.0, 0.0}, ViewDirection::Down);
  CHECK(std::abs(up.na - down.na) <= 1e-9);
  CHECK(up.na > 0.1);
}

TEST_CASE("ion inside metal is rejected") {
  const CrossSection cs = trench_like(87.5, 600.0);
  CHECK_THROWS_AS(numerical_aperture(cs, {100.0, 50.0}, ViewDirection::Up),
                  IonInsideConductor);
}

TEST_CASE("analytic corner rule agrees with ray casting on random trenches") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> half(40.0, 200.0);
  std::uniform_real_distribution<double> height(50.0, 900.0);
  std::uniform_real_distribution<double> ion_h(20.0, 160.0);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const double w = half(rng);
    const CrossSection cs = trench_like(w, height(rng));
    const double hy = std::min(ion_h(rng), cs.bodies.front().y1 - 5.0);
    const Vec2 ion{0.0, hy};
    const double analytic = numerical_aperture(cs, ion, ViewDirection::Up).na;
    const double cast = raycast_na(cs, ion, ViewDirection::Up);
    CHECK(std::abs(analytic - cast) < 1e-6);
    ++checked;
  }
  CHECK(checked == 100);
}
