#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trenchfield/errors.hpp"
#include "trenchfield/multipole.hpp"

using namespace trenchfield;

namespace {

// potential assembled from prescribed harmonics around a given center
class SyntheticHarmonics : public PotentialField {
 public:
  struct Term {
    int n;
    double amplitude;
    double phase;
  };

  SyntheticHarmonics(Vec2 center, double r0, std::vector<Term> terms, double offset = 0.0)
      : center_(center), r0_(r0), terms_(std::move(terms)), offset_(offset) {}

  double potential(Vec2 p) const override {
    const double dx = p.x - center_.x, dy = p.y - center_.y;
    const double r = std::hypot(dx, dy), theta = std::atan2(dy, dx);
    double v = offset_;
    for (const auto& t : terms_)
      v += t.amplitude * std::pow(r / r0_, t.n) * std::cos(t.n * theta + t.phase);
    return v;
  }
  Complex field_conj(Complex z) const override {
    // -2 d/dz of sum Re[c_n ((z-z0)/r0)^n], c_n = A e^{i phase}
    Complex f = 0.0;
    const Complex w = (z - center_.as_complex()) / r0_;
    for (const auto& t : terms_) {
      const Complex c = std::polar(t.amplitude, t.phase);
      f -= c * static_cast<double>(t.n) * std::pow(w, t.n - 1) / r0_;
    }
    return f;
  }

 private:
  Vec2 center_;
  double r0_;
  std::vector<Term> terms_;
  double offset_;
};

}  // namespace

TEST_CASE("pure quadrupole: C2 = 1 and nothing else") {
  const SyntheticHarmonics field({0, 0}, 75.0, {{2, 1.0, 0.0}});
  const MultipoleFit fit = fit_multipoles(field, {0, 0}, 75.0);
  CHECK(fit.C(2) == doctest::Approx(1.0).epsilon(1e-10));
  for (int n : {1, 3, 4, 5, 6}) CHECK(std::abs(fit.C(n)) < 1e-10);
  CHECK(std::abs(fit.v_off) < 1e-10);
  CHECK(fit.residual < 1e-10);
}

TEST_CASE("mixed harmonics reproduce the constructed coefficients") {
  const SyntheticHarmonics field({0, 0}, 75.0, {{2, 0.5, 0.0}, {3, 0.1, 0.0}});
  const MultipoleFit fit = fit_multipoles(field, {0, 0}, 75.0);
  const DerivedRatios r = derived_ratios(fit);
  CHECK(r.c2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fit.C(3) == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(r.c3_prime == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("gauge invariance: a constant shifts only V_off") {
  const SyntheticHarmonics base({0, 0}, 75.0, {{2, 0.4, 0.3}, {4, 0.05, 0.1}});
  const SyntheticHarmonics shifted({0, 0}, 75.0, {{2, 0.4, 0.3}, {4, 0.05, 0.1}}, 2.5);
  const MultipoleFit f0 = fit_multipoles(base, {0, 0}, 75.0);
  const MultipoleFit f1 = fit_multipoles(shifted, {0, 0}, 75.0);
  CHECK(f1.v_off - f0.v_off == doctest::Approx(2.5).epsilon(1e-10));
  for (int n = 1; n <= 6; ++n)
    CHECK(f1.C(n) == doctest::Approx(f0.C(n)).epsilon(1e-9));
}

TEST_CASE("rotation covariance: phases shift by -n delta, amplitudes fixed") {
  const double delta = 0.37;
  std::vector<SyntheticHarmonics::Term> terms{{2, 0.5, 1.1}, {3, 0.2, 0.4}, {4, 0.1, 2.0}};
  const SyntheticHarmonics field({0, 0}, 75.0, terms);
  // rotating all sample points by delta is the same as fitting the rotated
  // potential; realize it by rotating the term phases
  std::vector<SyntheticHarmonics::Term> rotated_terms;
  for (auto t : terms) {
    t.phase += t.n * delta;  // V(r, theta + delta)
    rotated_terms.push_back(t);
  }
  const SyntheticHarmonics rotated({0, 0}, 75.0, rotated_terms);

  const MultipoleFit f0 = fit_multipoles(field, {0, 0}, 75.0);
  const MultipoleFit f1 = fit_multipoles(rotated, {0, 0}, 75.0);
  for (int n = 2; n <= 4; ++n) {
    CHECK(f1.C(n) == doctest::Approx(f0.C(n)).epsilon(1e-8));
    const double period = 2 * 3.14159265358979323846 / n;
    double diff = std::fmod(f1.phi[static_cast<std::size_t>(n)] -
                                f0.phi[static_cast<std::size_t>(n)] - n * delta,
                            period);
    if (diff < -period / 2) diff += period;
    if (diff > period / 2) diff -= period;
    CHECK(std::abs(diff) < 1e-8);
  }
}

TEST_CASE("radius robustness for a band-limited potential") {
  const SyntheticHarmonics field({0, 0}, 75.0, {{2, 0.4, 0.0}, {3, 0.2, 0.0}, {4, 0.1, 0.0}});
  MultipoleOptions base;
  const MultipoleFit f0 = fit_multipoles(field, {0, 0}, 75.0, base);
  for (double factor : {0.75, 1.25}) {
    MultipoleOptions opts;
    opts.fit_radius_factor = base.fit_radius_factor * factor;
    const MultipoleFit f = fit_multipoles(field, {0, 0}, 75.0, opts);
    CHECK(std::abs(f.C(2) - f0.C(2)) / f0.C(2) < 0.005);
    CHECK(std::abs(f.C(3) / f.C(2) - f0.C(3) / f0.C(2)) / (f0.C(3) / f0.C(2)) < 0.02);
    CHECK(std::abs(f.C(4) / f.C(2) - f0.C(4) / f0.C(2)) / (f0.C(4) / f0.C(2)) < 0.02);
  }
}

TEST_CASE("off-center fit flags the residual dipole") {
  const SyntheticHarmonics field({0, 0}, 75.0, {{2, 1.0, 0.0}});
  const MultipoleFit centered = fit_multipoles(field, {0, 0}, 75.0);
  CHECK_FALSE(centered.dipole_flagged);
  CHECK(centered.C(1) < 1e-3 * centered.C(2));
  const MultipoleFit offset = fit_multipoles(field, {1.0, 0.0}, 75.0);
  CHECK(offset.dipole_flagged);
}

TEST_CASE("derived ratio arithmetic and the zero-quadrupole guard") {
  MultipoleFit fit;
  fit.n_max = 6;
  fit.c = {0.0, 0.0, 0.5, 0.1, 0.05, 0.0, 0.0};
  fit.phi.assign(7, 0.0);
  const DerivedRatios r = derived_ratios(fit);
  CHECK(r.c2 == 0.5);
  CHECK(r.c3_prime == doctest::Approx(0.2));
  CHECK(r.c4_prime == doctest::Approx(0.1));

  fit.c[2] = 0.0;
  CHECK_THROWS_AS(derived_ratios(fit), ZeroQuadrupole);
}

TEST_CASE("sample budget guard") {
  const SyntheticHarmonics field({0, 0}, 75.0, {{2, 1.0, 0.0}});
  CHECK_THROWS_AS(fit_multipoles(field, {0, 0}, 75.0, 1.0, 6, 15.0, 10),
                  IllConditionedFit);
}
