#include "trenchfield/bem.hpp"

#include <Eigen/LU>
#include <cmath>
#include <functional>
#include <thread>

#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

constexpr double two_pi = 2.0 * constants::pi;

// antiderivative of ln sqrt(t^2 + eta^2); the atan form (not atan2) keeps the
// branch continuous as t crosses zero for eta of either sign
inline double kernel_F(double t, double eta) {
  const double r2 = t * t + eta * eta;
  double out = r2 > 0.0 ? 0.5 * t * std::log(r2) - t : 0.0;
  if (eta != 0.0) out += eta * std::atan(t / eta);
  return out;
}

// single-layer potential of a unit density on the panel, -1/(2 pi) integral ln|x-y|
inline double panel_potential(const Panel& panel, Vec2 x) {
  const Vec2 d = panel.b - panel.a;
  const double len = d.norm();
  const Vec2 u = d / len;
  const Vec2 rel = x - panel.a;
  const double xi = rel.dot(u);
  const double eta = -rel.x * u.y + rel.y * u.x;
  return -(kernel_F(len - xi, eta) - kernel_F(-xi, eta)) / two_pi;
}

void parallel_rows(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& work) {
  unsigned hw = threads > 0 ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  hw = std::min<unsigned>(hw, 16);
  if (hw <= 1 || n < 64) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + hw - 1) / hw;
  for (unsigned t = 0; t < hw; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

BemSolution::BemSolution(PanelMesh mesh, Eigen::MatrixXd basis_charges, double rcond)
    : mesh_(std::move(mesh)), basis_(std::move(basis_charges)), rcond_(rcond) {}

Eigen::VectorXd BemSolution::basis_charges(const std::string& electrode_id) const {
  return basis_.col(mesh_.electrode_index(electrode_id));
}

Eigen::VectorXd BemSolution::combine(const VoltageMap& voltages) const {
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh_.size()));
  for (const auto& [id, volts] : voltages)
    sigma += volts * basis_.col(mesh_.electrode_index(id));
  return sigma;
}

Eigen::VectorXd BemSolution::rf_unit_charges() const {
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh_.size()));
  for (std::size_t e = 0; e < mesh_.electrode_ids.size(); ++e)
    if (mesh_.electrode_roles[e] == ElectrodeRole::Rf)
      sigma += basis_.col(static_cast<Eigen::Index>(e));
  return sigma;
}

double BemSolution::potential_raw(Vec2 p, const Eigen::VectorXd& sigma) const {
  double phi = 0.0;
  for (std::size_t j = 0; j < mesh_.size(); ++j)
    phi += sigma[static_cast<Eigen::Index>(j)] * panel_potential(mesh_.panels[j], p);
  return phi;
}

Complex BemSolution::field_conj_raw(Complex z, const Eigen::VectorXd& sigma) const {
  Complex f = 0.0;
  for (std::size_t j = 0; j < mesh_.size(); ++j) {
    const Panel& panel = mesh_.panels[j];
    const Complex a = panel.a.as_complex();
    const Complex b = panel.b.as_complex();
    const Complex u_conj = std::conj((b - a) / panel.length());
    f += sigma[static_cast<Eigen::Index>(j)] / two_pi * u_conj * std::log((z - a) / (z - b));
  }
  return f;
}

double BemSolution::boundary_residual(const std::string& electrode_id) const {
  const std::uint32_t target = mesh_.electrode_index(electrode_id);
  const Eigen::VectorXd sigma = basis_.col(target);
  double worst = 0.0;
  for (const auto& panel : mesh_.panels) {
    const double bc = panel.electrode == target ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(potential_raw(panel.midpoint(), sigma) - bc));
  }
  return worst;
}

double BemSolution::off_collocation_residual(const std::string& electrode_id) const {
  const std::uint32_t target = mesh_.electrode_index(electrode_id);
  const Eigen::VectorXd sigma = basis_.col(target);
  double worst = 0.0;
  for (const auto& panel : mesh_.panels) {
    const double bc = panel.electrode == target ? 1.0 : 0.0;
    for (double s : {0.25, 0.75}) {
      const Vec2 probe = panel.a + (panel.b - panel.a) * s;
      worst = std::max(worst, std::abs(potential_raw(probe, sigma) - bc));
    }
  }
  return worst;
}

void BemSolution::require_valid(Vec2 p) const {
  if (mesh_.point_in_conductor(p))
    throw PointInsideConductor("point (" + std::to_string(p.x) + ", " +
                               std::to_string(p.y) + ") lies inside a conductor");
  for (const auto& panel : mesh_.panels) {
    const double len = panel.length();
    if (point_segment_distance(p, panel.a, panel.b) < 0.5 * len)
      throw PointTooCloseToBoundary("point (" + std::to_string(p.x) + ", " +
                                    std::to_string(p.y) +
                                    ") is closer than half a panel length to the boundary");
  }
}

BemSolution solve_basis(const PanelMesh& mesh, const SolverOptions& options) {
  const std::size_t n = mesh.size();
  if (n == 0) throw DegeneratePolyline("empty mesh");
  if (n > options.max_panels)
    throw MeshTooLarge("mesh has " + std::to_string(n) + " panels, cap is " +
                       std::to_string(options.max_panels));
  for (const auto& panel : mesh.panels)
    if (panel.length() < 1e-12) throw DegeneratePolyline("zero length panel");

  Eigen::MatrixXd A(n, n);
  parallel_rows(n, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec2 mid = mesh.panels[i].midpoint();
      for (std::size_t j = 0; j < n; ++j)
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            panel_potential(mesh.panels[j], mid);
    }
  });

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > options.rcond_floor))
    throw SingularMatrix("collocation matrix is numerically singular, rcond = " +
                         std::to_string(rcond));

  const std::size_t n_elec = mesh.electrode_ids.size();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n_elec));
  for (std::size_t i = 0; i < n; ++i)
    rhs(static_cast<Eigen::Index>(i), mesh.panels[i].electrode) = 1.0;

  Eigen::MatrixXd basis = lu.solve(rhs);
  return BemSolution(mesh, std::move(basis), rcond);
}

BoundField::BoundField(const BemSolution& sol, const VoltageMap& voltages)
    : sol_(&sol), sigma_(sol.combine(voltages)) {}

BoundField::BoundField(const BemSolution& sol, Eigen::VectorXd sigma)
    : sol_(&sol), sigma_(std::move(sigma)) {}

double BoundField::potential(Vec2 p) const { return sol_->potential_raw(p, sigma_); }

Complex BoundField::field_conj(Complex z) const { return sol_->field_conj_raw(z, sigma_); }

Complex BoundField::field_conj_deriv(Complex z) const {
  Complex f = 0.0;
  const auto& mesh = sol_->mesh();
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const Panel& panel = mesh.panels[j];
    const Complex a = panel.a.as_complex();
    const Complex b = panel.b.as_complex();
    const Complex u_conj = std::conj((b - a) / panel.length());
    f += sigma_[static_cast<Eigen::Index>(j)] / two_pi * u_conj *
         (1.0 / (z - a) - 1.0 / (z - b));
  }
  return f;
}

Complex BoundField::field_conj_second(Complex z) const {
  Complex f = 0.0;
  const auto& mesh = sol_->mesh();
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const Panel& panel = mesh.panels[j];
    const Complex a = panel.a.as_complex();
    const Complex b = panel.b.as_complex();
    const Complex u_conj = std::conj((b - a) / panel.length());
    const Complex za = z - a, zb = z - b;
    f += sigma_[static_cast<Eigen::Index>(j)] / two_pi * u_conj *
         (1.0 / (zb * zb) - 1.0 / (za * za));
  }
  return f;
}

void BoundField::require_valid(Vec2 p) const { sol_->require_valid(p); }

double potential_at(const BemSolution& sol, Vec2 p, const VoltageMap& voltages) {
  sol.require_valid(p);
  return sol.potential_raw(p, sol.combine(voltages));
}

Vec2 field_at(const BemSolution& sol, Vec2 p, const VoltageMap& voltages) {
  sol.require_valid(p);
  const Complex f = sol.field_conj_raw(p.as_complex(), sol.combine(voltages));
  return {f.real(), -f.imag()};
}

BoundField rf_unit_field(const BemSolution& sol) {
  return BoundField(sol, sol.rf_unit_charges());
}

}  // namespace trenchfield
