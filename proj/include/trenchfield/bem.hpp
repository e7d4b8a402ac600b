#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <string>

#include "trenchfield/field.hpp"
#include "trenchfield/mesh.hpp"

namespace trenchfield {

using VoltageMap = std::map<std::string, double>;

struct SolverOptions {
  std::size_t max_panels = 20000;
  double rcond_floor = 1e-14;  // below this the matrix is reported singular
  int threads = 0;             // 0 = hardware concurrency
};

// Per-electrode unit-voltage charge solutions of the first-kind boundary
// integral equation with the 2D logarithmic kernel, piecewise-constant
// densities, midpoint collocation.
class BemSolution {
 public:
  BemSolution(PanelMesh mesh, Eigen::MatrixXd basis_charges, double rcond);

  const PanelMesh& mesh() const { return mesh_; }
  double rcond() const { return rcond_; }
  std::size_t electrode_count() const { return mesh_.electrode_ids.size(); }

  // charge densities for electrode e at 1 V, others grounded
  Eigen::VectorXd basis_charges(const std::string& electrode_id) const;
  Eigen::VectorXd combine(const VoltageMap& voltages) const;
  Eigen::VectorXd rf_unit_charges() const;  // every Rf electrode at 1 V

  // raw evaluation, no validity checks (used for boundary diagnostics)
  double potential_raw(Vec2 p, const Eigen::VectorXd& sigma) const;
  Complex field_conj_raw(Complex z, const Eigen::VectorXd& sigma) const;

  // max |potential - boundary condition| at panel midpoints (the collocation
  // tolerance contract) and at panel quarter points (a looser diagnostic of
  // the piecewise-constant discretization)
  double boundary_residual(const std::string& electrode_id) const;
  double off_collocation_residual(const std::string& electrode_id) const;

  void require_valid(Vec2 p) const;

 private:
  PanelMesh mesh_;
  Eigen::MatrixXd basis_;  // n_panels x n_electrodes
  double rcond_ = 0.0;
};

BemSolution solve_basis(const PanelMesh& mesh, const SolverOptions& options = {});

// A voltage assignment bound over a solution; cheap to copy the handle.
class BoundField : public PotentialField {
 public:
  BoundField(const BemSolution& sol, const VoltageMap& voltages);
  BoundField(const BemSolution& sol, Eigen::VectorXd sigma);

  double potential(Vec2 p) const override;
  Complex field_conj(Complex z) const override;
  Complex field_conj_deriv(Complex z) const override;
  Complex field_conj_second(Complex z) const override;
  void require_valid(Vec2 p) const override;

 private:
  const BemSolution* sol_;
  Eigen::VectorXd sigma_;
};

double potential_at(const BemSolution& sol, Vec2 p, const VoltageMap& voltages);
Vec2 field_at(const BemSolution& sol, Vec2 p, const VoltageMap& voltages);
BoundField rf_unit_field(const BemSolution& sol);

}  // namespace trenchfield
