#include "trenchfield/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "trenchfield/cache.hpp"
#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

Vec2 locate_ion(TrapFamily family, const TrapParams& params, const RunConfig& config) {
  const CrossSection cs = build_cross_section(family, params, config.geometry);
  const PanelMesh mesh = mesh_panels(cs, config.mesh);
  const BemSolution sol = solve_basis_cached(mesh, SolverOptions{config.mesh.max_panels});
  const BoundField rf = rf_unit_field(sol);
  const PseudoField psi(rf, DriveConfig{config.drive.rf_frequency_mhz, 1.0}, config.ion);

  // same scan machinery as the analyze pipeline
  class Scan : public ScalarField {
   public:
    Scan(const PseudoField& p, const PanelMesh& m) : psi(&p), mesh(&m) {}
    double value(Vec2 q) const override { return psi->value(q); }
    Vec2 gradient(Vec2 q) const override { return psi->gradient(q); }
    Mat2 hessian(Vec2 q) const override { return psi->hessian(q); }
    bool valid(Vec2 q) const override {
      if (mesh->substrate_y && q.y < *mesh->substrate_y + 1.0) return false;
      for (const auto& body : mesh->bodies)
        if (body.contains(q, 1.0)) return false;
      return true;
    }
    const PseudoField* psi;
    const PanelMesh* mesh;
  } scan(psi, mesh);

  return find_minimum(scan, ion_seed_region(cs, config.separation.target_um));
}

}  // namespace

TrapParams scale_to_separation(TrapFamily family, const TrapParams& params,
                               const RunConfig& config, int* iterations) {
  TrapParams current = complete_params(family, params);
  const double target = config.separation.target_um;
  const double tol = config.separation.tolerance_um;

  for (int iter = 0; iter < 12; ++iter) {
    const CrossSection cs = build_cross_section(family, current, config.geometry);
    const Vec2 ion = locate_ion(family, current, config);
    double measured;
    if (config.separation.mode == SeparationMode::IonHeight) {
      if (!cs.substrate_y)
        throw Error("fixed_ion_height mode needs a substrate-backed family");
      measured = ion.y - *cs.substrate_y;
    } else {
      measured = cs.distance_to_electrodes(ion);
    }
    if (iterations) *iterations = iter + 1;
    if (std::abs(measured - target) <= tol) return current;
    const double s = target / measured;
    for (auto& [key, value] : current) value *= s;
  }
  throw Error("separation calibration did not converge within 12 iterations");
}

SweepSpec sweep_from_config(const RunConfig& config) {
  if (!config.sweep) throw MissingRequiredKey("[sweep] section");
  SweepSpec spec;
  spec.family = config.family;
  spec.swept = config.sweep->parameter;
  spec.values = config.sweep->values;
  spec.fixed = config.params;
  spec.fixed.erase(spec.swept);
  spec.base = config;
  spec.base.sweep.reset();
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
  std::vector<SweepRow> rows(spec.values.size());

  const auto run_row = [&](std::size_t index) {
    SweepRow& row = rows[index];
    row.w = spec.values[index];
    RunConfig config = spec.base;
    config.family = spec.family;
    config.params = spec.fixed;
    config.params[spec.swept] = row.w;
    try {
      row.report = analyze_trap(config);
      row.adjusted_params = row.report.params;
      row.status = "ok";
    } catch (const Error& e) {
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      row.status = "error: " + msg;
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        run_row(i);
      }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(static_cast<unsigned>(jobs),
                                          static_cast<unsigned>(rows.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# trenchfield sweep, schema " << constants::schema_version << "\n";
  out << "family,w_name,w_um,depth_eV,C2,C3p,C4p,na_above,na_below,ion_x_um,ion_y_um,"
         "rf_voltage_V,status\n";
  for (const auto& row : rows) {
    out << family_name(spec.family) << ',' << spec.swept << ',' << fmt9(row.w) << ',';
    if (row.status == "ok") {
      const TrapReport& r = row.report;
      out << fmt9(r.depth_ev) << ',' << fmt9(r.c2) << ',' << fmt9(r.c3_prime) << ','
          << fmt9(r.c4_prime) << ',' << fmt9(r.na_above.na) << ','
          << fmt9(r.na_below.na) << ',' << fmt9(r.ion_position.x) << ','
          << fmt9(r.ion_position.y) << ',' << fmt9(r.rf_voltage);
    } else {
      out << ",,,,,,,,";
    }
    out << ',' << row.status << "\n";
  }
  return out.str();
}

}  // namespace trenchfield
