#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "trenchfield/analytic_set.hpp"
#include "trenchfield/config.hpp"
#include "trenchfield/errors.hpp"
#include "trenchfield/multipole.hpp"
#include "trenchfield/optics.hpp"
#include "trenchfield/reference.hpp"
#include "trenchfield/report.hpp"
#include "trenchfield/sweep.hpp"

namespace py = pybind11;
using namespace trenchfield;

namespace {

using Point = std::pair<double, double>;

Vec2 to_vec(const Point& p) { return {p.first, p.second}; }
Point from_vec(Vec2 v) { return {v.x, v.y}; }

RunConfig make_config(const std::string& family, const TrapParams& params,
                      double separation_um, bool calibrate, double rf_voltage,
                      double rf_mhz, double target_mhz, double mass_amu, int charge,
                      double l_max) {
  RunConfig config;
  config.family = family_from_name(family);
  config.params = params;
  config.separation.target_um = separation_um;
  config.geometry.separation_nominal = separation_um;
  if (!calibrate) config.fixed_rf_voltage = rf_voltage;
  config.drive.rf_frequency_mhz = rf_mhz;
  config.target_secular_mhz = target_mhz;
  config.ion.mass_amu = mass_amu;
  config.ion.charge = charge;
  config.mesh.l_max = l_max;
  return config;
}

py::dict report_to_dict(const TrapReport& r) {
  py::dict out;
  out["family"] = family_name(r.family);
  out["params"] = r.params;
  out["depth_ev"] = r.depth_ev;
  out["depth_bounded"] = r.depth_bounded;
  out["c2"] = r.c2;
  out["c3_prime"] = r.c3_prime;
  out["c4_prime"] = r.c4_prime;
  out["na_above"] = r.na_above.na;
  out["na_below"] = r.na_below.na;
  out["na_above_edge"] = r.na_above.limiting_edge;
  out["na_below_edge"] = r.na_below.limiting_edge;
  out["ion_position"] = from_vec(r.ion_position);
  out["escape_point"] = from_vec(r.escape_point);
  out["rf_voltage"] = r.rf_voltage;
  out["secular_lower_mhz"] = r.secular_lower_mhz;
  out["secular_upper_mhz"] = r.secular_upper_mhz;
  out["separation_um"] = r.diagnostics.separation_um;
  out["q_parameter"] = r.diagnostics.q_parameter;
  out["panel_count"] = r.diagnostics.panel_count;
  out["fit_residual"] = r.diagnostics.fit_residual;
  out["notes"] = r.diagnostics.notes;
  return out;
}

}  // namespace

PYBIND11_MODULE(_trenchfield, m) {
  m.doc() = "RF ion-trap cross-section simulator (BEM electrostatics, "
            "pseudopotential analysis, multipole fits)";

  py::register_exception<Error>(m, "TrenchfieldError");

  py::class_<CrossSection>(m, "CrossSection")
      .def_property_readonly("gap", [](const CrossSection& cs) { return cs.gap; })
      .def_property_readonly("extent", [](const CrossSection& cs) { return cs.extent; })
      .def("electrodes",
           [](const CrossSection& cs) {
             py::list out;
             for (const auto& seg : cs.segments) {
               py::dict d;
               d["electrode_id"] = seg.electrode_id;
               d["role"] = role_name(seg.role);
               std::vector<Point> pts;
               for (const auto& p : seg.polyline) pts.push_back(from_vec(p));
               d["polyline"] = pts;
               out.append(d);
             }
             return out;
           })
      .def("distance_to_electrodes",
           [](const CrossSection& cs, const Point& p) {
             return cs.distance_to_electrodes(to_vec(p));
           })
      .def("point_in_conductor", [](const CrossSection& cs, const Point& p) {
        return cs.point_in_conductor(to_vec(p));
      });

  py::class_<PanelMesh>(m, "PanelMesh")
      .def_property_readonly("electrode_ids",
                             [](const PanelMesh& mesh) { return mesh.electrode_ids; })
      .def("__len__", [](const PanelMesh& mesh) { return mesh.size(); })
      .def("panels",
           [](const PanelMesh& mesh) {
             std::vector<std::tuple<double, double, double, double, std::string>> out;
             out.reserve(mesh.size());
             for (const auto& p : mesh.panels)
               out.emplace_back(p.a.x, p.a.y, p.b.x, p.b.y,
                                mesh.electrode_ids[p.electrode]);
             return out;
           })
      .def("content_hash", &PanelMesh::content_hash);

  py::class_<BemSolution>(m, "BemSolution")
      .def_property_readonly("rcond", &BemSolution::rcond)
      .def("potential",
           [](const BemSolution& sol, const Point& p, const VoltageMap& volts) {
             return potential_at(sol, to_vec(p), volts);
           })
      .def("field",
           [](const BemSolution& sol, const Point& p, const VoltageMap& volts) {
             return from_vec(field_at(sol, to_vec(p), volts));
           })
      .def("rf_potential",
           [](const BemSolution& sol, const Point& p) {
             const BoundField rf = rf_unit_field(sol);
             rf.require_valid(to_vec(p));
             return rf.potential(to_vec(p));
           })
      .def("boundary_residual", &BemSolution::boundary_residual);

  m.def("build_cross_section",
        [](const std::string& family, const TrapParams& params, double gap,
           double separation_um) {
          GeometryOptions options;
          options.gap = gap;
          options.separation_nominal = separation_um;
          return build_cross_section(family_from_name(family), params, options);
        },
        py::arg("family"), py::arg("params"), py::arg("gap") = 1.0,
        py::arg("separation_um") = 75.0);

  m.def("mesh_panels",
        [](const CrossSection& cs, double l_min, double l_max, double grading) {
          MeshPolicy policy;
          policy.l_min = l_min;
          policy.l_max = l_max;
          policy.grading_fraction = grading;
          return mesh_panels(cs, policy);
        },
        py::arg("cross_section"), py::arg("l_min") = 0.25, py::arg("l_max") = 5.0,
        py::arg("grading_fraction") = 0.3);

  m.def("solve_basis", [](const PanelMesh& mesh) { return solve_basis(mesh); },
        py::arg("mesh"), py::call_guard<py::gil_scoped_release>());

  m.def("numerical_aperture",
        [](const CrossSection& cs, const Point& ion, const std::string& direction) {
          const auto dir = direction == "down" ? ViewDirection::Down : ViewDirection::Up;
          const ApertureResult result = numerical_aperture(cs, to_vec(ion), dir);
          return py::make_tuple(result.na, result.limiting_edge);
        },
        py::arg("cross_section"), py::arg("ion"), py::arg("direction") = "up");

  m.def("strip_potential",
        [](const std::vector<Point>& strips, const Point& p) {
          StripSet s;
          for (const auto& [x0, x1] : strips) s.strips.push_back({x0, x1});
          return strip_potential(s, to_vec(p));
        },
        py::arg("strips"), py::arg("point"));

  m.def("analyze",
        [](const std::string& family, const TrapParams& params, double separation_um,
           bool calibrate, double rf_voltage, double rf_mhz, double target_mhz,
           double mass_amu, int charge, double l_max) {
          const RunConfig config =
              make_config(family, params, separation_um, calibrate, rf_voltage, rf_mhz,
                          target_mhz, mass_amu, charge, l_max);
          TrapReport report;
          {
            py::gil_scoped_release release;
            report = analyze_trap(config);
          }
          return report_to_dict(report);
        },
        py::arg("family"), py::arg("params"), py::arg("separation_um") = 75.0,
        py::arg("calibrate") = true, py::arg("rf_voltage") = 1.0,
        py::arg("rf_mhz") = 40.0, py::arg("target_secular_mhz") = 4.0,
        py::arg("mass_amu") = 40.0, py::arg("charge") = 1, py::arg("l_max") = 5.0);

  m.def("analyze_config",
        [](const std::string& text) {
          const RunConfig config = parse_geometry_config(text);
          TrapReport report;
          {
            py::gil_scoped_release release;
            report = analyze_trap(config);
          }
          return report_to_dict(report);
        },
        py::arg("config_text"));

  m.def("sweep",
        [](const std::string& family, const std::string& parameter,
           const std::vector<double>& values, const TrapParams& fixed, int jobs,
           double separation_um) {
          RunConfig config;
          config.family = family_from_name(family);
          config.params = fixed;
          config.separation.target_um = separation_um;
          config.geometry.separation_nominal = separation_um;
          config.sweep = SweepSettings{parameter, values};
          const SweepSpec spec = sweep_from_config(config);
          std::vector<SweepRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(spec, jobs);
          }
          py::list out;
          for (const auto& row : rows) {
            py::dict d;
            d["w"] = row.w;
            d["status"] = row.status;
            if (row.status == "ok") d["report"] = report_to_dict(row.report);
            out.append(d);
          }
          return out;
        },
        py::arg("family"), py::arg("parameter"), py::arg("values"),
        py::arg("fixed") = TrapParams{}, py::arg("jobs") = 1,
        py::arg("separation_um") = 75.0);

  m.def("sweep_csv",
        [](const std::string& family, const std::string& parameter,
           const std::vector<double>& values, const TrapParams& fixed, int jobs) {
          RunConfig config;
          config.family = family_from_name(family);
          config.params = fixed;
          config.sweep = SweepSettings{parameter, values};
          const SweepSpec spec = sweep_from_config(config);
          py::gil_scoped_release release;
          return sweep_csv(spec, run_sweep(spec, jobs));
        },
        py::arg("family"), py::arg("parameter"), py::arg("values"),
        py::arg("fixed") = TrapParams{}, py::arg("jobs") = 1);

  m.def("regress_table1",
        [](int jobs, const std::string& profile) {
          const auto prof = profile == "strict" ? ToleranceProfile::Strict
                                                : ToleranceProfile::Paper;
          RegressReport report;
          {
            py::gil_scoped_release release;
            report = regress_table1(prof, jobs);
          }
          return py::make_tuple(report.all_pass(), report.to_text());
        },
        py::arg("jobs") = 1, py::arg("profile") = "paper");

  m.def("validate_solver", [] {
    ValidationReport report;
    {
      py::gil_scoped_release release;
      report = validate_solver();
    }
    return py::make_tuple(report.all_pass(), report.to_text());
  });

  m.def("reference_table", [] {
    py::list out;
    for (const auto& ref : reference_table()) {
      py::dict d;
      d["family"] = family_name(ref.family);
      d["dims"] = ref.dims;
      d["depth_ev"] = ref.depth_ev;
      d["c2"] = ref.c2;
      d["c3_prime"] = ref.c3_prime;
      d["c4_prime"] = ref.c4_prime;
      out.append(d);
    }
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
