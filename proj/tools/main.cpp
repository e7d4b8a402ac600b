#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "svg_plot.hpp"
#include "trenchfield/constants.hpp"
#include "trenchfield/errors.hpp"
#include "trenchfield/reference.hpp"
#include "trenchfield/report.hpp"
#include "trenchfield/sweep.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_regression = 3;

namespace fs = std::filesystem;
using namespace trenchfield;

void write_file(const fs::path& path, const std::string& content) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

void emit_sweep_plots(const fs::path& dir, const SweepSpec& spec,
                      const std::vector<SweepRow>& rows) {
  const auto series = [&](auto getter, const char* label) {
    plot::Series s;
    s.label = label;
    for (const auto& row : rows) {
      if (row.status != "ok") continue;
      s.x.push_back(row.w);
      s.y.push_back(getter(row.report));
    }
    return s;
  };
  const std::string base = family_name(spec.family);
  plot::write_svg((dir / "sweep_depth.svg").string(), base + ": trap depth",
                  "w (um)", "depth (eV)",
                  {series([](const TrapReport& r) { return r.depth_ev; }, "depth")});
  plot::write_svg((dir / "sweep_multipoles.svg").string(), base + ": multipoles",
                  "w (um)", "coefficient",
                  {series([](const TrapReport& r) { return r.c2; }, "C2"),
                   series([](const TrapReport& r) { return r.c3_prime; }, "C3'"),
                   series([](const TrapReport& r) { return r.c4_prime; }, "C4'")});
  plot::write_svg((dir / "sweep_na.svg").string(), base + ": numerical aperture",
                  "w (um)", "NA",
                  {series([](const TrapReport& r) { return r.na_above.na; }, "above"),
                   series([](const TrapReport& r) { return r.na_below.na; }, "below")});
}

std::string mesh_csv(const PanelMesh& mesh) {
  std::ostringstream out;
  out << "# trenchfield mesh, schema " << constants::schema_version << "\n";
  out << "x0_um,y0_um,x1_um,y1_um,electrode_id,role\n";
  for (const auto& panel : mesh.panels) {
    out << panel.a.x << ',' << panel.a.y << ',' << panel.b.x << ',' << panel.b.y << ','
        << mesh.electrode_ids[panel.electrode] << ','
        << role_name(mesh.electrode_roles[panel.electrode]) << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trenchfield: RF ion-trap cross-section simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", format = "report-doc", profile = "paper";
  int jobs = 1;
  bool plots = false;

  auto* analyze = app.add_subcommand("analyze", "analyze a single trap config");
  analyze->add_option("--config", config_path, "config file")->required();
  analyze->add_option("--out", out_dir, "output directory");
  analyze->add_option("--format", format, "csv or report-doc")
      ->check(CLI::IsMember({"csv", "report-doc"}));

  auto* sweep = app.add_subcommand("sweep", "run the [sweep] section of a config");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--jobs", jobs, "parallel rows");
  sweep->add_flag("--plot", plots, "emit static SVG panels");

  auto* regress = app.add_subcommand("regress-table1",
                                     "regression against the embedded reference table");
  regress->add_option("--jobs", jobs, "parallel traps");
  regress->add_option("--tolerance-profile", profile, "paper or strict")
      ->check(CLI::IsMember({"paper", "strict"}));
  regress->add_option("--out", out_dir, "output directory");

  auto* validate =
      app.add_subcommand("validate", "solver self-checks vs analytic oracles");
  validate->add_option("--out", out_dir, "output directory");

  auto* mesh_dump = app.add_subcommand("mesh-dump", "write the panel mesh as CSV");
  mesh_dump->add_option("--config", config_path, "config file")->required();
  mesh_dump->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      RunConfig config;
      try {
        config = load_config_file(config_path);
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
      }
      const TrapReport report = analyze_trap(config);
      std::cout << report.to_text();
      if (format == "report-doc") {
        write_file(fs::path(out_dir) / "report.txt", report.to_report_doc());
      } else {
        SweepSpec spec;
        spec.family = config.family;
        spec.swept = "none";
        SweepRow row;
        row.w = 0.0;
        row.report = report;
        row.status = "ok";
        write_file(fs::path(out_dir) / "report.csv", sweep_csv(spec, {row}));
      }
      return exit_ok;
    }

    if (*sweep) {
      RunConfig config;
      SweepSpec spec;
      try {
        config = load_config_file(config_path);
        spec = sweep_from_config(config);
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
      }
      const auto rows = run_sweep(spec, jobs);
      const std::string csv = sweep_csv(spec, rows);
      write_file(fs::path(out_dir) / "sweep.csv", csv);
      std::cout << csv;
      if (plots) emit_sweep_plots(out_dir, spec, rows);
      for (const auto& row : rows)
        if (row.status != "ok") {
          std::cerr << "sweep finished with per-row failures\n";
          return exit_numerical;
        }
      return exit_ok;
    }

    if (*regress) {
      const auto prof =
          profile == "strict" ? ToleranceProfile::Strict : ToleranceProfile::Paper;
      const RegressReport report = regress_table1(prof, jobs);
      std::cout << report.to_text();
      write_file(fs::path(out_dir) / "regress_table1.txt", report.to_text());
      return report.all_pass() ? exit_ok : exit_regression;
    }

    if (*validate) {
      const ValidationReport report = validate_solver();
      std::cout << report.to_text();
      write_file(fs::path(out_dir) / "validate.txt", report.to_text());
      return report.all_pass() ? exit_ok : exit_regression;
    }

    if (*mesh_dump) {
      RunConfig config;
      try {
        config = load_config_file(config_path);
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
      }
      const TrapParams params = complete_params(config.family, config.params);
      const CrossSection cs =
          build_cross_section(config.family, params, config.geometry);
      const PanelMesh mesh = mesh_panels(cs, config.mesh);
      write_file(fs::path(out_dir) / "mesh.csv", mesh_csv(mesh));
      std::cout << "wrote " << mesh.size() << " panels\n";
      return exit_ok;
    }
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_usage;
  } catch (const MissingRequiredKey& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnknownParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}
