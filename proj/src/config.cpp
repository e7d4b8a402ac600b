#include "trenchfield/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trenchfield/errors.hpp"

namespace trenchfield {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, int line) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("expected a number, got '" + v + "'", line);
  return x;
}

std::vector<double> parse_number_list(const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty())
      throw ParseError("empty entry in number list", line);
    out.push_back(parse_number(item, line));
  }
  if (out.empty()) throw ParseError("empty number list", line);
  return out;
}

bool is_trap_param_key(TrapFamily family, const std::string& key) {
  const auto& req = family_required_keys(family);
  const auto& opt = family_optional_keys(family);
  return std::find(req.begin(), req.end(), key) != req.end() ||
         std::find(opt.begin(), opt.end(), key) != opt.end();
}

struct SweepRange {
  std::optional<double> from, to;
  std::optional<int> steps;
};

}  // namespace

RunConfig parse_geometry_config(const std::string& text) {
  RunConfig config;
  bool family_seen = false;
  std::string section;
  std::map<std::string, std::pair<std::string, int>> trap_keys;  // deferred
  SweepSettings sweep;
  SweepRange range;
  bool sweep_seen = false;

  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t comment = s.find_first_of("#;");
    if (comment != std::string::npos) s = s.substr(0, comment);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (section != "trap" && section != "mesh" && section != "drive" &&
          section != "ion" && section != "sweep")
        throw ParseError("unknown section [" + section + "]", line);
      if (section == "sweep") sweep_seen = true;
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line, 1);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    if (value.empty()) throw ParseError("empty value for key '" + key + "'", line);
    if (section.empty())
      throw ParseError("key '" + key + "' outside any section", line);

    if (section == "trap") {
      if (key == "family") {
        try {
          config.family = family_from_name(value);
        } catch (const UnknownFamily& e) {
          throw ParseError(e.what(), line);
        }
        family_seen = true;
      } else if (key == "gap") {
        config.geometry.gap = parse_number(value, line);
      } else if (key == "extent_factor") {
        config.geometry.extent_factor = parse_number(value, line);
      } else if (key == "separation_um") {
        config.separation.target_um = parse_number(value, line);
        config.geometry.separation_nominal = config.separation.target_um;
      } else if (key == "slot_halfwidth") {
        config.geometry.wafer_slot_halfwidth = parse_number(value, line);
      } else if (key == "regime") {
        if (value == "walls")
          config.regime = StackedRegime::Walls;
        else if (value == "ground_plane")
          config.regime = StackedRegime::GroundPlane;
        else
          throw ParseError("regime must be walls or ground_plane", line);
      } else {
        trap_keys[key] = {value, line};
      }
    } else if (section == "mesh") {
      if (key == "l_min") config.mesh.l_min = parse_number(value, line);
      else if (key == "l_max") config.mesh.l_max = parse_number(value, line);
      else if (key == "grading_fraction")
        config.mesh.grading_fraction = parse_number(value, line);
      else if (key == "max_panels")
        config.mesh.max_panels = static_cast<std::size_t>(parse_number(value, line));
      else throw ParseError("unknown [mesh] key '" + key + "'", line);
    } else if (section == "drive") {
      if (key == "rf_mhz") config.drive.rf_frequency_mhz = parse_number(value, line);
      else if (key == "rf_voltage") config.fixed_rf_voltage = parse_number(value, line);
      else if (key == "target_secular_mhz")
        config.target_secular_mhz = parse_number(value, line);
      else throw ParseError("unknown [drive] key '" + key + "'", line);
    } else if (section == "ion") {
      if (key == "mass_amu") config.ion.mass_amu = parse_number(value, line);
      else if (key == "charge")
        config.ion.charge = static_cast<int>(parse_number(value, line));
      else throw ParseError("unknown [ion] key '" + key + "'", line);
    } else {  // sweep
      if (key == "parameter") sweep.parameter = value;
      else if (key == "values") sweep.values = parse_number_list(value, line);
      else if (key == "from") range.from = parse_number(value, line);
      else if (key == "to") range.to = parse_number(value, line);
      else if (key == "steps") range.steps = static_cast<int>(parse_number(value, line));
      else if (key == "mode") {
        if (value == "fixed_separation")
          config.separation.mode = SeparationMode::MinSeparation;
        else if (value == "fixed_ion_height")
          config.separation.mode = SeparationMode::IonHeight;
        else
          throw ParseError("mode must be fixed_separation or fixed_ion_height", line);
      } else if (key == "separation_um") {
        config.separation.target_um = parse_number(value, line);
        config.geometry.separation_nominal = config.separation.target_um;
      } else {
        throw ParseError("unknown [sweep] key '" + key + "'", line);
      }
    }
  }

  if (!family_seen) throw MissingRequiredKey("family");

  for (const auto& [key, entry] : trap_keys) {
    if (!is_trap_param_key(config.family, key))
      throw ParseError("unknown [trap] key '" + key + "' for family " +
                       family_name(config.family), entry.second);
    const double v = parse_number(entry.first, entry.second);
    if (!(v > 0.0))
      throw NonPositiveLength("parameter '" + key + "' must be positive (line " +
                              std::to_string(entry.second) + ")");
    config.params[key] = v;
  }

  if (config.family == TrapFamily::StackedTrenchSymmetric &&
      config.regime == StackedRegime::GroundPlane)
    throw ParseError("the symmetric stacked trench supports only regime = walls", 0);

  if (sweep_seen) {
    if (sweep.parameter.empty())
      throw MissingRequiredKey("[sweep] parameter");
    if (sweep.values.empty()) {
      if (!range.from || !range.to || !range.steps || *range.steps < 2)
        throw MissingRequiredKey("[sweep] values or from/to/steps");
      for (int i = 0; i < *range.steps; ++i)
        sweep.values.push_back(*range.from +
                               (*range.to - *range.from) * i / (*range.steps - 1));
    }
    if (!is_trap_param_key(config.family, sweep.parameter))
      throw UnknownParameter("sweep parameter '" + sweep.parameter +
                             "' does not belong to family " + family_name(config.family));
    if (!std::is_sorted(sweep.values.begin(), sweep.values.end()))
      throw ParseError("[sweep] values must be ascending", 0);
    config.sweep = sweep;
  }

  // sanity checks on the numeric settings
  if (!(config.geometry.gap > 0)) throw NonPositiveLength("gap must be positive");
  if (!(config.mesh.l_min > 0) || !(config.mesh.l_max >= config.mesh.l_min))
    throw ParseError("mesh lengths must satisfy 0 < l_min <= l_max", 0);
  if (!(config.drive.rf_frequency_mhz > 0))
    throw NonPositiveLength("rf_mhz must be positive");
  if (!(config.ion.mass_amu > 0)) throw NonPositiveLength("mass_amu must be positive");
  if (config.ion.charge < 1) throw NonPositiveLength("charge must be a positive integer");
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_geometry_config(buffer.str());
}

}  // namespace trenchfield
