#pragma once

#include <string>
#include <vector>

#include "trenchfield/geometry.hpp"

namespace trenchfield {

// embedded reference values for the eight representative traps
struct ReferenceTrap {
  TrapFamily family;
  TrapParams dims;        // reference dimensions, um
  double depth_ev;
  double c2;
  double c3_prime;
  double c4_prime;
  std::string note;       // geometry-assignment caveats, if any
};

const std::vector<ReferenceTrap>& reference_table();

enum class ToleranceProfile { Paper, Strict };

struct Tolerance {
  double rel = 0.0;  // relative band; 0 = unused
  double abs = 0.0;  // absolute band; 0 = unused
  bool pass(double value, double reference) const;
  std::string describe() const;
};

Tolerance tolerance_for(const std::string& quantity, double reference_value,
                        TrapFamily family, ToleranceProfile profile);

struct RegressCell {
  std::string quantity;
  double value = 0.0;
  double reference = 0.0;
  Tolerance tolerance;
  bool pass = false;
  std::string attribution;  // filled for failures: mesh study + assignment notes
};

struct RegressRow {
  TrapFamily family;
  std::vector<RegressCell> cells;
  std::string status = "ok";
  bool all_pass() const;
};

struct RegressReport {
  std::vector<RegressRow> rows;
  bool all_pass() const;
  std::string to_text() const;
};

// runs all eight representative traps and compares against the reference
RegressReport regress_table1(ToleranceProfile profile = ToleranceProfile::Paper,
                             int jobs = 1, bool attribute_failures = true);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

// (i) coaxial analytic check, (ii) BEM vs gapless SET across a/b ratios,
// (iii) mesh-refinement convergence, (iv) ground-plane extent doubling
ValidationReport validate_solver();

}  // namespace trenchfield
