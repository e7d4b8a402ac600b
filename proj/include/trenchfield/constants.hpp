#pragma once

namespace trenchfield::constants {

inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double pi = 3.14159265358979323846;

// file format / CSV schema version, stamped into machine-readable outputs
inline constexpr int schema_version = 1;

}  // namespace trenchfield::constants
