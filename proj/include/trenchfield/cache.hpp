#pragma once

#include <optional>
#include <string>

#include "trenchfield/bem.hpp"

namespace trenchfield {

// Binary cache of solved basis charges keyed by the mesh content hash.
// Directory from TRENCHFIELD_CACHE_DIR (or an explicit override); misses and
// IO failures fall back to recomputation silently.
//
// File layout (little endian), version 1:
//   magic   "TFBC"            4 bytes
//   version u32
//   hash    u64               mesh content hash
//   panels  u64
//   elecs   u64
//   rcond   f64
//   data    f64 * panels * elecs   column major basis charges
class BasisCache {
 public:
  explicit BasisCache(std::optional<std::string> directory = std::nullopt);

  bool enabled() const { return !dir_.empty(); }
  std::optional<BemSolution> load(const PanelMesh& mesh) const;
  void store(const BemSolution& solution) const;

 private:
  std::string dir_;
};

// solve_basis with cache lookaside
BemSolution solve_basis_cached(const PanelMesh& mesh,
                               const SolverOptions& options = {},
                               const BasisCache& cache = BasisCache{});

}  // namespace trenchfield
