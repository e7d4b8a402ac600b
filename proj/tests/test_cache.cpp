#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "trenchfield/cache.hpp"
#include "trenchfield/geometry.hpp"

using namespace trenchfield;

namespace {

PanelMesh small_mesh() {
  const CrossSection cs =
      build_cross_section(TrapFamily::SetAntisymmetric, {{"phi", 75.0}});
  MeshPolicy policy;
  policy.l_max = 20.0;  // keep it small
  return mesh_panels(cs, policy);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tf_cache_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("cache round trip returns identical charges") {
  const TempDir dir;
  const BasisCache cache(dir.path.string());
  const PanelMesh mesh = small_mesh();

  CHECK_FALSE(cache.load(mesh).has_value());
  const BemSolution solved = solve_basis_cached(mesh, {}, cache);

  const auto hit = cache.load(mesh);
  REQUIRE(hit.has_value());
  CHECK(hit->rcond() == solved.rcond());
  for (const auto& id : mesh.electrode_ids) {
    const Eigen::VectorXd a = solved.basis_charges(id);
    const Eigen::VectorXd b = hit->basis_charges(id);
    CHECK((a - b).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("corrupted cache entries fall back to recomputation") {
  const TempDir dir;
  const BasisCache cache(dir.path.string());
  const PanelMesh mesh = small_mesh();
  solve_basis_cached(mesh, {}, cache);

  // truncate every cache file
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    std::ofstream out(entry.path(), std::ios::trunc);
    out << "garbage";
  }
  CHECK_FALSE(cache.load(mesh).has_value());
  const BemSolution again = solve_basis_cached(mesh, {}, cache);
  CHECK(again.mesh().size() == mesh.size());
}

TEST_CASE("a disabled cache is silent") {
  const BasisCache cache(std::string{});
  CHECK_FALSE(cache.enabled());
  const PanelMesh mesh = small_mesh();
  CHECK_FALSE(cache.load(mesh).has_value());
  const BemSolution solved = solve_basis_cached(mesh, {}, cache);
  CHECK(solved.mesh().size() == mesh.size());
}

TEST_CASE("different meshes hash to different keys") {
  const PanelMesh m1 = small_mesh();
  const CrossSection cs =
      build_cross_section(TrapFamily::SetAntisymmetric, {{"phi", 80.0}});
  MeshPolicy policy;
  policy.l_max = 20.0;
  const PanelMesh m2 = mesh_panels(cs, policy);
  CHECK(m1.content_hash() != m2.content_hash());
}
