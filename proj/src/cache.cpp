#include "trenchfield/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace trenchfield {

namespace {

constexpr char magic[4] = {'T', 'F', 'B', 'C'};
constexpr std::uint32_t cache_version = 1;

std::string key_path(const std::string& dir, std::uint64_t hash) {
  char name[32];
  std::snprintf(name, sizeof(name), "tf_%016llx.basis",
                static_cast<unsigned long long>(hash));
  return dir + "/" + name;
}

}  // namespace

BasisCache::BasisCache(std::optional<std::string> directory) {
  if (directory) {
    dir_ = *directory;
  } else if (const char* env = std::getenv("TRENCHFIELD_CACHE_DIR")) {
    dir_ = env;
  }
  if (!dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) dir_.clear();
  }
}

std::optional<BemSolution> BasisCache::load(const PanelMesh& mesh) const {
  if (dir_.empty()) return std::nullopt;
  const std::uint64_t hash = mesh.content_hash();
  std::ifstream in(key_path(dir_, hash), std::ios::binary);
  if (!in) return std::nullopt;

  char m[4];
  std::uint32_t version = 0;
  std::uint64_t stored_hash = 0, panels = 0, elecs = 0;
  double rcond = 0.0;
  in.read(m, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&stored_hash), sizeof(stored_hash));
  in.read(reinterpret_cast<char*>(&panels), sizeof(panels));
  in.read(reinterpret_cast<char*>(&elecs), sizeof(elecs));
  in.read(reinterpret_cast<char*>(&rcond), sizeof(rcond));
  if (!in || std::memcmp(m, magic, 4) != 0 || version != cache_version ||
      stored_hash != hash || panels != mesh.size() ||
      elecs != mesh.electrode_ids.size())
    return std::nullopt;

  Eigen::MatrixXd basis(static_cast<Eigen::Index>(panels),
                        static_cast<Eigen::Index>(elecs));
  in.read(reinterpret_cast<char*>(basis.data()),
          static_cast<std::streamsize>(sizeof(double) * panels * elecs));
  if (!in) return std::nullopt;
  return BemSolution(mesh, std::move(basis), rcond);
}

void BasisCache::store(const BemSolution& solution) const {
  if (dir_.empty()) return;
  const PanelMesh& mesh = solution.mesh();
  const std::uint64_t hash = mesh.content_hash();
  const std::string path = key_path(dir_, hash);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    const std::uint32_t version = cache_version;
    const std::uint64_t panels = mesh.size();
    const std::uint64_t elecs = mesh.electrode_ids.size();
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(panels),
                          static_cast<Eigen::Index>(elecs));
    for (std::size_t e = 0; e < elecs; ++e)
      basis.col(static_cast<Eigen::Index>(e)) =
          solution.basis_charges(mesh.electrode_ids[e]);
    const double rcond = solution.rcond();
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
    out.write(reinterpret_cast<const char*>(&panels), sizeof(panels));
    out.write(reinterpret_cast<const char*>(&elecs), sizeof(elecs));
    out.write(reinterpret_cast<const char*>(&rcond), sizeof(rcond));
    out.write(reinterpret_cast<const char*>(basis.data()),
              static_cast<std::streamsize>(sizeof(double) * panels * elecs));
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

BemSolution solve_basis_cached(const PanelMesh& mesh, const SolverOptions& options,
                               const BasisCache& cache) {
  if (auto hit = cache.load(mesh)) return std::move(*hit);
  BemSolution solution = solve_basis(mesh, options);
  cache.store(solution);
  return solution;
}

}  // namespace trenchfield
