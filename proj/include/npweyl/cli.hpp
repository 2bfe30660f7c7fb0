#pragma once

#include "npweyl/invariants.hpp"
#include "npweyl/mesh.hpp"
#include "npweyl/mobius.hpp"
#include "npweyl/spectrum.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace npweyl::cli {

struct RunConfig {
  std::string shape = "sphere";  // sphere | ellipsoid | torus | clifford | mesh | mesh:<path>
  double rho = 1.0;
  double a = 1.0, b = 1.0, c = 1.0;
  double R = 2.0, r = 1.0;
  int n_s = 0, n_t = 0;  // 0 selects the per-command default
  std::optional<FitWindow> window;
  std::string mesh_path;
  std::filesystem::path out_dir = ".";
  std::vector<std::string> mobius;  // primitive specs, or "random"
  std::uint64_t seed = 0;
  int count = 0;  // sphere-exact
  bool signed_densities = false;
  bool per_node_density = false;
  bool export_matrix = false;
};

/// Throws ConfigError for resolutions below 4, non-positive shape
/// parameters, R <= r, or an unknown shape.
void validate(const RunConfig& config);

/// "64x128" -> (64, 128); "16:200" -> window.
std::pair<int, int> parse_resolution(const std::string& text);
FitWindow parse_window(const std::string& text);

struct Surface {
  SurfaceQuadrature quad;
  std::optional<SurfaceChart> chart;
  std::optional<TriangleMesh> mesh;
};

/// Builds the configured shape at (n_s, n_t) (or the mesh), without any Mobius map.
Surface build_surface(const RunConfig& config, int default_ns, int default_nt);
/// Resolves the --mobius specs into one composition ("random" uses the seed).
MobiusMap resolve_mobius(const RunConfig& config, const Surface& surface);
/// Applies a map and rebuilds the quadrature from the transformed chart/mesh.
Surface transform_surface(const Surface& surface, const MobiusMap& map, const RunConfig& config, int default_ns,
                          int default_nt);

GeometryReport cmd_geometry(const RunConfig& config, std::ostream& out);
WeylFit cmd_spectrum(const RunConfig& config, std::ostream& out);
std::vector<double> cmd_sphere_exact(const RunConfig& config, std::ostream& out);

struct MobiusComparison {
  GeometryReport before, after;
  double delta_willmore = 0.0;
  double delta_constant = 0.0;
  double delta_area = 0.0;
};
MobiusComparison cmd_mobius(const RunConfig& config, std::ostream& out);

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 1 configuration, 2 geometry, 3 numerics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace npweyl::cli
