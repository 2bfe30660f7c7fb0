#pragma once

#include "npweyl/chart.hpp"
#include "npweyl/quadrature.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace npweyl {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based vertex indices
  std::string label;
};

struct MeshTopology {
  int vertices = 0, edges = 0, faces = 0;
  int euler_characteristic() const { return vertices - edges + faces; }
};

/// OFF reader ("OFF" header, counts line, vertices, "3 i j k" faces).
TriangleMesh read_off(std::istream& in);
/// OBJ reader: "v x y z" and triangular "f" records with 1-based indices
/// ("f 1/2/3 ..." style references keep only the vertex index).
TriangleMesh read_obj(std::istream& in);
/// Dispatches on the extension (.off / .obj). Throws MeshError(Parse) on
/// unreadable files.
TriangleMesh read_mesh(const std::filesystem::path& path);

void write_off(const TriangleMesh& mesh, std::ostream& out);

/// Checks that the mesh is a closed, consistently oriented 2-manifold.
/// Boundary edges raise MeshError(OpenSurface); edges with more than two
/// faces, non-manifold vertices, unreferenced vertices and inconsistent
/// winding raise MeshError(NonManifold).
MeshTopology validate_closed_manifold(const TriangleMesh& mesh);

/// Enclosed volume by the divergence theorem; negative for inward winding.
double signed_volume(const TriangleMesh& mesh);

/// Flips the winding when needed so that face normals point outward.
TriangleMesh orient_outward(TriangleMesh mesh);

/// One node per vertex: one-third area lumping, angle-weighted normals,
/// H and K from a least-squares quadric fit over the two-ring, chi = V - E + F.
SurfaceQuadrature mesh_quadrature(const TriangleMesh& mesh);

/// read_mesh + mesh_quadrature.
SurfaceQuadrature load_mesh(const std::filesystem::path& path);

/// Triangulates a chart that is periodic in both directions on an n_s x n_t
/// lattice (two triangles per cell), wound outward.
TriangleMesh periodic_grid_mesh(const SurfaceChart& chart, int n_s, int n_t);

}  // namespace npweyl
