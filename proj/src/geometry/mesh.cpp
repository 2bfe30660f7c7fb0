#include "npweyl/mesh.hpp"

#include "npweyl/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace npweyl {

namespace {

MeshError parse_error(const std::string& what) { return MeshError(MeshError::Kind::Parse, what); }

// Next non-empty, non-comment line of an OFF stream.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

void check_indices(const TriangleMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& tri = mesh.faces[f];
    for (int idx : tri) {
      if (idx < 0 || idx >= nv) {
        throw parse_error("face " + std::to_string(f) + " references missing vertex " + std::to_string(idx));
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw parse_error("face " + std::to_string(f) + " repeats a vertex");
    }
  }
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

TriangleMesh read_off(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw parse_error("empty OFF file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic.rfind("OFF", 0) != 0) throw parse_error("missing OFF header");
  int nv = -1, nf = -1, ne = 0;
  // Counts may share the header line ("OFF 12 20 30").
  if (!(header >> nv >> nf)) {
    if (!next_data_line(in, line)) throw parse_error("missing OFF counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf)) throw parse_error("malformed OFF counts line");
    counts >> ne;
  }
  if (nv <= 0 || nf <= 0) throw parse_error("OFF counts must be positive");

  TriangleMesh mesh;
  mesh.vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_data_line(in, line)) throw parse_error("OFF file ends inside the vertex list");
    std::istringstream v(line);
    double x, y, z;
    if (!(v >> x >> y >> z)) throw parse_error("malformed OFF vertex " + std::to_string(i));
    mesh.vertices.emplace_back(x, y, z);
  }
  mesh.faces.reserve(nf);
  for (int i = 0; i < nf; ++i) {
    if (!next_data_line(in, line)) throw parse_error("OFF file ends inside the face list");
    std::istringstream f(line);
    int count;
    std::array<int, 3> tri{};
    if (!(f >> count)) throw parse_error("malformed OFF face " + std::to_string(i));
    if (count != 3) throw parse_error("face " + std::to_string(i) + " is not a triangle");
    if (!(f >> tri[0] >> tri[1] >> tri[2])) throw parse_error("malformed OFF face " + std::to_string(i));
    mesh.faces.push_back(tri);
  }
  check_indices(mesh);
  return mesh;
}

TriangleMesh read_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream rec(line);
    std::string tag;
    if (!(rec >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(rec >> x >> y >> z)) throw parse_error("malformed OBJ vertex on line " + std::to_string(line_no));
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> ids;
      std::string ref;
      while (rec >> ref) {
        try {
          ids.push_back(std::stoi(ref.substr(0, ref.find('/'))) - 1);
        } catch (const std::exception&) {
          throw parse_error("malformed OBJ face on line " + std::to_string(line_no));
        }
      }
      if (ids.size() != 3) throw parse_error("OBJ face on line " + std::to_string(line_no) + " is not a triangle");
      mesh.faces.push_back({ids[0], ids[1], ids[2]});
    }
  }
  if (mesh.vertices.empty() || mesh.faces.empty()) throw parse_error("OBJ file has no vertices or faces");
  check_indices(mesh);
  return mesh;
}

TriangleMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open mesh file " + path.string());
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  TriangleMesh mesh;
  if (ext == ".off") {
    mesh = read_off(in);
  } else if (ext == ".obj") {
    mesh = read_obj(in);
  } else {
    throw parse_error("unsupported mesh extension '" + ext + "' (expected .off or .obj)");
  }
  mesh.label = path.stem().string();
  return mesh;
}

void write_off(const TriangleMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

MeshTopology validate_closed_manifold(const TriangleMesh& mesh) {
  check_indices(mesh);
  const int nv = static_cast<int>(mesh.vertices.size());

  std::unordered_map<std::uint64_t, int> edge_faces;
  std::set<std::pair<int, int>> directed;
  for (const auto& tri : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      ++edge_faces[edge_key(a, b)];
    }
  }
  for (const auto& [key, count] : edge_faces) {
    const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
    const std::string name = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
    if (count == 1) {
      throw MeshError(MeshError::Kind::OpenSurface, "open surface: boundary edge " + name);
    }
    if (count > 2) {
      throw MeshError(MeshError::Kind::NonManifold, "non-manifold edge " + name + " shared by " +
                                                        std::to_string(count) + " faces");
    }
  }

  for (const auto& tri : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      if (!directed.insert({a, b}).second) {
        throw MeshError(MeshError::Kind::NonManifold,
                        "edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") is traversed twice in the same direction: mesh is not consistently oriented");
      }
    }
  }

  // Each vertex link (a -> b for every incident face (v, a, b)) must be one cycle.
  std::vector<std::map<int, int>> link(nv);
  for (const auto& tri : mesh.faces) {
    for (int k = 0; k < 3; ++k) link[tri[k]][tri[(k + 1) % 3]] = tri[(k + 2) % 3];
  }
  for (int v = 0; v < nv; ++v) {
    if (link[v].empty()) {
      throw MeshError(MeshError::Kind::NonManifold, "vertex " + std::to_string(v) + " is not used by any face");
    }
    const int start = link[v].begin()->first;
    int cur = start;
    std::size_t steps = 0;
    do {
      cur = link[v].at(cur);
      ++steps;
    } while (cur != start && steps <= link[v].size());
    if (steps != link[v].size()) {
      throw MeshError(MeshError::Kind::NonManifold,
                      "non-manifold vertex " + std::to_string(v) + ": faces around it form several fans");
    }
  }

  MeshTopology topo;
  topo.vertices = nv;
  topo.edges = static_cast<int>(edge_faces.size());
  topo.faces = static_cast<int>(mesh.faces.size());
  return topo;
}

double signed_volume(const TriangleMesh& mesh) {
  double vol = 0.0;
  for (const auto& f : mesh.faces) {
    vol += mesh.vertices[f[0]].dot(mesh.vertices[f[1]].cross(mesh.vertices[f[2]]));
  }
  return vol / 6.0;
}

TriangleMesh orient_outward(TriangleMesh mesh) {
  if (signed_volume(mesh) < 0.0) {
    for (auto& f : mesh.faces) std::swap(f[1], f[2]);
  }
  return mesh;
}

namespace {

struct QuadricFit {
  FundamentalForms forms;
  Curvatures curv;
};

// Fits z = a x^2 + b xy + c y^2 + d x + e y in the tangent frame at p and reads
// the forms of that graph at the origin.
QuadricFit fit_quadric(const Vec3& p, const Vec3& n, const std::vector<Vec3>& neighbours) {
  Vec3 e1 = (std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(n).normalized();
  const Vec3 e2 = n.cross(e1);

  double scale = 0.0;
  for (const auto& q : neighbours) scale = std::max(scale, (q - p).norm());

  const int m = static_cast<int>(neighbours.size());
  Eigen::MatrixXd A(m, 5);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const Vec3 d = (neighbours[i] - p) / scale;
    const double x = d.dot(e1), y = d.dot(e2);
    A.row(i) << x * x, x * y, y * y, x, y;
    rhs(i) = d.dot(n);
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);
  const double fxx = 2.0 * coef(0) / scale, fxy = coef(1) / scale, fyy = 2.0 * coef(2) / scale;
  const double fx = coef(3), fy = coef(4);
  const double root = std::sqrt(1.0 + fx * fx + fy * fy);

  QuadricFit fit;
  fit.forms.E = 1.0 + fx * fx;
  fit.forms.F = fx * fy;
  fit.forms.G = 1.0 + fy * fy;
  // Graph normal (-fx, -fy, 1) is the outward side; the second form uses the inward one.
  fit.forms.L = -fxx / root;
  fit.forms.M = -fxy / root;
  fit.forms.N = -fyy / root;
  fit.curv = curvatures(fit.forms);
  return fit;
}

}  // namespace

SurfaceQuadrature mesh_quadrature(const TriangleMesh& input) {
  const MeshTopology topo = validate_closed_manifold(input);
  const TriangleMesh mesh = orient_outward(input);
  const std::size_t nv = mesh.vertices.size();

  std::vector<double> weight(nv, 0.0);
  std::vector<Vec3> normal(nv, Vec3::Zero());
  std::vector<std::set<int>> ring(nv);
  for (const auto& f : mesh.faces) {
    const Vec3 face_cross = (mesh.vertices[f[1]] - mesh.vertices[f[0]]).cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
    const double area = 0.5 * face_cross.norm();
    if (!(area > 0.0)) throw MeshError(MeshError::Kind::NonManifold, "mesh contains a zero-area triangle");
    const Vec3 face_normal = face_cross.normalized();
    for (int k = 0; k < 3; ++k) {
      const int v = f[k], a = f[(k + 1) % 3], b = f[(k + 2) % 3];
      const Vec3 ea = (mesh.vertices[a] - mesh.vertices[v]).normalized();
      const Vec3 eb = (mesh.vertices[b] - mesh.vertices[v]).normalized();
      const double angle = std::acos(std::clamp(ea.dot(eb), -1.0, 1.0));
      normal[v] += angle * face_normal;
      weight[v] += area / 3.0;
      ring[v].insert(a);
      ring[v].insert(b);
    }
  }

  std::vector<double> edge_lengths;
  for (std::size_t v = 0; v < nv; ++v)
    for (int a : ring[v])
      if (a > static_cast<int>(v)) edge_lengths.push_back((mesh.vertices[a] - mesh.vertices[v]).norm());
  std::nth_element(edge_lengths.begin(), edge_lengths.begin() + edge_lengths.size() / 2, edge_lengths.end());
  const double median_edge = edge_lengths[edge_lengths.size() / 2];
  constexpr int kMaxRings = 6;

  SurfaceQuadrature quad;
  quad.label = mesh.label.empty() ? "mesh" : mesh.label;
  quad.euler_characteristic = topo.euler_characteristic();
  quad.nodes.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    // Two-ring, grown where marching-cubes style slivers leave it too small
    // to pin down a quadric.
    std::set<int> patch = ring[v];
    std::vector<int> frontier(ring[v].begin(), ring[v].end());
    for (int level = 1; level < kMaxRings && !frontier.empty(); ++level) {
      if (level >= 2) {
        double radius = 0.0;
        for (int a : patch) radius = std::max(radius, (mesh.vertices[a] - mesh.vertices[v]).norm());
        if (patch.size() >= 12 && radius >= 0.5 * median_edge) break;
      }
      std::vector<int> next;
      for (int a : frontier)
        for (int b : ring[a])
          if (patch.insert(b).second) next.push_back(b);
      frontier = std::move(next);
    }
    patch.erase(static_cast<int>(v));
    std::vector<Vec3> pts;
    for (int a : patch) pts.push_back(mesh.vertices[a]);

    SurfaceNode node;
    node.x = mesh.vertices[v];
    node.n = normal[v].normalized();
    node.w = weight[v];
    const QuadricFit fit = fit_quadric(node.x, node.n, pts);
    node.forms = fit.forms;
    node.H = fit.curv.H;
    node.K = fit.curv.K;
    quad.nodes.push_back(node);
  }
  return quad;
}

SurfaceQuadrature load_mesh(const std::filesystem::path& path) { return mesh_quadrature(read_mesh(path)); }

TriangleMesh periodic_grid_mesh(const SurfaceChart& chart, int n_s, int n_t) {
  if (!chart.periodic_s || !chart.periodic_t) {
    throw ConfigError("periodic_grid_mesh needs a chart periodic in both directions");
  }
  TriangleMesh mesh;
  mesh.label = chart.name + "_mesh";
  const auto& d = chart.domain;
  for (int i = 0; i < n_s; ++i)
    for (int j = 0; j < n_t; ++j)
      mesh.vertices.push_back(chart.position(d.s0 + d.s_span() * i / n_s, d.t0 + d.t_span() * j / n_t));
  auto id = [&](int i, int j) { return ((i + n_s) % n_s) * n_t + (j + n_t) % n_t; };
  for (int i = 0; i < n_s; ++i) {
    for (int j = 0; j < n_t; ++j) {
      mesh.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return orient_outward(std::move(mesh));
}

}  // namespace npweyl
