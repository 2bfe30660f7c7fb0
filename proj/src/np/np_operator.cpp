#include "npweyl/np_operator.hpp"

#include "npweyl/error.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace npweyl {

namespace {
constexpr double kInvFourPi = 1.0 / (4.0 * std::numbers::pi);
}

double np_kernel(const Vec3& x, const Vec3& y, const Vec3& n_y) {
  const Vec3 d = y - x;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw NumericsError("np_kernel evaluated at coincident points");
  return kInvFourPi * d.dot(n_y) / (r2 * std::sqrt(r2));
}

NpMatrix::NpMatrix(RowMatrix entries, Eigen::VectorXd weights, std::string source_label)
    : entries_(std::move(entries)), weights_(std::move(weights)), label_(std::move(source_label)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() != weights_.size()) {
    throw NumericsError("NpMatrix dimensions do not match the weight vector");
  }
  if (!entries_.allFinite()) throw NumericsError("NpMatrix has non-finite entries");
}

NpMatrix assemble(const SurfaceQuadrature& quad) {
  const auto n = static_cast<Eigen::Index>(quad.size());
  if (n == 0) throw GeometryError("cannot assemble an empty quadrature");
  const auto& nodes = quad.nodes;
  const double threshold = 1e-12 * quad.diameter();

  RowMatrix a(n, n);
  Eigen::VectorXd w(n);
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  std::vector<Eigen::Index> row_arg(n, -1);

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& x = nodes[i].x;
    double off_diagonal = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec3 d = nodes[j].x - x;
      const double r2 = d.squaredNorm();
      const double r = std::sqrt(r2);
      if (r < row_min[i]) {
        row_min[i] = r;
        row_arg[i] = j;
      }
      const double value = r2 > 0.0 ? kInvFourPi * d.dot(nodes[j].n) / (r2 * r) * nodes[j].w : 0.0;
      a(i, j) = value;
      off_diagonal += value;
    }
    a(i, i) = 0.5 - off_diagonal;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    if (row_arg[i] >= 0 && !(row_min[i] > threshold)) {
      std::ostringstream msg;
      msg << "nodes " << i << " and " << row_arg[i] << " of '" << quad.label << "' are " << row_min[i]
          << " apart (threshold " << threshold << ")";
      throw GeometryError(msg.str());
    }
    w(i) = nodes[i].w;
  }
  return NpMatrix(std::move(a), std::move(w), quad.label);
}

Eigen::VectorXd apply(const NpMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& density) {
  if (density.size() != m.size()) {
    throw NumericsError("density has length " + std::to_string(density.size()) + ", matrix has " +
                        std::to_string(m.size()) + " rows");
  }
  return m.entries() * density;
}

RowMatrix symmetrize(const NpMatrix& m) {
  const Eigen::VectorXd& w = m.weights();
  if (!(w.minCoeff() > 0.0)) throw NumericsError("symmetrize needs strictly positive weights");
  const Eigen::VectorXd root = w.cwiseSqrt();
  return root.asDiagonal() * m.entries() * root.cwiseInverse().asDiagonal();
}

void export_matrix(const NpMatrix& m, const std::filesystem::path& bin_path) {
  static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");
  {
    std::ofstream out(bin_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + bin_path.string());
    out.write(reinterpret_cast<const char*>(m.entries().data()),
              static_cast<std::streamsize>(sizeof(double) * m.entries().size()));
  }
  std::filesystem::path sidecar = bin_path;
  sidecar.replace_extension(".json");
  std::ofstream meta(sidecar);
  meta << nlohmann::json{{"n", m.size()}, {"label", m.source_label()}}.dump(2) << '\n';
}

RowMatrix read_matrix_binary(const std::filesystem::path& bin_path) {
  std::filesystem::path sidecar = bin_path;
  sidecar.replace_extension(".json");
  std::ifstream meta(sidecar);
  if (!meta) throw ConfigError("missing sidecar " + sidecar.string());
  const auto n = nlohmann::json::parse(meta).at("n").get<Eigen::Index>();
  RowMatrix a(n, n);
  std::ifstream in(bin_path, std::ios::binary);
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(sizeof(double) * a.size()));
  if (!in) throw ConfigError("truncated matrix file " + bin_path.string());
  return a;
}

void write_vector_csv(const Eigen::Ref<const Eigen::VectorXd>& values, const std::string& header, std::ostream& out) {
  out << header << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values(i));
    out << buf << '\n';
  }
}

}  // namespace npweyl
