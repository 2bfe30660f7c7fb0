#pragma once

#include "npweyl/quadrature.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace npweyl {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// (1/4pi) <y - x, n_y> / |x - y|^3. Throws NumericsError for x == y.
double np_kernel(const Vec3& x, const Vec3& y, const Vec3& n_y);

/// Dense Nystrom matrix of the NP operator with the weights folded into the
/// columns. Every row sums to 1/2, so constants are an exact eigenvector.
class NpMatrix {
 public:
  NpMatrix(RowMatrix entries, Eigen::VectorXd weights, std::string source_label);

  const RowMatrix& entries() const { return entries_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const std::string& source_label() const { return label_; }
  Eigen::Index size() const { return entries_.rows(); }

 private:
  RowMatrix entries_;
  Eigen::VectorXd weights_;
  std::string label_;
};

/// A_ij = np_kernel(x_i, x_j, n_j) w_j off the diagonal, A_ii = 1/2 - sum_{j != i} A_ij.
/// Rows are filled independently (in parallel when OpenMP is available); the
/// result does not depend on the thread count. Throws GeometryError naming the
/// pair when two nodes are closer than 1e-12 diameters.
NpMatrix assemble(const SurfaceQuadrature& quad);

Eigen::VectorXd apply(const NpMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& density);

/// D^{1/2} A D^{-1/2} with D = diag(w).
RowMatrix symmetrize(const NpMatrix& m);

/// Raw little-endian float64 row-major dump plus a JSON sidecar {n, label}
/// written next to it with the extension replaced by ".json".
void export_matrix(const NpMatrix& m, const std::filesystem::path& bin_path);
RowMatrix read_matrix_binary(const std::filesystem::path& bin_path);

/// One value per line under a single header line.
void write_vector_csv(const Eigen::Ref<const Eigen::VectorXd>& values, const std::string& header, std::ostream& out);

}  // namespace npweyl
