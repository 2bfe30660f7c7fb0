#include "npweyl/dense_eigen.hpp"

#include "npweyl/error.hpp"

#include <lapacke.h>

namespace npweyl::detail {

std::vector<std::complex<double>> general_eigenvalues(const RowMatrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  // The row-major buffer read as column-major is the transpose, which has the
  // same eigenvalues; this avoids LAPACKE's layout copy.
  RowMatrix work = a;
  std::vector<double> wr(n), wi(n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(), wi.data(),
                                        nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw NumericsError("dgeev failed (info = " + std::to_string(info) +
                        (info > 0 ? "): QR iteration did not converge" : "): illegal argument"));
  }
  std::vector<std::complex<double>> out(n);
  for (lapack_int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

std::vector<double> singular_values(const RowMatrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  const auto m = static_cast<lapack_int>(a.cols());
  if (n == 0 || m == 0) return {};
  // Transposed view as in general_eigenvalues; singular values are unchanged.
  RowMatrix work = a;
  std::vector<double> s(std::min(n, m));
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw NumericsError("dgesdd failed (info = " + std::to_string(info) +
                        (info > 0 ? "): bidiagonal SVD did not converge" : "): illegal argument"));
  }
  return s;
}

}  // namespace npweyl::detail
