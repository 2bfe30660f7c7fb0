#pragma once

#include "npweyl/np_operator.hpp"

#include <complex>
#include <vector>

namespace npweyl::detail {

/// All eigenvalues of a general dense matrix (LAPACK dgeev, no vectors),
/// in the order LAPACK returns them.
std::vector<std::complex<double>> general_eigenvalues(const RowMatrix& a);

/// Singular values in descending order (LAPACK dgesdd, no vectors).
std::vector<double> singular_values(const RowMatrix& a);

}  // namespace npweyl::detail
