#pragma once

#include "npweyl/np_operator.hpp"

#include <json.hpp>

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace npweyl {

/// Eigenvalues ordered by descending modulus (ties: descending real part,
/// then descending imaginary part), 0-based so that eigenvalues[0] = 1/2 for
/// an assembled NP matrix.
struct SpectrumResult {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> singular_values;  // descending
  double max_imag_residual = 0.0;
  std::size_t n = 0;
};

/// Orders raw eigenvalues per the SpectrumResult contract.
void order_by_modulus(std::vector<std::complex<double>>& values);

/// Wraps raw eigensolver output and singular values into an ordered result.
SpectrumResult make_spectrum(std::vector<std::complex<double>> raw, std::vector<double> singular);

/// Full non-symmetric eigensolve of the matrix plus the SVD of its
/// symmetrized form. Deterministic for identical input.
SpectrumResult eigenvalues(const NpMatrix& m);

/// First `count` values of {1/(2(2k+1)) with multiplicity 2k+1, k >= 0}, descending.
std::vector<double> exact_sphere_spectrum(int count);

struct FitWindow {
  int j_min = 16;
  int j_max = 0;
};

/// j_min = 16, j_max = min(floor(n^{2/3}), n/8).
FitWindow default_window(std::size_t n);

struct WeylFit {
  double fitted_constant = 0.0;  // median of |lambda_j| sqrt(j) over the window
  FitWindow window;
  double slope = 0.0;  // least-squares slope of log|lambda_j| against log j
  double predicted_constant = 0.0;
  double relative_deviation = 0.0;
  std::vector<double> scaled;  // |lambda_j| sqrt(j) for the kept j
  int excluded = 0;            // non-positive entries skipped inside the window
};

/// Fits on |lambda_j| of an ordered spectrum.
WeylFit weyl_fit(const SpectrumResult& spectrum, FitWindow window, double predicted);
/// Fits on a plain 0-based value list; non-positive values are excluded and counted.
WeylFit weyl_fit(std::span<const double> values, FitWindow window, double predicted);

struct SignedFit {
  double c_plus = 0.0;
  double c_minus = 0.0;
};

/// Splits real parts by sign, enumerates each branch from j = 1 by decreasing
/// magnitude, and applies the weyl_fit estimator to each. For a
/// SpectrumResult the leading eigenvalue 1/2 (constant mode) is left out of
/// the positive branch. A branch with no entries in the window reports 0.
SignedFit signed_split_fit(const SpectrumResult& spectrum, FitWindow window);
SignedFit signed_split_fit(std::span<const double> values, FitWindow window);

struct PlasmonicEntry {
  std::size_t j = 0;
  bool is_pole = false;    // lambda = 1/2
  double deviation = 0.0;  // |eps - 1| = |-2 lambda / (lambda - 1/2)|
  double epsilon = 0.0;    // 1 - 2 lambda / (lambda - 1/2)
};

/// Plasmonic values of the real parts of an ordered spectrum.
std::vector<PlasmonicEntry> plasmonic_eigenvalues(std::span<const double> lambdas);
std::vector<PlasmonicEntry> plasmonic_eigenvalues(const SpectrumResult& spectrum);

/// Header `j,re,im,modulus,singular_value`.
void write_spectrum_csv(const SpectrumResult& spectrum, std::ostream& out);
/// {c, slope, window, predicted, rel_dev}
nlohmann::json fit_to_json(const WeylFit& fit);

}  // namespace npweyl
