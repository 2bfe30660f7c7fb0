#include "npweyl/spectrum.hpp"

#include "npweyl/dense_eigen.hpp"
#include "npweyl/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace npweyl {

void order_by_modulus(std::vector<std::complex<double>>& values) {
  std::sort(values.begin(), values.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

SpectrumResult make_spectrum(std::vector<std::complex<double>> raw, std::vector<double> singular) {
  SpectrumResult result;
  result.n = raw.size();
  order_by_modulus(raw);
  for (const auto& z : raw) result.max_imag_residual = std::max(result.max_imag_residual, std::abs(z.imag()));
  result.eigenvalues = std::move(raw);
  std::sort(singular.begin(), singular.end(), std::greater<>());
  result.singular_values = std::move(singular);
  return result;
}

SpectrumResult eigenvalues(const NpMatrix& m) {
  return make_spectrum(detail::general_eigenvalues(m.entries()), detail::singular_values(symmetrize(m)));
}

std::vector<double> exact_sphere_spectrum(int count) {
  if (count < 1) throw ConfigError("exact_sphere_spectrum needs count >= 1");
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const double value = 1.0 / (2.0 * (2.0 * k + 1.0));
    for (int m = 0; m < 2 * k + 1 && static_cast<int>(out.size()) < count; ++m) out.push_back(value);
  }
  return out;
}

std::vector<PlasmonicEntry> plasmonic_eigenvalues(std::span<const double> lambdas) {
  std::vector<PlasmonicEntry> out;
  out.reserve(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double lambda = lambdas[j];
    PlasmonicEntry entry;
    entry.j = j;
    if (std::abs(lambda - 0.5) <= 1e-12) {
      entry.is_pole = true;
    } else {
      // -2 lambda / (lambda - 1/2) rearranged; this form is exact at lambda = 1/6.
      const double ratio = lambda == 0.0 ? 0.0 : 2.0 / (1.0 / (2.0 * lambda) - 1.0);
      entry.deviation = std::abs(ratio);
      entry.epsilon = 1.0 + ratio;
    }
    out.push_back(entry);
  }
  return out;
}

std::vector<PlasmonicEntry> plasmonic_eigenvalues(const SpectrumResult& spectrum) {
  std::vector<double> re;
  re.reserve(spectrum.eigenvalues.size());
  for (const auto& z : spectrum.eigenvalues) re.push_back(z.real());
  return plasmonic_eigenvalues(re);
}

void write_spectrum_csv(const SpectrumResult& spectrum, std::ostream& out) {
  out << "j,re,im,modulus,singular_value\n";
  char buf[160];
  for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
    const auto& z = spectrum.eigenvalues[j];
    const double s = j < spectrum.singular_values.size() ? spectrum.singular_values[j] : std::nan("");
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", j, z.real(), z.imag(), std::abs(z), s);
    out << buf;
  }
}

nlohmann::json fit_to_json(const WeylFit& fit) {
  return {{"c", fit.fitted_constant},
          {"slope", fit.slope},
          {"window", {fit.window.j_min, fit.window.j_max}},
          {"predicted", fit.predicted_constant},
          {"rel_dev", fit.relative_deviation}};
}

}  // namespace npweyl
