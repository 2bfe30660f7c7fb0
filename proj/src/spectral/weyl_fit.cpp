#include "npweyl/error.hpp"
#include "npweyl/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace npweyl {

FitWindow default_window(std::size_t n) {
  // Largest j with j^3 <= n^2, i.e. floor(n^{2/3}) without rounding trouble.
  std::size_t cube_root_sq = static_cast<std::size_t>(std::pow(static_cast<double>(n), 2.0 / 3.0));
  while ((cube_root_sq + 1) * (cube_root_sq + 1) * (cube_root_sq + 1) <= n * n) ++cube_root_sq;
  while (cube_root_sq > 0 && cube_root_sq * cube_root_sq * cube_root_sq > n * n) --cube_root_sq;
  return {16, static_cast<int>(std::min(cube_root_sq, n / 8))};
}

namespace {

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

WeylFit weyl_fit(std::span<const double> values, FitWindow window, double predicted) {
  if (window.j_min < 1) throw ConfigError("fit window must start at j >= 1");
  if (window.j_max < window.j_min) throw ConfigError("empty fit window");
  if (static_cast<std::size_t>(window.j_max) >= values.size()) {
    throw ConfigError("fit window [" + std::to_string(window.j_min) + ", " + std::to_string(window.j_max) +
                      "] exceeds the " + std::to_string(values.size()) + " available values");
  }
  WeylFit fit;
  fit.window = window;
  fit.predicted_constant = predicted;
  std::vector<double> logj, logv;
  for (int j = window.j_min; j <= window.j_max; ++j) {
    const double v = values[j];
    if (!(v > 0.0)) {
      ++fit.excluded;
      continue;
    }
    fit.scaled.push_back(v * std::sqrt(static_cast<double>(j)));
    logj.push_back(std::log(static_cast<double>(j)));
    logv.push_back(std::log(v));
  }
  if (fit.scaled.empty()) throw NumericsError("no positive values inside the fit window");
  fit.fitted_constant = median(fit.scaled);

  if (logj.size() >= 2) {
    const double n = static_cast<double>(logj.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < logj.size(); ++i) {
      mx += logj[i];
      my += logv[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < logj.size(); ++i) {
      sxy += (logj[i] - mx) * (logv[i] - my);
      sxx += (logj[i] - mx) * (logj[i] - mx);
    }
    fit.slope = sxy / sxx;
  }
  fit.relative_deviation = predicted > 0.0 ? std::abs(fit.fitted_constant - predicted) / predicted : std::nan("");
  return fit;
}

WeylFit weyl_fit(const SpectrumResult& spectrum, FitWindow window, double predicted) {
  std::vector<double> moduli;
  moduli.reserve(spectrum.eigenvalues.size());
  for (const auto& z : spectrum.eigenvalues) moduli.push_back(std::abs(z));
  return weyl_fit(moduli, window, predicted);
}

namespace {

// Branch values as magnitudes, prefixed by a placeholder so index j is the
// j-th (1-based) member of the branch.
double branch_constant(std::vector<double> magnitudes, FitWindow window) {
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  magnitudes.insert(magnitudes.begin(), 0.0);
  if (static_cast<int>(magnitudes.size()) <= window.j_min) return 0.0;
  window.j_max = std::min(window.j_max, static_cast<int>(magnitudes.size()) - 1);
  return weyl_fit(magnitudes, window, 0.0).fitted_constant;
}

SignedFit split_fit(std::span<const double> values, FitWindow window) {
  if (window.j_min < 1 || window.j_max < window.j_min) throw ConfigError("invalid fit window");
  std::vector<double> plus, minus;
  for (double v : values) {
    if (v > 0.0) plus.push_back(v);
    if (v < 0.0) minus.push_back(-v);
  }
  return {branch_constant(std::move(plus), window), branch_constant(std::move(minus), window)};
}

}  // namespace

SignedFit signed_split_fit(std::span<const double> values, FitWindow window) { return split_fit(values, window); }

SignedFit signed_split_fit(const SpectrumResult& spectrum, FitWindow window) {
  std::vector<double> re;
  for (std::size_t j = 1; j < spectrum.eigenvalues.size(); ++j) re.push_back(spectrum.eigenvalues[j].real());
  return split_fit(re, window);
}

}  // namespace npweyl
