#include "npweyl/symbol.hpp"

#include "npweyl/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace npweyl {

namespace {

constexpr double kPi = std::numbers::pi;

void require_conformal(const SymbolPoint& p) {
  if (!p.is_conformal) {
    throw GeometryError(
        "symbol density needs a conformal point (E = G, F = 0); use weyl_density_pointwise(H, K) "
        "for general charts");
  }
}

void require_curvature_pair(double H, double K) {
  if (K - H * H > 1e-12 * std::max(1.0, H * H)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "invalid curvature pair: H^2 = " << H * H << " < K = " << K;
    throw InvalidGeometryError(msg.str());
  }
}

}  // namespace

SymbolPoint make_symbol_point(const FundamentalForms& forms, double weight) {
  SymbolPoint p;
  p.forms = forms;
  p.w = weight;
  const Curvatures c = curvatures(forms);
  p.H = c.H;
  p.K = c.K;
  p.is_conformal = std::abs(forms.E - forms.G) <= 1e-10 * forms.E && std::abs(forms.F) <= 1e-10 * forms.E;
  return p;
}

double principal_symbol(const SymbolPoint& p, const Eigen::Vector2d& xi) {
  if (xi.squaredNorm() == 0.0) throw ConfigError("principal symbol is undefined at xi = 0");
  const auto& f = p.forms;
  const double det = f.metric_det();
  if (!(det > 0.0)) throw RegularityError("metric is not positive definite");
  // Inverse metric (G, -F; -F, E) / det.
  const double quad = (f.G * xi(0) * xi(0) - 2.0 * f.F * xi(0) * xi(1) + f.E * xi(1) * xi(1)) / det;
  const double num = f.L * xi(1) * xi(1) - 2.0 * f.M * xi(0) * xi(1) + f.N * xi(0) * xi(0);
  return num / (4.0 * det * std::pow(quad, 1.5));
}

double symbol_density_numeric(const SymbolPoint& p, int n_theta) {
  require_conformal(p);
  if (n_theta < 16) throw ConfigError("symbol_density_numeric needs n_theta >= 16");
  const double h = 2.0 * kPi / n_theta;
  double integral = 0.0;
  for (int k = 0; k < n_theta; ++k) {
    const double theta = k * h;
    const double sigma = principal_symbol(p, Eigen::Vector2d(std::cos(theta), std::sin(theta)));
    integral += sigma * sigma;
  }
  integral *= h;
  // Per unit chart area, then per unit surface area (dS = E dx).
  return integral / (8.0 * kPi * kPi) / p.forms.E;
}

double symbol_density_closed_form(const SymbolPoint& p) {
  require_conformal(p);
  const auto& f = p.forms;
  const double theta_integral =
      0.75 * kPi * f.L * f.L + 0.75 * kPi * f.N * f.N + kPi * f.M * f.M + 0.5 * kPi * f.L * f.N;
  return theta_integral / (16.0 * f.E) / (8.0 * kPi * kPi) / f.E;
}

double weyl_density_pointwise(double H, double K) {
  require_curvature_pair(H, K);
  return 3.0 / (128.0 * kPi) * (H * H - K / 3.0);
}

double integrated_weyl_density(const SurfaceQuadrature& quad) {
  double total = 0.0;
  for (const auto& node : quad.nodes) total += weyl_density_pointwise(node.H, node.K) * node.w;
  return total;
}

SignedDensities signed_densities(const SurfaceQuadrature& quad, int n_theta) {
  if (n_theta < 64) throw ConfigError("signed_densities needs n_theta >= 64");
  if (quad.empty()) throw GeometryError("empty quadrature");
  std::vector<double> cos2(n_theta), sin2(n_theta);
  const double h = 2.0 * kPi / n_theta;
  for (int k = 0; k < n_theta; ++k) {
    cos2[k] = std::cos(k * h) * std::cos(k * h);
    sin2[k] = std::sin(k * h) * std::sin(k * h);
  }
  double plus = 0.0, minus = 0.0;
  for (const auto& node : quad.nodes) {
    require_curvature_pair(node.H, node.K);
    const auto [k1, k2] = principal_curvatures(node.H, node.K);
    double node_plus = 0.0, node_minus = 0.0;
    for (int k = 0; k < n_theta; ++k) {
      const double kn = k1 * cos2[k] + k2 * sin2[k];
      if (kn > 0.0) {
        node_plus += kn * kn;
      } else {
        node_minus += kn * kn;
      }
    }
    plus += node_plus * h * node.w;
    minus += node_minus * h * node.w;
  }
  const double norm = 1.0 / (128.0 * kPi * kPi);
  return {std::sqrt(plus * norm), std::sqrt(minus * norm)};
}

}  // namespace npweyl
