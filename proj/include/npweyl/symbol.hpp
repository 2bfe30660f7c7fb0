#pragma once

#include "npweyl/fundamental_forms.hpp"
#include "npweyl/quadrature.hpp"

#include <Eigen/Core>

namespace npweyl {

/// Arguments of the NP principal symbol at one surface point.
struct SymbolPoint {
  FundamentalForms forms;
  bool is_conformal = false;  // E = G and F = 0 to 1e-10 relative
  double w = 0.0;
  double H = 0.0;
  double K = 0.0;
};

SymbolPoint make_symbol_point(const FundamentalForms& forms, double weight = 0.0);

/// (L xi_2^2 - 2 M xi_1 xi_2 + N xi_1^2) / (4 det g (g^{jk} xi_j xi_k)^{3/2}),
/// homogeneous of degree -1 in xi.
double principal_symbol(const SymbolPoint& p, const Eigen::Vector2d& xi);

/// Per-unit-area cosphere density (1/8 pi^2) * int_{S^1} p^2 dtheta / E at a
/// conformal point, using the trapezoid rule with n_theta >= 16 nodes.
double symbol_density_numeric(const SymbolPoint& p, int n_theta = 256);

/// The same density with the theta integral done in closed form:
/// (3pi/4 L^2 + 3pi/4 N^2 + pi M^2 + pi/2 LN) / (128 pi^2 E^2).
double symbol_density_closed_form(const SymbolPoint& p);

/// Coordinate-free density (3/(128 pi)) (H^2 - K/3). Its surface integral is
/// (3W - 2 pi chi)/(128 pi) by Gauss-Bonnet.
double weyl_density_pointwise(double H, double K);

/// Sum of weyl_density_pointwise over the nodes, weighted by w.
double integrated_weyl_density(const SurfaceQuadrature& quad);

struct SignedDensities {
  double c_plus = 0.0;
  double c_minus = 0.0;
};

/// Square roots of the positive- and negative-part symbol densities,
/// integrated with Euler's normal-curvature form kappa_1 cos^2 + kappa_2 sin^2
/// (n_theta >= 64 trapezoid nodes per point).
SignedDensities signed_densities(const SurfaceQuadrature& quad, int n_theta = 256);

}  // namespace npweyl
