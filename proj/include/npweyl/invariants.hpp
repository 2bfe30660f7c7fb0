#pragma once

#include "npweyl/quadrature.hpp"
#include "npweyl/symbol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace npweyl {

/// Sum of w_i H_i^2.
double willmore_energy(const SurfaceQuadrature& quad);

struct GaussBonnet {
  double integral = 0.0;  // sum of w_i K_i
  double residual = 0.0;  // |integral - 2 pi chi|
};

GaussBonnet gauss_bonnet_check(const SurfaceQuadrature& quad);

/// sqrt((3W - 2 pi chi) / (128 pi)). Throws InvalidGeometryError when the
/// radicand is negative.
double predicted_weyl_constant(double willmore, int euler_characteristic);

struct GeometryReport {
  std::string label;
  double willmore_energy = 0.0;
  double gauss_bonnet_integral = 0.0;
  int euler_characteristic = 0;
  double gauss_bonnet_residual = 0.0;
  double predicted_weyl_constant = 0.0;
  std::optional<SignedDensities> signed_densities;
  double area = 0.0;
  std::vector<double> weyl_density;  // per node, filled on request
};

struct ReportOptions {
  bool signed_densities = false;
  bool per_node_density = false;
  int n_theta = 256;
};

GeometryReport geometry_report(const SurfaceQuadrature& quad, const ReportOptions& options = {});

nlohmann::json report_to_json(const GeometryReport& report);
/// Fixed-order key=value lines.
std::string report_table(const GeometryReport& report);

}  // namespace npweyl
