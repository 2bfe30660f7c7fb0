#pragma once

#include "npweyl/chart.hpp"
#include "npweyl/fundamental_forms.hpp"

#include <string>
#include <vector>

namespace npweyl {

struct SurfaceNode {
  Vec3 x;
  Vec3 n;  // outward unit normal
  double w = 0.0;
  FundamentalForms forms;
  double H = 0.0;
  double K = 0.0;
  double s = 0.0, t = 0.0;  // chart coordinates (zero for mesh vertices)
};

/// The discrete surface: nodes with area weights and the declared Euler
/// characteristic (topological, never inferred from the curvature sum).
struct SurfaceQuadrature {
  std::vector<SurfaceNode> nodes;
  int euler_characteristic = 2;
  std::string label;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
  double area() const;
  /// Largest pairwise node distance.
  double diameter() const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor-product quadrature over the chart domain: periodic trapezoid in a
/// periodic direction, Gauss-Legendre (interior nodes only) otherwise.
/// Needs n_s, n_t >= 4. A node on a chart singularity raises RegularityError.
SurfaceQuadrature build_quadrature(const SurfaceChart& chart, int n_s, int n_t);

/// Same as build_quadrature but with the label overridden.
SurfaceQuadrature build_quadrature(const SurfaceChart& chart, int n_s, int n_t, std::string label);

}  // namespace npweyl
