#pragma once

#include "npweyl/chart.hpp"

namespace npweyl {

/// First (E, F, G) and second (L, M, N) fundamental form coefficients.
///
/// The second form is measured against the inward normal, so convex surfaces
/// have positive normal curvature and a round sphere of radius rho gets
/// H = +1/rho while the node normal still points outward.
struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double L = 0.0, M = 0.0, N = 0.0;

  double metric_det() const { return E * G - F * F; }
};

struct Curvatures {
  double H = 0.0;  // mean curvature, half trace of the Weingarten map
  double K = 0.0;  // Gaussian curvature
};

/// Forms plus the quantities needed to build a quadrature node.
struct LocalGeometry {
  FundamentalForms forms;
  Vec3 normal;          // outward unit normal
  double area_element;  // |r_s x r_t|
};

/// Throws RegularityError when |r_s x r_t| vanishes relative to |r_s||r_t|.
LocalGeometry local_geometry(const ChartJet& jet, int orientation);

FundamentalForms fundamental_forms(const SurfaceChart& chart, double s, double t);

/// K = (LN - M^2)/(EG - F^2), H = (EN + GL - 2FM)/(2(EG - F^2)).
/// Throws RegularityError for a metric that is not positive definite.
Curvatures curvatures(const FundamentalForms& forms);

/// Principal curvatures kappa_1 >= kappa_2; H^2 - K is clamped at zero so
/// umbilic points with rounding noise still return a real pair.
std::pair<double, double> principal_curvatures(double H, double K);

}  // namespace npweyl
