#include "npweyl/fundamental_forms.hpp"

#include "npweyl/error.hpp"

#include <cmath>
#include <sstream>

namespace npweyl {

LocalGeometry local_geometry(const ChartJet& jet, int orientation) {
  const Vec3 cross = jet.r_s.cross(jet.r_t);
  const double area = cross.norm();
  const double scale = jet.r_s.norm() * jet.r_t.norm();
  if (!(area > 1e-14 * scale) || !(scale > 0.0)) {
    throw RegularityError("degenerate chart point: |r_s x r_t| = 0");
  }
  LocalGeometry geo;
  geo.area_element = area;
  geo.normal = (orientation >= 0 ? 1.0 : -1.0) * cross / area;
  const Vec3 inward = -geo.normal;
  geo.forms.E = jet.r_s.dot(jet.r_s);
  geo.forms.F = jet.r_s.dot(jet.r_t);
  geo.forms.G = jet.r_t.dot(jet.r_t);
  geo.forms.L = jet.r_ss.dot(inward);
  geo.forms.M = jet.r_st.dot(inward);
  geo.forms.N = jet.r_tt.dot(inward);
  return geo;
}

FundamentalForms fundamental_forms(const SurfaceChart& chart, double s, double t) {
  if (!chart.domain.contains(s, t)) {
    std::ostringstream msg;
    msg << "(" << s << ", " << t << ") outside the domain of chart '" << chart.name << "'";
    throw GeometryError(msg.str());
  }
  try {
    return local_geometry(evaluate_jet(chart, s, t), chart.orientation).forms;
  } catch (const RegularityError&) {
    std::ostringstream msg;
    msg << "chart '" << chart.name << "' is degenerate at (" << s << ", " << t << ")";
    throw RegularityError(msg.str());
  }
}

Curvatures curvatures(const FundamentalForms& f) {
  const double det = f.metric_det();
  if (!(det > 0.0) || !(f.E > 0.0)) {
    throw RegularityError("first fundamental form is not positive definite");
  }
  Curvatures c;
  c.K = (f.L * f.N - f.M * f.M) / det;
  c.H = (f.E * f.N + f.G * f.L - 2.0 * f.F * f.M) / (2.0 * det);
  return c;
}

std::pair<double, double> principal_curvatures(double H, double K) {
  const double root = std::sqrt(std::max(0.0, H * H - K));
  return {H + root, H - root};
}

}  // namespace npweyl
