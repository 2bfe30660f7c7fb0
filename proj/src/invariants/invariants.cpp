#include "npweyl/invariants.hpp"

#include "npweyl/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace npweyl {

namespace {
constexpr double kPi = std::numbers::pi;

void require_nodes(const SurfaceQuadrature& quad) {
  if (quad.empty()) throw GeometryError("empty quadrature '" + quad.label + "'");
}
}  // namespace

double willmore_energy(const SurfaceQuadrature& quad) {
  require_nodes(quad);
  double total = 0.0;
  for (const auto& node : quad.nodes) total += node.w * node.H * node.H;
  return total;
}

GaussBonnet gauss_bonnet_check(const SurfaceQuadrature& quad) {
  require_nodes(quad);
  GaussBonnet gb;
  for (const auto& node : quad.nodes) gb.integral += node.w * node.K;
  gb.residual = std::abs(gb.integral - 2.0 * kPi * quad.euler_characteristic);
  return gb;
}

double predicted_weyl_constant(double willmore, int chi) {
  // Dividing by pi first keeps the round-sphere value (4 pi, 2) exact.
  const double radicand = (3.0 * (willmore / kPi) - 2.0 * chi) / 128.0;
  if (!(radicand >= 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "3W - 2 pi chi is negative (W = " << willmore << ", chi = " << chi << "): curvature data is inconsistent";
    throw InvalidGeometryError(msg.str());
  }
  return std::sqrt(radicand);
}

GeometryReport geometry_report(const SurfaceQuadrature& quad, const ReportOptions& options) {
  GeometryReport report;
  report.label = quad.label;
  report.willmore_energy = willmore_energy(quad);
  const GaussBonnet gb = gauss_bonnet_check(quad);
  report.gauss_bonnet_integral = gb.integral;
  report.gauss_bonnet_residual = gb.residual;
  report.euler_characteristic = quad.euler_characteristic;
  report.predicted_weyl_constant = predicted_weyl_constant(report.willmore_energy, quad.euler_characteristic);
  report.area = quad.area();
  if (options.signed_densities) report.signed_densities = signed_densities(quad, options.n_theta);
  if (options.per_node_density) {
    report.weyl_density.reserve(quad.size());
    for (const auto& node : quad.nodes) report.weyl_density.push_back(weyl_density_pointwise(node.H, node.K));
  }
  return report;
}

nlohmann::json report_to_json(const GeometryReport& r) {
  nlohmann::json doc = {{"label", r.label},
                        {"willmore_energy", r.willmore_energy},
                        {"gauss_bonnet_integral", r.gauss_bonnet_integral},
                        {"euler_characteristic", r.euler_characteristic},
                        {"gauss_bonnet_residual", r.gauss_bonnet_residual},
                        {"predicted_weyl_constant", r.predicted_weyl_constant},
                        {"area", r.area}};
  if (r.signed_densities) {
    doc["c_plus"] = r.signed_densities->c_plus;
    doc["c_minus"] = r.signed_densities->c_minus;
  }
  if (!r.weyl_density.empty()) doc["weyl_density"] = r.weyl_density;
  return doc;
}

std::string report_table(const GeometryReport& r) {
  std::ostringstream out;
  out.precision(12);
  out << "label=" << r.label << '\n'
      << "area=" << r.area << '\n'
      << "willmore_energy=" << r.willmore_energy << '\n'
      << "euler_characteristic=" << r.euler_characteristic << '\n'
      << "gauss_bonnet_integral=" << r.gauss_bonnet_integral << '\n'
      << "gauss_bonnet_residual=" << r.gauss_bonnet_residual << '\n'
      << "predicted_weyl_constant=" << r.predicted_weyl_constant << '\n';
  if (r.signed_densities) {
    out << "c_plus=" << r.signed_densities->c_plus << '\n' << "c_minus=" << r.signed_densities->c_minus << '\n';
  }
  return out.str();
}

}  // namespace npweyl
