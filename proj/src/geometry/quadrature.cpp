#include "npweyl/quadrature.hpp"

#include "npweyl/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace npweyl {

double SurfaceQuadrature::area() const {
  double total = 0.0;
  for (const auto& node : nodes) total += node.w;
  return total;
}

double SurfaceQuadrature::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      best = std::max(best, (nodes[i].x - nodes[j].x).squaredNorm());
  return std::sqrt(best);
}

namespace {

struct Rule1d {
  std::vector<double> nodes, weights;
};

Rule1d make_rule(double a, double b, int n, bool periodic) {
  Rule1d rule;
  if (periodic) {
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      rule.nodes.push_back(a + i * h);
      rule.weights.push_back(h);
    }
    return rule;
  }
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(mid + half * x[i]);
    rule.weights.push_back(half * w[i]);
  }
  return rule;
}

}  // namespace

SurfaceQuadrature build_quadrature(const SurfaceChart& chart, int n_s, int n_t, std::string label) {
  if (n_s < 4 || n_t < 4) throw ConfigError("quadrature resolution must be at least 4x4");
  const auto& dom = chart.domain;
  const Rule1d rs = make_rule(dom.s0, dom.s1, n_s, chart.periodic_s);
  const Rule1d rt = make_rule(dom.t0, dom.t1, n_t, chart.periodic_t);
  const double fd_step = 1e-3 * std::max(dom.s_span() / n_s, dom.t_span() / n_t);

  SurfaceQuadrature quad;
  quad.label = std::move(label);
  quad.euler_characteristic = 2 - 2 * chart.genus;
  quad.nodes.reserve(static_cast<std::size_t>(n_s) * n_t);
  for (int i = 0; i < n_s; ++i) {
    for (int j = 0; j < n_t; ++j) {
      const double s = rs.nodes[i], t = rt.nodes[j];
      const ChartJet jet = evaluate_jet(chart, s, t, fd_step);
      LocalGeometry geo;
      try {
        geo = local_geometry(jet, chart.orientation);
      } catch (const RegularityError&) {
        std::ostringstream msg;
        msg << "quadrature node (" << s << ", " << t << ") of chart '" << chart.name
            << "' hits a chart singularity; polar directions must be non-periodic so "
               "that Gauss-Legendre places nodes strictly inside the domain";
        throw RegularityError(msg.str());
      }
      SurfaceNode node;
      node.x = jet.r;
      node.n = geo.normal;
      node.w = geo.area_element * rs.weights[i] * rt.weights[j];
      node.forms = geo.forms;
      const Curvatures c = curvatures(geo.forms);
      node.H = c.H;
      node.K = c.K;
      node.s = s;
      node.t = t;
      quad.nodes.push_back(node);
    }
  }
  return quad;
}

SurfaceQuadrature build_quadrature(const SurfaceChart& chart, int n_s, int n_t) {
  std::ostringstream label;
  label << chart.name << "_" << n_s << "x" << n_t;
  return build_quadrature(chart, n_s, n_t, label.str());
}

}  // namespace npweyl
