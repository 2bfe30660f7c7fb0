#include "npweyl/mobius.hpp"

#include "npweyl/error.hpp"
#include "npweyl/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace npweyl {

namespace {

constexpr double kAdmissibility = 1e-9;

// Jacobian action and second derivative of the inversion about c with radius rho.
Vec3 inversion_jacobian(const SphereInversion& inv, const Vec3& d, const Vec3& u) {
  const double d2 = d.squaredNorm();
  return inv.radius * inv.radius * (u / d2 - 2.0 * d * d.dot(u) / (d2 * d2));
}

Vec3 inversion_hessian(const SphereInversion& inv, const Vec3& d, const Vec3& u, const Vec3& v) {
  const double d2 = d.squaredNorm();
  const double du = d.dot(u), dv = d.dot(v);
  return inv.radius * inv.radius *
         (-2.0 * (du * v + dv * u + u.dot(v) * d) / (d2 * d2) + 8.0 * du * dv * d / (d2 * d2 * d2));
}

std::vector<double> parse_numbers(std::string_view text, std::string_view step) {
  std::vector<double> out;
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ConfigError("malformed numbers in mobius step '" + std::string(step) + "'");
  return out;
}

double signed_volume(const SurfaceChart& chart) {
  const SurfaceQuadrature quad = build_quadrature(chart, 48, 48);
  double vol = 0.0;
  for (const auto& node : quad.nodes) vol += node.x.dot(node.n) * node.w;
  return vol / 3.0;
}

}  // namespace

Vec3 apply_primitive(const MobiusPrimitive& step, const Vec3& x) {
  return std::visit(
      [&](const auto& p) -> Vec3 {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Translation>) {
          return x + p.offset;
        } else if constexpr (std::is_same_v<T, Scaling>) {
          return p.factor * x;
        } else {
          const Vec3 d = x - p.center;
          return p.center + p.radius * p.radius * d / d.squaredNorm();
        }
      },
      step);
}

ChartJet apply_primitive(const MobiusPrimitive& step, const ChartJet& jet) {
  return std::visit(
      [&](const auto& p) -> ChartJet {
        using T = std::decay_t<decltype(p)>;
        ChartJet out = jet;
        if constexpr (std::is_same_v<T, Translation>) {
          out.r += p.offset;
        } else if constexpr (std::is_same_v<T, Scaling>) {
          out.r *= p.factor;
          out.r_s *= p.factor;
          out.r_t *= p.factor;
          out.r_ss *= p.factor;
          out.r_st *= p.factor;
          out.r_tt *= p.factor;
        } else {
          const Vec3 d = jet.r - p.center;
          out.r = apply_primitive(step, jet.r);
          out.r_s = inversion_jacobian(p, d, jet.r_s);
          out.r_t = inversion_jacobian(p, d, jet.r_t);
          out.r_ss = inversion_jacobian(p, d, jet.r_ss) + inversion_hessian(p, d, jet.r_s, jet.r_s);
          out.r_st = inversion_jacobian(p, d, jet.r_st) + inversion_hessian(p, d, jet.r_s, jet.r_t);
          out.r_tt = inversion_jacobian(p, d, jet.r_tt) + inversion_hessian(p, d, jet.r_t, jet.r_t);
        }
        return out;
      },
      step);
}

Vec3 MobiusMap::operator()(const Vec3& x) const {
  Vec3 y = x;
  for (const auto& step : steps) y = apply_primitive(step, y);
  return y;
}

MobiusMap parse_mobius(std::string_view spec) {
  MobiusMap map;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t end = std::min(spec.find(';', pos), spec.size());
    std::string_view step = spec.substr(pos, end - pos);
    pos = end + 1;
    while (!step.empty() && step.front() == ' ') step.remove_prefix(1);
    while (!step.empty() && step.back() == ' ') step.remove_suffix(1);
    if (step.empty()) continue;
    const std::size_t colon = step.find(':');
    if (colon == std::string_view::npos) throw ConfigError("mobius step '" + std::string(step) + "' lacks ':'");
    const std::string_view kind = step.substr(0, colon);
    const std::vector<double> v = parse_numbers(step.substr(colon + 1), step);
    if (kind == "translate" && v.size() == 3) {
      map.steps.push_back(Translation{Vec3(v[0], v[1], v[2])});
    } else if (kind == "scale" && v.size() == 1) {
      if (!(v[0] > 0.0)) throw ConfigError("mobius scale factor must be positive");
      map.steps.push_back(Scaling{v[0]});
    } else if (kind == "invert" && v.size() == 4) {
      if (!(v[3] > 0.0)) throw ConfigError("mobius inversion radius must be positive");
      map.steps.push_back(SphereInversion{Vec3(v[0], v[1], v[2]), v[3]});
    } else {
      throw ConfigError("unrecognised mobius step '" + std::string(step) + "'");
    }
  }
  if (map.steps.empty()) throw ConfigError("empty mobius specification");
  return map;
}

std::string to_string(const MobiusMap& map) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& step : map.steps) {
    if (!first) out << ';';
    first = false;
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Translation>) {
            out << "translate:" << p.offset.x() << ',' << p.offset.y() << ',' << p.offset.z();
          } else if constexpr (std::is_same_v<T, Scaling>) {
            out << "scale:" << p.factor;
          } else {
            out << "invert:" << p.center.x() << ',' << p.center.y() << ',' << p.center.z() << ',' << p.radius;
          }
        },
        step);
  }
  return out.str();
}

MobiusMap random_mobius(std::mt19937_64& rng, const Vec3& center, double bounding_radius) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  std::uniform_real_distribution<double> dist(1.5, 3.0);
  std::normal_distribution<double> gauss;
  auto random_direction = [&] {
    Vec3 u(gauss(rng), gauss(rng), gauss(rng));
    return Vec3(u.normalized());
  };

  MobiusMap map;
  const Vec3 shift(unit(rng), unit(rng), unit(rng));
  const double a = scale(rng);
  map.then(Translation{shift}).then(Scaling{a});
  const Vec3 moved_center = a * (center + shift);
  const double moved_radius = a * bounding_radius;
  const Vec3 c = moved_center + dist(rng) * moved_radius * random_direction();
  map.then(SphereInversion{c, moved_radius * scale(rng)});
  map.then(Translation{Vec3(unit(rng), unit(rng), unit(rng))});
  return map;
}

double chart_diameter(const SurfaceChart& chart) {
  constexpr int n = 32;
  std::vector<Vec3> pts;
  const auto& d = chart.domain;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pts.push_back(chart.position(d.s0 + d.s_span() * (i + 0.5) / n, d.t0 + d.t_span() * (j + 0.5) / n));
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(best);
}

double distance_to_surface(const SurfaceChart& chart, const Vec3& point) {
  constexpr int n = 64;
  const auto& d = chart.domain;
  struct Candidate {
    double dist2, s, t;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double s = d.s0 + d.s_span() * i / n, t = d.t0 + d.t_span() * j / n;
      cands.push_back({(chart.position(s, t) - point).squaredNorm(), s, t});
    }
  }
  const std::size_t keep = std::min<std::size_t>(6, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                    [](const Candidate& a, const Candidate& b) { return a.dist2 < b.dist2; });

  double best = std::sqrt(cands.front().dist2);
  for (std::size_t c = 0; c < keep; ++c) {
    double s = cands[c].s, t = cands[c].t;
    for (int iter = 0; iter < 40; ++iter) {
      const ChartJet jet = evaluate_jet(chart, s, t);
      const Vec3 diff = jet.r - point;
      best = std::min(best, diff.norm());
      const Eigen::Vector2d grad(diff.dot(jet.r_s), diff.dot(jet.r_t));
      Eigen::Matrix2d hess;
      hess << jet.r_s.dot(jet.r_s) + diff.dot(jet.r_ss), jet.r_s.dot(jet.r_t) + diff.dot(jet.r_st),
          jet.r_s.dot(jet.r_t) + diff.dot(jet.r_st), jet.r_t.dot(jet.r_t) + diff.dot(jet.r_tt);
      Eigen::Vector2d step;
      Eigen::Matrix2d gn;
      gn << jet.r_s.dot(jet.r_s), jet.r_s.dot(jet.r_t), jet.r_s.dot(jet.r_t), jet.r_t.dot(jet.r_t);
      if (hess.determinant() > 0.0 && hess.trace() > 0.0) {
        step = hess.ldlt().solve(grad);
      } else {
        step = gn.ldlt().solve(grad);
      }
      double ns = s - step(0), nt = t - step(1);
      if (chart.periodic_s) ns = d.s0 + std::fmod(std::fmod(ns - d.s0, d.s_span()) + d.s_span(), d.s_span());
      if (chart.periodic_t) nt = d.t0 + std::fmod(std::fmod(nt - d.t0, d.t_span()) + d.t_span(), d.t_span());
      ns = std::clamp(ns, d.s0, d.s1);
      nt = std::clamp(nt, d.t0, d.t1);
      if (std::abs(ns - s) + std::abs(nt - t) < 1e-15) break;
      s = ns;
      t = nt;
    }
    best = std::min(best, (chart.position(s, t) - point).norm());
  }
  return best;
}

namespace {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double n2 = n.squaredNorm();
  const Vec3 proj = p - n * (p - a).dot(n) / n2;
  // Barycentric signs of the projection.
  const bool inside = (b - a).cross(proj - a).dot(n) >= 0.0 && (c - b).cross(proj - b).dot(n) >= 0.0 &&
                      (a - c).cross(proj - c).dot(n) >= 0.0;
  if (inside) return (p - proj).norm();
  return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c), point_segment_distance(p, c, a)});
}

double mesh_diameter(const TriangleMesh& mesh) {
  double best = 0.0;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < mesh.vertices.size(); ++j)
      best = std::max(best, (mesh.vertices[i] - mesh.vertices[j]).squaredNorm());
  return std::sqrt(best);
}

std::string inadmissible_message(const SphereInversion& inv, double distance, double diameter) {
  std::ostringstream msg;
  msg << "inversion center (" << inv.center.x() << ", " << inv.center.y() << ", " << inv.center.z()
      << ") lies " << distance << " from the surface (threshold " << kAdmissibility * diameter << ")";
  return msg.str();
}

}  // namespace

double distance_to_surface(const TriangleMesh& mesh, const Vec3& point) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : mesh.faces) {
    best = std::min(best, point_triangle_distance(point, mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]));
  }
  return best;
}

SurfaceChart apply_mobius(const SurfaceChart& chart, const MobiusMap& map) {
  SurfaceChart current = chart;
  for (const auto& step : map.steps) {
    if (const auto* inv = std::get_if<SphereInversion>(&step)) {
      const double dist = distance_to_surface(current, inv->center);
      const double diam = chart_diameter(current);
      if (!(dist > kAdmissibility * diam)) throw InadmissibleMapError(inadmissible_message(*inv, dist, diam));
    }
    SurfaceChart next = current;
    const SurfaceChart base = current;
    next.position = [base, step](double s, double t) { return apply_primitive(step, base.position(s, t)); };
    if (base.has_analytic_derivatives()) {
      next.first_derivs = [base, step](double s, double t) {
        const ChartJet jet = apply_primitive(step, evaluate_jet(base, s, t));
        return std::pair<Vec3, Vec3>{jet.r_s, jet.r_t};
      };
      next.second_derivs = [base, step](double s, double t) {
        const ChartJet jet = apply_primitive(step, evaluate_jet(base, s, t));
        return SecondDerivatives{jet.r_ss, jet.r_st, jet.r_tt};
      };
    } else {
      next.first_derivs = nullptr;
      next.second_derivs = nullptr;
    }
    next.orientation = 1;
    if (signed_volume(next) < 0.0) next.orientation = -1;
    current = std::move(next);
  }
  return current;
}

TriangleMesh apply_mobius(const TriangleMesh& mesh, const MobiusMap& map) {
  TriangleMesh current = mesh;
  for (const auto& step : map.steps) {
    if (const auto* inv = std::get_if<SphereInversion>(&step)) {
      const double dist = distance_to_surface(current, inv->center);
      const double diam = mesh_diameter(current);
      if (!(dist > kAdmissibility * diam)) throw InadmissibleMapError(inadmissible_message(*inv, dist, diam));
    }
    for (auto& v : current.vertices) v = apply_primitive(step, v);
    current = orient_outward(std::move(current));
  }
  return current;
}

}  // namespace npweyl
