#include "npweyl/chart.hpp"

#include "npweyl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace npweyl {

namespace {
constexpr double kPi = std::numbers::pi;
}

double default_fd_step(const SurfaceChart& chart) {
  return 1e-3 * std::max(chart.domain.s_span(), chart.domain.t_span()) / 64.0;
}

ChartJet finite_difference_jet(const SurfaceChart& chart, double s, double t, double h) {
  const auto& r = chart.position;
  ChartJet jet;
  jet.r = r(s, t);
  const Vec3 sp = r(s + h, t), sm = r(s - h, t);
  const Vec3 tp = r(s, t + h), tm = r(s, t - h);
  jet.r_s = (sp - sm) / (2.0 * h);
  jet.r_t = (tp - tm) / (2.0 * h);
  jet.r_ss = (sp - 2.0 * jet.r + sm) / (h * h);
  jet.r_tt = (tp - 2.0 * jet.r + tm) / (h * h);
  jet.r_st = (r(s + h, t + h) - r(s + h, t - h) - r(s - h, t + h) + r(s - h, t - h)) / (4.0 * h * h);
  return jet;
}

ChartJet evaluate_jet(const SurfaceChart& chart, double s, double t, double fd_step) {
  if (!chart.position) throw GeometryError("chart '" + chart.name + "' has no position map");
  if (!chart.has_analytic_derivatives()) {
    return finite_difference_jet(chart, s, t, fd_step > 0.0 ? fd_step : default_fd_step(chart));
  }
  ChartJet jet;
  jet.r = chart.position(s, t);
  std::tie(jet.r_s, jet.r_t) = chart.first_derivs(s, t);
  const SecondDerivatives d2 = chart.second_derivs(s, t);
  jet.r_ss = d2.ss;
  jet.r_st = d2.st;
  jet.r_tt = d2.tt;
  return jet;
}

SurfaceChart without_analytic_derivatives(SurfaceChart chart) {
  chart.first_derivs = nullptr;
  chart.second_derivs = nullptr;
  return chart;
}

SurfaceChart ellipsoid(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw ConfigError("ellipsoid semi-axes must be positive");
  SurfaceChart chart;
  chart.name = "ellipsoid";
  chart.domain = {0.0, kPi, 0.0, 2.0 * kPi};
  chart.periodic_s = false;
  chart.periodic_t = true;
  chart.genus = 0;
  chart.orientation = 1;
  chart.position = [=](double th, double ph) {
    return Vec3(a * std::sin(th) * std::cos(ph), b * std::sin(th) * std::sin(ph), c * std::cos(th));
  };
  chart.first_derivs = [=](double th, double ph) {
    const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
    return std::pair<Vec3, Vec3>{Vec3(a * ct * cp, b * ct * sp, -c * st),
                                 Vec3(-a * st * sp, b * st * cp, 0.0)};
  };
  chart.second_derivs = [=](double th, double ph) {
    const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
    return SecondDerivatives{Vec3(-a * st * cp, -b * st * sp, -c * ct),
                             Vec3(-a * ct * sp, b * ct * cp, 0.0),
                             Vec3(-a * st * cp, -b * st * sp, 0.0)};
  };
  return chart;
}

SurfaceChart sphere(double rho) {
  if (!(rho > 0.0)) throw ConfigError("sphere radius must be positive");
  SurfaceChart chart = ellipsoid(rho, rho, rho);
  chart.name = "sphere";
  return chart;
}

SurfaceChart torus(double R, double r) {
  if (!(r > 0.0)) throw ConfigError("torus tube radius must be positive");
  if (!(R > r)) throw ConfigError("torus requires R > r");
  SurfaceChart chart;
  chart.name = "torus";
  chart.domain = {0.0, 2.0 * kPi, 0.0, 2.0 * kPi};
  chart.periodic_s = true;
  chart.periodic_t = true;
  chart.genus = 1;
  // (v, u) order makes r_v x r_u point away from the tube axis.
  chart.orientation = 1;
  chart.position = [=](double v, double u) {
    const double rho = R + r * std::cos(u);
    return Vec3(rho * std::cos(v), rho * std::sin(v), r * std::sin(u));
  };
  chart.first_derivs = [=](double v, double u) {
    const double rho = R + r * std::cos(u);
    return std::pair<Vec3, Vec3>{
        Vec3(-rho * std::sin(v), rho * std::cos(v), 0.0),
        Vec3(-r * std::sin(u) * std::cos(v), -r * std::sin(u) * std::sin(v), r * std::cos(u))};
  };
  chart.second_derivs = [=](double v, double u) {
    const double rho = R + r * std::cos(u);
    const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
    return SecondDerivatives{Vec3(-rho * cv, -rho * sv, 0.0),
                             Vec3(r * su * sv, -r * su * cv, 0.0),
                             Vec3(-r * cu * cv, -r * cu * sv, -r * su)};
  };
  return chart;
}

SurfaceChart clifford_torus() {
  SurfaceChart chart = torus(std::sqrt(2.0), 1.0);
  chart.name = "clifford";
  return chart;
}

SurfaceChart stereographic_sphere(double extent) {
  SurfaceChart chart;
  chart.name = "stereographic_sphere";
  chart.domain = {-extent, extent, -extent, extent};
  chart.genus = 0;
  // r_x x r_y points toward the origin of R^3.
  chart.orientation = -1;
  chart.position = [](double x, double y) {
    const double q = 1.0 + x * x + y * y;
    return Vec3(2.0 * x / q, 2.0 * y / q, (x * x + y * y - 1.0) / q);
  };
  chart.first_derivs = [](double x, double y) {
    const double q = 1.0 + x * x + y * y, q2 = q * q;
    // d/dx of (2x, 2y, x^2+y^2-1)/q with dq/dx = 2x.
    const Vec3 rx((2.0 * q - 4.0 * x * x) / q2, -4.0 * x * y / q2, 4.0 * x / q2);
    const Vec3 ry(-4.0 * x * y / q2, (2.0 * q - 4.0 * y * y) / q2, 4.0 * y / q2);
    return std::pair<Vec3, Vec3>{rx, ry};
  };
  chart.second_derivs = [](double x, double y) {
    const double q = 1.0 + x * x + y * y, q3 = q * q * q;
    const Vec3 rxx((4.0 * x * x * x - 12.0 * x * (1.0 + y * y)) / q3,
                   (12.0 * x * x * y - 4.0 * y * (1.0 + y * y)) / q3,
                   (4.0 * (1.0 + y * y) - 12.0 * x * x) / q3);
    const Vec3 ryy((12.0 * x * y * y - 4.0 * x * (1.0 + x * x)) / q3,
                   (4.0 * y * y * y - 12.0 * y * (1.0 + x * x)) / q3,
                   (4.0 * (1.0 + x * x) - 12.0 * y * y) / q3);
    const Vec3 rxy(4.0 * y * (3.0 * x * x - y * y - 1.0) / q3,
                   -4.0 * x * (x * x - 3.0 * y * y + 1.0) / q3,
                   -16.0 * x * y / q3);
    return SecondDerivatives{rxx, rxy, ryy};
  };
  return chart;
}

}  // namespace npweyl
