#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <functional>
#include <string>
#include <utility>

namespace npweyl {

using Vec3 = Eigen::Vector3d;

struct ParamDomain {
  double s0 = 0.0, s1 = 1.0;
  double t0 = 0.0, t1 = 1.0;

  double s_span() const { return s1 - s0; }
  double t_span() const { return t1 - t0; }
  bool contains(double s, double t) const { return s >= s0 && s <= s1 && t >= t0 && t <= t1; }
};

struct SecondDerivatives {
  Vec3 ss, st, tt;
};

/// Position and derivatives of a chart up to second order at one parameter point.
struct ChartJet {
  Vec3 r, r_s, r_t, r_ss, r_st, r_tt;
};

/// A parametric patch r(s,t) covering a closed surface.
///
/// The derivative maps are optional; when absent, evaluate_jet falls back to
/// central differences. `orientation` is +1 when r_s x r_t points out of the
/// enclosed body and -1 otherwise. `genus` is the declared topology of the
/// closed surface the chart parametrizes.
struct SurfaceChart {
  using PositionFn = std::function<Vec3(double, double)>;
  using FirstFn = std::function<std::pair<Vec3, Vec3>(double, double)>;
  using SecondFn = std::function<SecondDerivatives(double, double)>;

  std::string name;
  ParamDomain domain;
  bool periodic_s = false;
  bool periodic_t = false;
  PositionFn position;
  FirstFn first_derivs;
  SecondFn second_derivs;
  int genus = 0;
  int orientation = 1;

  bool has_analytic_derivatives() const {
    return static_cast<bool>(first_derivs) && static_cast<bool>(second_derivs);
  }
};

/// Step used by the finite-difference fallback when the caller does not pass
/// one: 1e-3 times the lattice spacing of a 64-node grid over the domain.
double default_fd_step(const SurfaceChart& chart);

/// Evaluates position and derivatives. Analytic maps are used when present;
/// otherwise second-order central differences with step `fd_step`
/// (default_fd_step when `fd_step <= 0`).
ChartJet evaluate_jet(const SurfaceChart& chart, double s, double t, double fd_step = 0.0);

/// Central-difference jet from the position map alone, ignoring any analytic
/// derivatives. Exposed so the analytic maps can be checked against it.
ChartJet finite_difference_jet(const SurfaceChart& chart, double s, double t, double h);

/// Drops the analytic derivative maps, forcing the finite-difference path.
SurfaceChart without_analytic_derivatives(SurfaceChart chart);

// Built-in charts. All carry analytic first and second derivatives and are
// oriented so that the node normal points outward.

/// Round sphere of radius rho; s = colatitude in (0, pi), t = longitude.
SurfaceChart sphere(double rho = 1.0);
/// Axis-aligned ellipsoid with semi-axes a, b, c; same parameters as sphere().
SurfaceChart ellipsoid(double a, double b, double c);
/// Torus of revolution; s = angle about the z axis, t = angle around the tube.
/// Requires R > r > 0.
SurfaceChart torus(double major_radius, double minor_radius);
/// Torus with generating circle of radius 1 centered at distance sqrt(2).
SurfaceChart clifford_torus();
/// Inverse stereographic projection of the unit sphere from the north pole,
/// restricted to the square [-extent, extent]^2. Exactly conformal; only
/// meant for pointwise evaluation, not for global quadrature.
SurfaceChart stereographic_sphere(double extent = 2.0);

}  // namespace npweyl
