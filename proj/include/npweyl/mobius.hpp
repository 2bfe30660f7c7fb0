#pragma once

#include "npweyl/chart.hpp"
#include "npweyl/mesh.hpp"

#include <Eigen/Core>

#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace npweyl {

struct Translation {
  Vec3 offset;
};

struct Scaling {
  double factor = 1.0;  // > 0
};

/// x -> c + rho^2 (x - c) / |x - c|^2
struct SphereInversion {
  Vec3 center;
  double radius = 1.0;  // > 0
};

using MobiusPrimitive = std::variant<Translation, Scaling, SphereInversion>;

/// Ordered composition; steps[0] is applied first.
struct MobiusMap {
  std::vector<MobiusPrimitive> steps;

  Vec3 operator()(const Vec3& x) const;
  MobiusMap& then(MobiusPrimitive step) {
    steps.push_back(step);
    return *this;
  }
};

Vec3 apply_primitive(const MobiusPrimitive& step, const Vec3& x);
/// Pushes a chart jet through one primitive using its analytic first and
/// second derivatives (chain rule).
ChartJet apply_primitive(const MobiusPrimitive& step, const ChartJet& jet);

/// Parses "translate:bx,by,bz", "scale:a" and "invert:cx,cy,cz,rho" steps
/// separated by ';'. Throws ConfigError on malformed input.
MobiusMap parse_mobius(std::string_view spec);
std::string to_string(const MobiusMap& map);

/// A random translation + scaling + inversion + translation composition whose
/// inversion center lies at 1.5 to 3 bounding radii from `center`, so it is
/// admissible for any surface inside the ball of `bounding_radius`.
MobiusMap random_mobius(std::mt19937_64& rng, const Vec3& center, double bounding_radius);

/// Distance from a point to the chart surface: lattice search refined by
/// Newton iteration on the squared distance.
double distance_to_surface(const SurfaceChart& chart, const Vec3& point);
double distance_to_surface(const TriangleMesh& mesh, const Vec3& point);

/// Largest distance between lattice samples of the chart.
double chart_diameter(const SurfaceChart& chart);

/// Maps the chart through the composition. Derivative maps are composed with
/// the chain rule, so curvature of the image is computed from its own jet.
/// Orientation is re-derived from the signed volume of the image. Throws
/// InadmissibleMapError when an inversion center lies within 1e-9 diameters of
/// the surface it is applied to.
SurfaceChart apply_mobius(const SurfaceChart& chart, const MobiusMap& map);
TriangleMesh apply_mobius(const TriangleMesh& mesh, const MobiusMap& map);

}  // namespace npweyl
