#pragma once

#include <stdexcept>
#include <string>

namespace npweyl {

/// Base of every error raised by the library. The category drives the
/// command-line exit code (config = 1, geometry = 2, numerics = 3).
class Error : public std::runtime_error {
 public:
  enum class Category { Config = 1, Geometry = 2, Numerics = 3 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  Category category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Category::Config, what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(Category::Geometry, what) {}
};

/// |r_s x r_t| vanished, or the metric is not positive definite.
class RegularityError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Curvature data that cannot come from a closed surface (H^2 < K, 3W - 2 pi chi < 0).
class InvalidGeometryError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class MeshError : public GeometryError {
 public:
  enum class Kind { Parse, OpenSurface, NonManifold };

  MeshError(Kind kind, const std::string& what) : GeometryError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Inversion center on (or numerically on) the surface.
class InadmissibleMapError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NumericsError : public Error {
 public:
  explicit NumericsError(const std::string& what) : Error(Category::Numerics, what) {}
};

}  // namespace npweyl
