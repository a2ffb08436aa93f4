#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "decwave/error.hpp"
#include "decwave/mesh.hpp"

namespace decwave {

/// Physical constants of the Westervelt equation at one point.
struct MaterialParams {
  double c0 = 340.0;      ///< small-signal sound speed [m/s]
  double rho0 = 10000.0;  ///< ambient density [kg/m^3]
  double delta = 0.01;    ///< diffusivity of sound [m^2/s]
  double beta = 1.0;      ///< coefficient of nonlinearity

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;

  void validate() const {
    if (!(c0 > 0.0)) throw Error("c0 must be positive");
    if (!(rho0 > 0.0)) throw Error("rho0 must be positive");
    if (!(delta >= 0.0)) throw Error("delta must be non-negative");
    if (!std::isfinite(beta)) throw Error("beta must be finite");
  }
};

/// Closed axis-aligned box.
struct Box {
  Point min;
  Point max;

  bool contains(const Point& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

/// Closed ball.
struct Sphere {
  Point center;
  double radius = 1.0;

  bool contains(const Point& p) const { return (p - center).norm() <= radius; }
};

using Region = std::variant<Box, Sphere>;

inline bool contains(const Region& region, const Point& p) {
  return std::visit([&](const auto& r) { return r.contains(p); }, region);
}

struct RegionOverride {
  Region region;
  MaterialParams params;
};

struct RegionSpec {
  MaterialParams fallback;
  std::vector<RegionOverride> overrides;

  void validate() const {
    fallback.validate();
    for (const auto& o : overrides) {
      o.params.validate();
      if (const auto* box = std::get_if<Box>(&o.region)) {
        if (!(box->min.array() <= box->max.array()).all()) throw Error("region box has min > max");
      } else if (!(std::get<Sphere>(o.region).radius > 0.0)) {
        throw Error("region sphere radius must be positive");
      }
    }
  }
};

/// Per-vertex material parameters.
class MaterialField {
 public:
  MaterialField() = default;
  explicit MaterialField(std::vector<MaterialParams> params) : params_(std::move(params)) {
    for (const auto& p : params_) p.validate();
  }

  /// Same parameters at every vertex.
  static MaterialField uniform(std::size_t vertex_count, const MaterialParams& params) {
    return MaterialField(std::vector<MaterialParams>(vertex_count, params));
  }

  std::size_t size() const { return params_.size(); }
  const MaterialParams& operator[](std::size_t v) const { return params_[v]; }
  const std::vector<MaterialParams>& params() const { return params_; }

 private:
  std::vector<MaterialParams> params_;
};

/// Each vertex takes the parameters of the last override containing it, else the fallback.
inline MaterialField assign_regions(const SimplicialMesh& mesh, const RegionSpec& spec) {
  spec.validate();
  std::vector<MaterialParams> out(mesh.vertex_count(), spec.fallback);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    for (const auto& o : spec.overrides)
      if (contains(o.region, mesh.vertex(v))) out[v] = o.params;
  return MaterialField(std::move(out));
}

inline const MaterialParams& material_at(const MaterialField& field, std::size_t v) {
  if (v >= field.size())
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range for material field of size " +
                            std::to_string(field.size()));
  return field[v];
}

}  // namespace decwave
