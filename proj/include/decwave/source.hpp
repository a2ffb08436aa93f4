#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "decwave/error.hpp"

namespace decwave {

enum class SourceMode { Additive, Hard };

/// Gaussian-enveloped cosine burst injected at a set of vertices.
struct SourceSpec {
  std::vector<std::size_t> vertices;
  double amplitude = 1.0;  ///< A [Pa s]; the peak value is A / (sigma sqrt(2 pi))
  double t0 = 0.0;         ///< envelope center [s]
  double sigma = 1.0;      ///< envelope width [s]
  double omega = 1.0;      ///< carrier angular frequency [rad/s]
  SourceMode mode = SourceMode::Additive;

  double peak() const { return std::abs(amplitude) / (sigma * std::sqrt(2.0 * std::numbers::pi)); }

  void validate(std::size_t vertex_count) const {
    if (!(sigma > 0.0)) throw Error("source sigma must be positive");
    if (vertices.empty()) throw Error("source needs at least one injection vertex");
    for (std::size_t v : vertices)
      if (v >= vertex_count) throw Error("source vertex " + std::to_string(v) + " out of range");
  }
};

/// A / (sigma sqrt(2 pi)) exp(-(t - t0)^2 / (2 sigma^2)) cos(omega (t - t0)).
inline double source_signal(double t, const SourceSpec& spec) {
  const double s = t - spec.t0;
  return spec.amplitude / (spec.sigma * std::sqrt(2.0 * std::numbers::pi)) *
         std::exp(-s * s / (2.0 * spec.sigma * spec.sigma)) * std::cos(spec.omega * s);
}

inline const char* to_string(SourceMode m) { return m == SourceMode::Hard ? "hard" : "additive"; }

}  // namespace decwave
