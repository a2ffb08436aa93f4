#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "decwave/error.hpp"
#include "decwave/media.hpp"
#include "decwave/mesh.hpp"
#include "decwave/off_io.hpp"
#include "decwave/solver.hpp"
#include "decwave/source.hpp"

namespace decwave {

/// A location given either as coordinates (snapped to the nearest vertex) or as a vertex index.
struct Location {
  std::optional<Point> point;
  std::optional<std::size_t> vertex;

  std::size_t resolve(const SimplicialMesh& mesh) const {
    if (vertex) {
      if (*vertex >= mesh.vertex_count()) throw Error("vertex " + std::to_string(*vertex) + " out of range");
      return *vertex;
    }
    return mesh.nearest_vertex(*point);
  }
};

struct SourceConfig {
  std::vector<Location> at;
  double amplitude = 1.0;
  double t0 = 0.0;
  double sigma = 1.0;
  double omega = 1.0;
  SourceMode mode = SourceMode::Additive;
};

struct SimulationConfig {
  std::filesystem::path mesh_path;
  Scheme scheme = Scheme::Explicit;
  std::optional<double> dt;
  double dt_factor = 0.9;  ///< fraction of the stability bound, used when dt is unset
  std::size_t steps = 0;
  std::size_t output_every = 0;
  std::filesystem::path output_dir = "output";
  Boundary boundary = Boundary::Natural;
  bool strict_mesh = false;
  RegionSpec media;
  std::optional<SourceConfig> source;
  std::vector<Location> probes;
  LinearSolveConfig linear_solver;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class ConfigParser {
 public:
  explicit ConfigParser(std::filesystem::path base) : base_(std::move(base)) {}

  SimulationConfig parse(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string_view s = raw;
      if (const auto c = s.find_first_of("#;"); c != std::string_view::npos) s = s.substr(0, c);
      s = trim(s);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("unterminated section header", line_);
        open_section(std::string(trim(s.substr(1, s.size() - 2))));
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_);
      const std::string key(trim(s.substr(0, eq)));
      const std::string value(trim(s.substr(eq + 1)));
      if (key.empty()) throw ParseError("empty key", line_);
      if (value.empty()) throw ParseError("missing value for '" + key + "'", line_);
      if (!seen_.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_);
      assign(key, value);
    }
    return finish();
  }

 private:
  enum class Section { Top, Material, Region, Source, Probe };

  struct PendingRegion {
    std::size_t line = 0;
    std::optional<std::string> shape;
    std::optional<Point> min, max, center;
    std::optional<double> radius, c0, rho0, delta, beta;
  };

  struct PendingProbe {
    std::size_t line = 0;
    Location at;
  };

  void open_section(const std::string& name) {
    seen_.clear();
    if (name == "simulation") {
      if (top_reopened_) throw ParseError("duplicate [simulation] section", line_);
      top_reopened_ = true;
      section_ = Section::Top;
      seen_ = top_seen_;
    } else if (name == "material") {
      if (material_seen_) throw ParseError("duplicate [material] section", line_);
      material_seen_ = true;
      section_ = Section::Material;
    } else if (name == "region") {
      section_ = Section::Region;
      regions_.push_back({line_, {}, {}, {}, {}, {}, {}, {}, {}, {}});
    } else if (name == "source") {
      if (cfg_.source) throw ParseError("duplicate [source] section", line_);
      cfg_.source.emplace();
      source_line_ = line_;
      section_ = Section::Source;
    } else if (name == "probe") {
      section_ = Section::Probe;
      probes_.push_back({line_, {}});
    } else {
      throw ParseError("unknown section [" + name + "]", line_);
    }
  }

  double real(const std::string& v) const {
    double out = 0.0;
    if (!parse_number(std::string_view(v), out) || !std::isfinite(out))
      throw ParseError("invalid number '" + v + "'", line_);
    return out;
  }

  std::size_t count(const std::string& v) const {
    std::size_t out = 0;
    if (!parse_number(std::string_view(v), out)) throw ParseError("invalid non-negative integer '" + v + "'", line_);
    return out;
  }

  std::vector<std::string_view> list(const std::string& v) const {
    std::string norm = v;
    for (char& ch : norm)
      if (ch == ',') ch = ' ';
    buffer_ = std::move(norm);
    return split_ws(buffer_);
  }

  Point point(const std::string& v) const {
    const auto t = list(v);
    if (t.size() != 3) throw ParseError("expected three coordinates", line_);
    Point p;
    for (int k = 0; k < 3; ++k) p[k] = real(std::string(t[k]));
    return p;
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("invalid boolean '" + v + "'", line_);
  }

  void assign(const std::string& key, const std::string& v) {
    switch (section_) {
      case Section::Top: return assign_top(key, v);
      case Section::Material: return assign_material(key, v);
      case Section::Region: return assign_region(key, v);
      case Section::Source: return assign_source(key, v);
      case Section::Probe: return assign_probe(key, v);
    }
  }

  void assign_top(const std::string& key, const std::string& v) {
    top_seen_.insert(key);
    if (key == "mesh") {
      cfg_.mesh_path = base_ / v;
      mesh_given_ = true;
    } else if (key == "scheme") {
      const auto s = parse_scheme(v);
      if (!s) throw ParseError("unknown scheme '" + v + "' (explicit, implicit, semi_implicit)", line_);
      cfg_.scheme = *s;
    } else if (key == "dt") {
      if (dt_factor_given_) throw ParseError("'dt' conflicts with 'dt_factor'; give only one", line_);
      cfg_.dt = real(v);
      if (!(*cfg_.dt > 0.0)) throw ParseError("dt must be positive", line_);
    } else if (key == "dt_factor") {
      if (cfg_.dt) throw ParseError("'dt_factor' conflicts with 'dt'; give only one", line_);
      cfg_.dt_factor = real(v);
      dt_factor_given_ = true;
      if (!(cfg_.dt_factor > 0.0)) throw ParseError("dt_factor must be positive", line_);
    } else if (key == "steps") {
      cfg_.steps = count(v);
      if (cfg_.steps < 1) throw ParseError("steps must be at least 1", line_);
      steps_given_ = true;
    } else if (key == "output_every") {
      cfg_.output_every = count(v);
      if (cfg_.output_every < 1) throw ParseError("output_every must be at least 1", line_);
    } else if (key == "output_dir") {
      cfg_.output_dir = base_ / v;
    } else if (key == "boundary") {
      const auto b = parse_boundary(v);
      if (!b) throw ParseError("unknown boundary '" + v + "' (natural, dirichlet_zero)", line_);
      cfg_.boundary = *b;
    } else if (key == "strict_mesh") {
      cfg_.strict_mesh = boolean(v);
    } else if (key == "cg_tolerance") {
      cfg_.linear_solver.tolerance = real(v);
      if (!(cfg_.linear_solver.tolerance > 0.0 && cfg_.linear_solver.tolerance < 1.0))
        throw ParseError("cg_tolerance must lie in (0, 1)", line_);
    } else if (key == "cg_max_iterations") {
      cfg_.linear_solver.max_iterations = count(v);
      if (*cfg_.linear_solver.max_iterations < 1) throw ParseError("cg_max_iterations must be at least 1", line_);
    } else {
      throw ParseError("unknown key '" + key + "'", line_);
    }
  }

  void assign_material(const std::string& key, const std::string& v) {
    MaterialParams& m = cfg_.media.fallback;
    if (key == "c0") m.c0 = real(v);
    else if (key == "rho0") m.rho0 = real(v);
    else if (key == "delta") m.delta = real(v);
    else if (key == "beta") m.beta = real(v);
    else throw ParseError("unknown key '" + key + "' in [material]", line_);
    try {
      m.validate();
    } catch (const Error& e) {
      throw ParseError(e.what(), line_);
    }
  }

  void assign_region(const std::string& key, const std::string& v) {
    PendingRegion& r = regions_.back();
    if (key == "shape") {
      if (v != "box" && v != "sphere") throw ParseError("region shape must be 'box' or 'sphere'", line_);
      r.shape = v;
    } else if (key == "min") r.min = point(v);
    else if (key == "max") r.max = point(v);
    else if (key == "center") r.center = point(v);
    else if (key == "radius") r.radius = real(v);
    else if (key == "c0") r.c0 = real(v);
    else if (key == "rho0") r.rho0 = real(v);
    else if (key == "delta") r.delta = real(v);
    else if (key == "beta") r.beta = real(v);
    else throw ParseError("unknown key '" + key + "' in [region]", line_);
  }

  void assign_source(const std::string& key, const std::string& v) {
    SourceConfig& s = *cfg_.source;
    if (key == "point") {
      s.at.push_back({point(v), std::nullopt});
    } else if (key == "vertices") {
      for (auto tok : list(v)) s.at.push_back({std::nullopt, count(std::string(tok))});
    } else if (key == "amplitude") s.amplitude = real(v);
    else if (key == "t0") s.t0 = real(v);
    else if (key == "sigma") {
      s.sigma = real(v);
      if (!(s.sigma > 0.0)) throw ParseError("sigma must be positive", line_);
    } else if (key == "omega") s.omega = real(v);
    else if (key == "mode") {
      if (v == "additive") s.mode = SourceMode::Additive;
      else if (v == "hard") s.mode = SourceMode::Hard;
      else throw ParseError("source mode must be 'additive' or 'hard'", line_);
    } else {
      throw ParseError("unknown key '" + key + "' in [source]", line_);
    }
  }

  void assign_probe(const std::string& key, const std::string& v) {
    Location& at = probes_.back().at;
    if (key == "point") at.point = point(v);
    else if (key == "vertex") at.vertex = count(v);
    else throw ParseError("unknown key '" + key + "' in [probe]", line_);
  }

  SimulationConfig finish() {
    if (!mesh_given_) throw ParseError("missing required key 'mesh'", line_);
    if (!steps_given_) throw ParseError("missing required key 'steps'", line_);
    if (cfg_.output_every == 0) cfg_.output_every = cfg_.steps;
    if (!top_seen_.contains("output_dir")) cfg_.output_dir = base_ / "output";
    cfg_.media.fallback.validate();

    for (const PendingRegion& r : regions_) {
      try {
        cfg_.media.overrides.push_back(build_region(r));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(std::string("region: ") + e.what(), r.line);
      }
    }
    if (cfg_.source && cfg_.source->at.empty())
      throw ParseError("source needs 'point' or 'vertices'", source_line_);
    for (const PendingProbe& p : probes_) {
      if (p.at.point.has_value() == p.at.vertex.has_value())
        throw ParseError("probe needs exactly one of 'point' or 'vertex'", p.line);
      cfg_.probes.push_back(p.at);
    }
    return cfg_;
  }

  RegionOverride build_region(const PendingRegion& r) const {
    if (!r.shape) throw ParseError("region needs 'shape'", r.line);
    MaterialParams m = cfg_.media.fallback;
    if (r.c0) m.c0 = *r.c0;
    if (r.rho0) m.rho0 = *r.rho0;
    if (r.delta) m.delta = *r.delta;
    if (r.beta) m.beta = *r.beta;
    m.validate();
    if (*r.shape == "box") {
      if (!r.min || !r.max || r.center || r.radius) throw ParseError("box region takes 'min' and 'max'", r.line);
      if (!(r.min->array() <= r.max->array()).all()) throw ParseError("box region has min > max", r.line);
      return {Box{*r.min, *r.max}, m};
    }
    if (!r.center || !r.radius || r.min || r.max)
      throw ParseError("sphere region takes 'center' and 'radius'", r.line);
    if (!(*r.radius > 0.0)) throw ParseError("sphere radius must be positive", r.line);
    return {Sphere{*r.center, *r.radius}, m};
  }

  std::filesystem::path base_;
  SimulationConfig cfg_;
  Section section_ = Section::Top;
  std::size_t line_ = 0;
  std::set<std::string> seen_;
  std::set<std::string> top_seen_;
  mutable std::string buffer_;
  bool top_reopened_ = false;
  bool material_seen_ = false;
  bool mesh_given_ = false;
  bool steps_given_ = false;
  bool dt_factor_given_ = false;
  std::size_t source_line_ = 0;
  std::vector<PendingRegion> regions_;
  std::vector<PendingProbe> probes_;
};

}  // namespace detail

/// Parses the key-value configuration format. Relative paths resolve against `base_dir`.
inline SimulationConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = ".") {
  return detail::ConfigParser(base_dir).parse(in);
}

inline SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  return parse_config(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace decwave
