#pragma once

#include <chrono>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "decwave/config.hpp"
#include "decwave/dec.hpp"
#include "decwave/dual_metrics.hpp"
#include "decwave/format.hpp"
#include "decwave/media.hpp"
#include "decwave/mesh.hpp"
#include "decwave/off_io.hpp"
#include "decwave/probe.hpp"
#include "decwave/solver.hpp"
#include "decwave/source.hpp"
#include "decwave/vtk.hpp"

namespace decwave {

/// Everything a run needs before the time loop starts.
struct PreparedSimulation {
  SimplicialMesh mesh;
  DualMetrics metrics;
  WellCenteredReport quality;
  LaplacianOperator laplacian;
  MaterialField media;
  double stable_dt = 0.0;
  double dt = 0.0;
  std::optional<SourceSpec> source;
  std::vector<std::size_t> probe_vertices;
};

struct RunSummary {
  std::size_t steps_run = 0;
  double final_max_abs = 0.0;
  double wall_seconds = 0.0;
  double dt = 0.0;
  std::vector<std::filesystem::path> outputs;
};

/// Divergence threshold relative to the source peak.
inline constexpr double kDivergenceFactor = 1e12;

inline PreparedSimulation prepare_simulation(const SimulationConfig& cfg, std::ostream* log = nullptr) {
  PreparedSimulation sim;
  sim.mesh = load_mesh(cfg.mesh_path);
  sim.metrics = dual_metrics(sim.mesh);
  sim.quality = quality_report(sim.mesh, sim.metrics);
  if (sim.quality.has_exterior()) {
    const std::string msg = std::to_string(sim.quality.count(CircumcenterLocation::Exterior)) +
                            " triangles have exterior circumcenters (worst: triangle " +
                            std::to_string(*sim.quality.worst_triangle) + ")";
    if (cfg.strict_mesh) throw MeshError("mesh is not well-centered: " + msg, 0);
    if (log) *log << "warning: " << msg << "; continuing with signed dual areas\n";
  }
  sim.laplacian = assemble_laplacian(sim.mesh, sim.metrics);
  sim.media = assign_regions(sim.mesh, cfg.media);
  sim.stable_dt = stable_dt(sim.mesh, sim.metrics, sim.media);
  sim.dt = cfg.dt ? *cfg.dt : cfg.dt_factor * sim.stable_dt;

  if (cfg.source) {
    SourceSpec s;
    for (const Location& at : cfg.source->at) {
      const std::size_t v = at.resolve(sim.mesh);
      if (std::find(s.vertices.begin(), s.vertices.end(), v) == s.vertices.end()) s.vertices.push_back(v);
    }
    s.amplitude = cfg.source->amplitude;
    s.t0 = cfg.source->t0;
    s.sigma = cfg.source->sigma;
    s.omega = cfg.source->omega;
    s.mode = cfg.source->mode;
    s.validate(sim.mesh.vertex_count());
    sim.source = s;
  }
  for (const Location& at : cfg.probes) sim.probe_vertices.push_back(at.resolve(sim.mesh));
  return sim;
}

namespace detail {

inline std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06zu.vtk", step);
  return buf;
}

inline void write_manifest(const SimulationConfig& cfg, const PreparedSimulation& sim, const RunSummary& summary,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "# decwave run manifest\n";
  out << "mesh = " << cfg.mesh_path.string() << '\n';
  out << "vertices = " << sim.mesh.vertex_count() << '\n';
  out << "triangles = " << sim.mesh.triangle_count() << '\n';
  out << "exterior_circumcenters = " << sim.quality.count(CircumcenterLocation::Exterior) << '\n';
  out << "scheme = " << to_string(cfg.scheme) << '\n';
  out << "boundary = " << to_string(cfg.boundary) << '\n';
  out << "stable_dt = " << format_shortest(sim.stable_dt) << '\n';
  if (!cfg.dt) out << "dt_factor = " << format_shortest(cfg.dt_factor) << '\n';
  out << "dt = " << format_shortest(sim.dt) << '\n';
  out << "steps = " << cfg.steps << '\n';
  out << "output_every = " << cfg.output_every << '\n';
  const MaterialParams& m = cfg.media.fallback;
  out << "material = c0 " << format_shortest(m.c0) << " rho0 " << format_shortest(m.rho0) << " delta "
      << format_shortest(m.delta) << " beta " << format_shortest(m.beta) << '\n';
  out << "region_overrides = " << cfg.media.overrides.size() << '\n';
  if (sim.source) {
    const SourceSpec& s = *sim.source;
    out << "source_vertices =";
    for (std::size_t v : s.vertices) out << ' ' << v;
    out << "\nsource = amplitude " << format_shortest(s.amplitude) << " t0 " << format_shortest(s.t0) << " sigma "
        << format_shortest(s.sigma) << " omega " << format_shortest(s.omega) << " mode " << to_string(s.mode)
        << '\n';
  }
  if (!sim.probe_vertices.empty()) {
    out << "probe_vertices =";
    for (std::size_t v : sim.probe_vertices) out << ' ' << v;
    out << '\n';
  }
  out << "steps_run = " << summary.steps_run << '\n';
  out << "final_max_abs_pressure = " << format_shortest(summary.final_max_abs) << '\n';
  for (const auto& f : summary.outputs) out << "output = " << f.filename().string() << '\n';
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace detail

/// Runs the configured simulation: load, assemble, then loop
/// inject -> step -> record until `steps` steps are done. Writes snapshots,
/// probes and a manifest into the output directory.
inline RunSummary run_simulation(const SimulationConfig& cfg, std::ostream* log = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  const PreparedSimulation sim = prepare_simulation(cfg, log);

  std::filesystem::create_directories(cfg.output_dir);
  SolverState state = init_state(sim.mesh, sim.dt, cfg.scheme, cfg.boundary);
  if (sim.source && sim.source->peak() > 0.0) state.divergence_limit = kDivergenceFactor * sim.source->peak();
  Stepper stepper(sim.laplacian, sim.metrics, sim.media, sim.dt, cfg.scheme, cfg.linear_solver);

  RunSummary summary;
  summary.dt = sim.dt;
  std::vector<ProbeRecord> records;
  records.reserve(sim.probe_vertices.empty() ? 0 : cfg.steps);

  for (std::size_t k = 0; k < cfg.steps; ++k) {
    if (sim.source) inject_source(state, *sim.source, state.time());
    stepper.step(state);
    // A hard source prescribes the field at its vertices at every time level.
    if (sim.source && sim.source->mode == SourceMode::Hard) inject_source(state, *sim.source, state.time());

    if (!sim.probe_vertices.empty()) {
      ProbeRecord rec{state.step_index, state.time(), {}};
      for (std::size_t v : sim.probe_vertices) rec.values.push_back(state.latest()[static_cast<Eigen::Index>(v)]);
      records.push_back(std::move(rec));
    }
    if (state.step_index % cfg.output_every == 0) {
      const auto path = cfg.output_dir / detail::snapshot_name(state.step_index);
      write_snapshot(sim.mesh, state.latest(), path,
                     "decwave pressure step " + std::to_string(state.step_index) + " time " +
                         format_shortest(state.time()));
      summary.outputs.push_back(path);
    }
  }
  if (!sim.probe_vertices.empty()) {
    const auto path = cfg.output_dir / "probes.csv";
    write_probe(records, sim.probe_vertices.size(), path);
    summary.outputs.push_back(path);
  }
  summary.steps_run = state.step_index;
  summary.final_max_abs = state.latest().size() ? state.latest().cwiseAbs().maxCoeff() : 0.0;

  const auto manifest = cfg.output_dir / "manifest.txt";
  detail::write_manifest(cfg, sim, summary, manifest);
  summary.outputs.push_back(manifest);
  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace decwave
