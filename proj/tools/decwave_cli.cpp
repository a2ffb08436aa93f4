// Command-line driver: run simulations, inspect meshes, report the stable time step.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "decwave/decwave.hpp"

namespace {

int run(const std::string& config_path, const std::string& output_dir) {
  decwave::SimulationConfig cfg = decwave::load_config(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  const decwave::RunSummary s = decwave::run_simulation(cfg, &std::cerr);
  std::cout << "steps_run = " << s.steps_run << '\n'
            << "dt = " << decwave::format_shortest(s.dt) << '\n'
            << "final_max_abs_pressure = " << decwave::format_shortest(s.final_max_abs) << '\n'
            << "wall_seconds = " << s.wall_seconds << '\n';
  for (const auto& f : s.outputs) std::cout << "output = " << f.string() << '\n';
  return 0;
}

int check_mesh(const std::string& mesh_path, bool strict) {
  const decwave::SimplicialMesh mesh = decwave::load_mesh(std::filesystem::path(mesh_path));
  const decwave::DualMetrics metrics = decwave::dual_metrics(mesh);
  const decwave::WellCenteredReport r = decwave::quality_report(mesh, metrics);
  std::size_t boundary_edges = 0;
  for (const auto& adj : mesh.edge_triangles()) boundary_edges += adj.is_boundary();
  double min_area = metrics.dual_area.front();
  for (double a : metrics.dual_area) min_area = std::min(min_area, a);

  using decwave::CircumcenterLocation;
  std::cout << "vertices = " << mesh.vertex_count() << '\n'
            << "edges = " << mesh.edge_count() << '\n'
            << "triangles = " << mesh.triangle_count() << '\n'
            << "boundary_edges = " << boundary_edges << '\n'
            << "surface_area = " << decwave::format_shortest(mesh.total_area()) << '\n'
            << "min_dual_area = " << decwave::format_shortest(min_area) << '\n'
            << "circumcenter_interior = " << r.count(CircumcenterLocation::Interior) << '\n'
            << "circumcenter_on_boundary = " << r.count(CircumcenterLocation::OnBoundary) << '\n'
            << "circumcenter_exterior = " << r.count(CircumcenterLocation::Exterior) << '\n'
            << "negative_dual_contributions = " << r.negative_contributions << '\n';
  if (r.worst_triangle) std::cout << "worst_triangle = " << *r.worst_triangle << '\n';
  if (strict && r.has_exterior()) {
    std::cerr << "error: mesh is not well-centered\n";
    return 2;
  }
  if (!(min_area > 0.0)) {
    std::cerr << "error: mesh has a nonpositive dual area\n";
    return 2;
  }
  return 0;
}

int stable_dt(const std::string& config_path) {
  const decwave::SimulationConfig cfg = decwave::load_config(config_path);
  const decwave::PreparedSimulation sim = decwave::prepare_simulation(cfg, &std::cerr);
  std::cout << "stable_dt = " << decwave::format_shortest(sim.stable_dt) << '\n'
            << "dt = " << decwave::format_shortest(sim.dt) << '\n';
  return 0;
}

int make_mesh(const std::string& kind, std::size_t n, double size, const std::string& out_path) {
  decwave::SimplicialMesh mesh;
  if (kind == "grid") {
    mesh = decwave::square_grid(n, size / static_cast<double>(n));
  } else if (kind == "icosphere") {
    mesh = decwave::icosphere(n, size);
  } else {
    std::cerr << "error: unknown mesh kind '" << kind << "' (grid, icosphere)\n";
    return 1;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 1;
  }
  decwave::write_off(mesh, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DEC solver for the Westervelt equation on triangle meshes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation described by a config file");
  run_cmd->add_option("--config", config_path, "Simulation config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--output-dir", output_dir, "Override the config's output directory");

  std::string mesh_path;
  bool strict = false;
  auto* check_cmd = app.add_subcommand("check-mesh", "Validate a mesh and report circumcenter quality");
  check_cmd->add_option("--mesh", mesh_path, "OFF mesh file")->required()->check(CLI::ExistingFile);
  check_cmd->add_flag("--strict", strict, "Fail when any circumcenter lies outside its triangle");

  std::string dt_config;
  auto* dt_cmd = app.add_subcommand("stable-dt", "Print the explicit-scheme stability bound for a config");
  dt_cmd->add_option("--config", dt_config, "Simulation config file")->required()->check(CLI::ExistingFile);

  std::string kind;
  std::size_t n = 32;
  double size = 1.0;
  std::string out_path;
  auto* mk_cmd = app.add_subcommand("make-mesh", "Write a generated grid or icosphere as OFF");
  mk_cmd->add_option("kind", kind, "grid | icosphere")->required();
  mk_cmd->add_option("-n", n, "Cells per side (grid) or subdivision levels (icosphere)");
  mk_cmd->add_option("--size", size, "Side length (grid) or radius (icosphere)");
  mk_cmd->add_option("--out", out_path, "Output OFF path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config_path, output_dir);
    if (*check_cmd) return check_mesh(mesh_path, strict);
    if (*dt_cmd) return stable_dt(dt_config);
    if (*mk_cmd) return make_mesh(kind, n, size, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
