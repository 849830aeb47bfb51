// Command-line front end: eigenvalue refinement studies for the C1 VEM plate
// vibration solver. Subcommands:
//   platevem run <config>                 execute a configured study
//   platevem mesh <kind> <n> -o <file>    generate and save a mesh
//   platevem sweep <config> --alphas ...  stabilization-parameter sweep

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "platevem/driver.hpp"
#include "platevem/geometry.hpp"
#include "platevem/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"C1 virtual element solver for the plate vibration eigenproblem"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute the study described by a config file");
  run_cmd->add_option("config", config_path, "key = value config file")->required();

  std::string mesh_kind;
  int mesh_n = 4;
  std::string mesh_out;
  std::uint64_t mesh_seed = 1234;
  int mesh_lloyd = 3;
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a mesh and write it to a file");
  mesh_cmd->add_option("kind", mesh_kind, "square|crossed|lshape|voronoi")
      ->required()
      ->check(CLI::IsMember({"square", "crossed", "lshape", "voronoi"}));
  mesh_cmd->add_option("n", mesh_n, "subdivision count (seed count for voronoi)")->required();
  mesh_cmd->add_option("-o,--output", mesh_out, "output mesh file")->required();
  mesh_cmd->add_option("--seed", mesh_seed, "voronoi RNG seed");
  mesh_cmd->add_option("--lloyd", mesh_lloyd, "voronoi Lloyd iterations");

  std::string sweep_config;
  std::vector<std::string> alpha_tokens;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the study for several stabilization alphas");
  sweep_cmd->add_option("config", sweep_config, "key = value config file")->required();
  sweep_cmd->add_option("--alphas", alpha_tokens, "alpha values, e.g. 1/256,1/4,1,4,256")
      ->required()
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      platevem::run(platevem::parse_run_config(config_path));
    } else if (*mesh_cmd) {
      platevem::Mesh mesh = [&] {
        if (mesh_kind == "voronoi") return platevem::generate_voronoi(mesh_n, mesh_lloyd, mesh_seed);
        if (mesh_kind == "square")
          return platevem::generate_structured(platevem::StructuredKind::Square, mesh_n);
        if (mesh_kind == "crossed")
          return platevem::generate_structured(platevem::StructuredKind::Crossed, mesh_n);
        return platevem::generate_structured(platevem::StructuredKind::Lshape, mesh_n);
      }();
      platevem::save_mesh(mesh, mesh_out);
      std::printf("wrote %s: %d vertices, %d polygons, %d edges\n", mesh_out.c_str(),
                  mesh.num_vertices(), mesh.num_polygons(), mesh.num_edges());
    } else if (*sweep_cmd) {
      std::vector<double> alphas;
      for (const auto& tok : alpha_tokens) alphas.push_back(platevem::parse_alpha(tok));
      platevem::run_sweep(platevem::parse_run_config(sweep_config), alphas);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
