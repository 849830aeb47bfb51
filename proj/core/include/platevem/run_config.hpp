#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "platevem/dof_map.hpp"

namespace platevem {

/// Study configuration, parsed from a flat "key = value" file with '#'
/// comments. See README for the key list.
struct RunConfig {
  BoundaryCondition problem = BoundaryCondition::Clamped;

  enum class Geometry { Square, Crossed, Lshape, Voronoi, File };
  Geometry geometry = Geometry::Square;
  std::string mesh_file;  ///< for Geometry::File

  int n = 4;  ///< subdivision count, or seed count for voronoi
  int lloyd_iters = 3;

  bool adaptive = false;
  int num_eigs = 1;
  double dorfler_delta = 0.5;
  double alpha_delta = 1.0;
  double alpha_0 = 1.0;
  int max_steps = 3;
  int max_dofs = 30000;
  std::vector<double> exact_eigenvalues;
  std::string output_dir = "out";
  std::uint64_t rng_seed = 1234;
};

/// Thrown on malformed configs; the message lists every offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig parse_run_config_text(const std::string& text, const std::string& context = "<config>");
RunConfig parse_run_config(const std::string& path);

/// Parses "0.25" or "1/4"; used for stabilization sweep lists.
double parse_alpha(const std::string& token);

}  // namespace platevem
