#include "platevem/driver.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include "platevem/study_io.hpp"

namespace platevem {

namespace fs = std::filesystem;

Mesh build_initial_mesh(const RunConfig& cfg) {
  switch (cfg.geometry) {
    case RunConfig::Geometry::Square:
      return generate_structured(StructuredKind::Square, cfg.n);
    case RunConfig::Geometry::Crossed:
      return generate_structured(StructuredKind::Crossed, cfg.n);
    case RunConfig::Geometry::Lshape:
      return generate_structured(StructuredKind::Lshape, cfg.n);
    case RunConfig::Geometry::Voronoi:
      return generate_voronoi(cfg.n, cfg.lloyd_iters, cfg.rng_seed);
    case RunConfig::Geometry::File:
      return load_mesh(cfg.mesh_file);
  }
  throw std::logic_error("unhandled geometry");
}

namespace {

StudyParams params_from(const RunConfig& cfg) {
  StudyParams p;
  p.bc = cfg.problem;
  p.num_eigs = cfg.num_eigs;
  p.adaptive = cfg.adaptive;
  p.dorfler_delta = cfg.dorfler_delta;
  p.alpha_delta = cfg.alpha_delta;
  p.alpha_0 = cfg.alpha_0;
  p.max_steps = cfg.max_steps;
  p.max_dofs = cfg.max_dofs;
  p.exact_eigenvalues = cfg.exact_eigenvalues;
  return p;
}

void print_summary(const StudyHistory& history) {
  std::printf("%4s %8s %10s %16s %12s %8s %8s\n", "step", "ndofs", "hmax", "lambda_1", "eta2",
              "r(err)", "r(eta2)");
  for (const StudyStep& s : history.steps) {
    std::printf("%4d %8d %10.4g %16.10g %12.5g ", s.step, s.ndofs, s.hmax,
                s.lambdas.empty() ? 0.0 : s.lambdas[0], s.eta2);
    if (s.rate_err) std::printf("%8.3f ", *s.rate_err); else std::printf("%8s ", "-");
    if (s.rate_eta2) std::printf("%8.3f\n", *s.rate_eta2); else std::printf("%8s\n", "-");
  }
}

}  // namespace

StudyHistory run(const RunConfig& cfg) {
  const Mesh initial = build_initial_mesh(cfg);
  fs::create_directories(cfg.output_dir);

  const QualityReport quality = quality_report(initial);
  int non_star = 0;
  for (bool s : quality.star_shaped)
    if (!s) ++non_star;
  std::string star_note;
  if (non_star > 0) star_note = " [" + std::to_string(non_star) + " non-star elements]";
  std::printf("initial mesh: %d vertices, %d polygons, min edge ratio %.4g%s\n",
              initial.num_vertices(), initial.num_polygons(), quality.min_edge_ratio,
              star_note.c_str());

  StudyParams params = params_from(cfg);
  const fs::path out_dir(cfg.output_dir);
  params.on_step = [&out_dir](int step, const Mesh& mesh, const Eigen::VectorXd& u_full) {
    char name[64];
    std::snprintf(name, sizeof(name), "mesh_step%03d.txt", step);
    save_mesh(mesh, (out_dir / name).string());
    std::snprintf(name, sizeof(name), "eig_step%03d.vtk", step);
    export_snapshot(mesh, u_full, (out_dir / name).string());
  };

  const StudyHistory history = run_study(initial, params);
  write_history_csv(history, (out_dir / "history.csv").string());
  print_summary(history);
  return history;
}

std::vector<StudyHistory> run_sweep(const RunConfig& cfg, const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("run_sweep: alpha list is empty");
  const Mesh initial = build_initial_mesh(cfg);
  fs::create_directories(cfg.output_dir);
  const fs::path out_dir(cfg.output_dir);

  std::vector<StudyHistory> histories;
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw std::invalid_argument("run_sweep: alphas must be positive");
    StudyParams params = params_from(cfg);
    params.alpha_delta = alpha;
    params.alpha_0 = alpha;
    std::printf("== alpha = %.17g ==\n", alpha);
    const StudyHistory history = run_study(initial, params);
    char name[64];
    std::snprintf(name, sizeof(name), "history_alpha_%.10g.csv", alpha);
    write_history_csv(history, (out_dir / name).string());
    print_summary(history);
    histories.push_back(history);
  }
  return histories;
}

}  // namespace platevem
