#pragma once

#include <string>
#include <vector>

#include "platevem/run_config.hpp"
#include "platevem/study.hpp"

namespace platevem {

/// Builds the initial mesh named by the config (generators or file import).
Mesh build_initial_mesh(const RunConfig& cfg);

/// Executes the configured study and writes history.csv plus per-step mesh
/// and eigenfunction snapshots under output_dir. Returns the history.
StudyHistory run(const RunConfig& cfg);

/// Runs the study once per alpha with alpha_delta = alpha_0 = alpha, writing
/// history_alpha_<value>.csv per entry. Snapshots are skipped.
std::vector<StudyHistory> run_sweep(const RunConfig& cfg, const std::vector<double>& alphas);

}  // namespace platevem
