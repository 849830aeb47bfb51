#pragma once

#include <Eigen/Dense>

#include <string>

#include "platevem/geometry.hpp"
#include "platevem/study.hpp"

namespace platevem {

/// Writes "step,ndofs,hmax,lambda_1..k,err_1..k,eta2,xi2,j2,s2,eff_1..k,
/// rate_err,rate_eta2" with 17-significant-digit floats and NA for undefined
/// cells.
void write_history_csv(const StudyHistory& history, const std::string& path);
std::string history_csv_string(const StudyHistory& history);

/// Legacy-VTK polygon snapshot: mesh vertices lifted by the value DoF of u_h
/// (full 3V DoF vector), with the same scalar attached as point data.
void export_snapshot(const Mesh& mesh, const Eigen::VectorXd& full_dofs, const std::string& path);

}  // namespace platevem
