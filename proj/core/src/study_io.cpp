#include "platevem/study_io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace platevem {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

}  // namespace

std::string history_csv_string(const StudyHistory& history) {
  const int k = history.num_eigs;
  std::ostringstream out;
  out << "step,ndofs,hmax";
  for (int i = 1; i <= k; ++i) out << ",lambda_" << i;
  for (int i = 1; i <= k; ++i) out << ",err_" << i;
  out << ",eta2,xi2,j2,s2";
  for (int i = 1; i <= k; ++i) out << ",eff_" << i;
  out << ",rate_err,rate_eta2\n";

  for (const StudyStep& s : history.steps) {
    out << s.step << ',' << s.ndofs << ',' << fmt(s.hmax);
    for (int i = 0; i < k; ++i)
      out << ',' << (i < static_cast<int>(s.lambdas.size()) ? fmt(s.lambdas[i]) : "NA");
    for (int i = 0; i < k; ++i)
      out << ','
          << (i < static_cast<int>(s.errors.size()) ? fmt(s.errors[i]) : std::string("NA"));
    out << ',' << fmt(s.eta2) << ',' << fmt(s.xi2) << ',' << fmt(s.jump2) << ',' << fmt(s.stab2);
    for (int i = 0; i < k; ++i)
      out << ','
          << (i < static_cast<int>(s.effectivities.size()) ? fmt(s.effectivities[i])
                                                           : std::string("NA"));
    out << ',' << fmt(s.rate_err) << ',' << fmt(s.rate_eta2) << '\n';
  }
  return out.str();
}

void write_history_csv(const StudyHistory& history, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << history_csv_string(history);
  if (!out) throw std::runtime_error("failed writing " + path);
}

void export_snapshot(const Mesh& mesh, const Eigen::VectorXd& full_dofs, const std::string& path) {
  if (full_dofs.size() != 3 * mesh.num_vertices())
    throw std::invalid_argument("export_snapshot: DoF vector has wrong length");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  out << "# vtk DataFile Version 3.0\n";
  out << "plate eigenfunction snapshot\n";
  out << "ASCII\n";
  out << "DATASET POLYDATA\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << fmt(mesh.vertex(v).x()) << ' ' << fmt(mesh.vertex(v).y()) << ' ' << fmt(full_dofs(3 * v))
        << '\n';

  std::size_t list_size = 0;
  for (const auto& poly : mesh.polygons()) list_size += poly.size() + 1;
  out << "POLYGONS " << mesh.num_polygons() << ' ' << list_size << '\n';
  for (const auto& poly : mesh.polygons()) {
    out << poly.size();
    for (int v : poly) out << ' ' << v;
    out << '\n';
  }

  out << "POINT_DATA " << mesh.num_vertices() << '\n';
  out << "SCALARS u double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) out << fmt(full_dofs(3 * v)) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace platevem
