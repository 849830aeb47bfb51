#include "platevem/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace platevem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_int(const std::string& s, long& out) {
  char* end = nullptr;
  out = std::strtol(s.c_str(), &end, 10);
  return end && *end == '\0' && !s.empty();
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && !s.empty();
}

}  // namespace

double parse_alpha(const std::string& token) {
  const auto slash = token.find('/');
  double value = 0.0;
  if (slash == std::string::npos) {
    if (!parse_double(trim(token), value))
      throw ConfigError("invalid alpha value '" + token + "'");
    return value;
  }
  double num = 0.0, den = 0.0;
  if (!parse_double(trim(token.substr(0, slash)), num) ||
      !parse_double(trim(token.substr(slash + 1)), den) || den == 0.0)
    throw ConfigError("invalid alpha fraction '" + token + "'");
  return num / den;
}

RunConfig parse_run_config_text(const std::string& text, const std::string& context) {
  RunConfig cfg;
  std::vector<std::string> errors;
  auto bad = [&errors](const std::string& key, const std::string& why) {
    errors.push_back(key + ": " + why);
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad("line " + std::to_string(lineno), "expected 'key = value'");
      continue;
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "problem") {
      const std::string v = lower(value);
      if (v == "cp" || v == "clamped")
        cfg.problem = BoundaryCondition::Clamped;
      else if (v == "ssp" || v == "simply_supported")
        cfg.problem = BoundaryCondition::SimplySupported;
      else
        bad(key, "expected CP or SSP, got '" + value + "'");
    } else if (key == "geometry") {
      const std::string v = lower(value);
      if (v == "square")
        cfg.geometry = RunConfig::Geometry::Square;
      else if (v == "crossed")
        cfg.geometry = RunConfig::Geometry::Crossed;
      else if (v == "lshape")
        cfg.geometry = RunConfig::Geometry::Lshape;
      else if (v == "voronoi")
        cfg.geometry = RunConfig::Geometry::Voronoi;
      else if (v.rfind("file:", 0) == 0) {
        cfg.geometry = RunConfig::Geometry::File;
        cfg.mesh_file = trim(value.substr(5));
        if (cfg.mesh_file.empty()) bad(key, "file: requires a path");
      } else
        bad(key, "expected square|crossed|lshape|voronoi|file:<path>, got '" + value + "'");
    } else if (key == "n") {
      long v;
      if (!parse_int(value, v) || v < 1)
        bad(key, "expected an integer >= 1, got '" + value + "'");
      else
        cfg.n = static_cast<int>(v);
    } else if (key == "lloyd_iters") {
      long v;
      if (!parse_int(value, v) || v < 0)
        bad(key, "expected an integer >= 0, got '" + value + "'");
      else
        cfg.lloyd_iters = static_cast<int>(v);
    } else if (key == "mode") {
      const std::string v = lower(value);
      if (v == "uniform")
        cfg.adaptive = false;
      else if (v == "adaptive")
        cfg.adaptive = true;
      else
        bad(key, "expected uniform or adaptive, got '" + value + "'");
    } else if (key == "num_eigs") {
      long v;
      if (!parse_int(value, v) || v < 1)
        bad(key, "expected an integer >= 1, got '" + value + "'");
      else
        cfg.num_eigs = static_cast<int>(v);
    } else if (key == "dorfler_delta") {
      double v;
      if (!parse_double(value, v) || !(v >= 0.0 && v <= 1.0))
        bad(key, "expected a value in [0,1], got '" + value + "'");
      else
        cfg.dorfler_delta = v;
    } else if (key == "alpha_delta" || key == "alpha_0") {
      double v = 0.0;
      bool ok = true;
      try {
        v = parse_alpha(value);
      } catch (const ConfigError&) {
        ok = false;
      }
      if (!ok || !(v > 0.0))
        bad(key, "expected a positive value, got '" + value + "'");
      else
        (key == "alpha_delta" ? cfg.alpha_delta : cfg.alpha_0) = v;
    } else if (key == "max_steps") {
      long v;
      if (!parse_int(value, v) || v < 0)
        bad(key, "expected an integer >= 0, got '" + value + "'");
      else
        cfg.max_steps = static_cast<int>(v);
    } else if (key == "max_dofs") {
      long v;
      if (!parse_int(value, v) || v < 1)
        bad(key, "expected an integer >= 1, got '" + value + "'");
      else
        cfg.max_dofs = static_cast<int>(v);
    } else if (key == "exact_eigenvalues") {
      cfg.exact_eigenvalues.clear();
      std::string item;
      std::istringstream vs(value);
      bool ok = true;
      while (std::getline(vs, item, ',')) {
        std::istringstream ws(item);
        std::string tok;
        while (ws >> tok) {
          double v;
          if (!parse_double(tok, v) || !(v > 0.0)) ok = false;
          else cfg.exact_eigenvalues.push_back(v);
        }
      }
      if (!ok || cfg.exact_eigenvalues.empty())
        bad(key, "expected positive numbers, got '" + value + "'");
    } else if (key == "output_dir") {
      if (value.empty())
        bad(key, "must not be empty");
      else
        cfg.output_dir = value;
    } else if (key == "rng_seed") {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
      if (!end || *end != '\0' || value.empty())
        bad(key, "expected an unsigned integer, got '" + value + "'");
      else
        cfg.rng_seed = v;
    } else {
      bad(key, "unknown key");
    }
  }

  if (cfg.geometry == RunConfig::Geometry::Lshape && cfg.n % 2 != 0)
    bad("n", "lshape geometry requires an even subdivision count");

  if (!errors.empty()) {
    std::string msg = "invalid config " + context + ":";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_run_config_text(text, path);
}

}  // namespace platevem
