#pragma once

#include "fractsob/checks.hpp"
#include "fractsob/experiments.hpp"
#include "fractsob/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fractsob::cli {

using nlohmann::json;

// A probe vertex: either an exact coordinate or a level-1 cell corner
// ("cell" is the 1-based map index, "corner" the 1-based boundary index).
struct VertexSelector {
  bool set = false;
  bool by_cell = false;
  int cell = 0, corner = 0;
  std::vector<std::string> coord;  // exact fraction strings
};

struct KernelSpec {
  std::string kind = "riesz";  // riesz | heat | resolvent
  double s = 0.8, t = 1.0, lambda = 1.0;
};

struct BumpConfig {
  std::vector<std::string> center;  // exact fraction strings
  std::string rho;
};

struct PhiConfig {
  std::string kind = "square";  // square | abs_power | affine
  double xi = 2.0, C = 1.0;
  double slope = 1.0, offset = 0.0;
};

struct SearchSpec {
  int L = 1;
  int n_max = 64;
};

// Validated flat view of a run configuration. Commands pick the fields they
// need and reject runs whose required fields are missing.
struct RunConfig {
  std::string fractal_type = "sg";
  int vicsek_L = 1, vicsek_N = 2;
  std::optional<int> level;
  std::string bc = "dirichlet";

  std::optional<double> s, alpha;
  double p = std::numeric_limits<double>::infinity();
  double Q = std::numeric_limits<double>::infinity();
  bool p_given = false, Q_given = false;

  VertexSelector q, x;
  std::optional<std::string> w;  // cell word, digit string over 1..J

  std::string u_source = "harmonic";
  std::vector<std::string> boundary;  // exact fraction strings
  std::optional<BumpConfig> bump;

  std::optional<int> m_lo, m_hi;
  std::vector<int> sup_levels;
  bool recompute_per_level = true;
  bool include_boundary = false;
  std::string f_kind = "ones";  // ones | bump
  std::optional<double> du_override;

  KernelSpec kernel;
  std::optional<PhiConfig> phi;

  std::string form = "general";  // general | sg | vicsek
  std::optional<SearchSpec> search;

  int n_points = 12;
  int trials = 20;
  unsigned seed = 0;
  int k = 0;  // 0 = full spectrum
  int spectral_level = 4, markov_level = 5;

  json echo;  // the validated input, embedded in every report
};

// Strict parse: unknown fields, type mismatches, and field-level constraint
// violations raise ConfigError naming the offending field path.
RunConfig parse_config(const std::string& text);

// Resolve the fractal named by the config.
IfsSpec spec_from(const RunConfig& cfg);

// Resolve a vertex selector to an exact coordinate.
Coord resolve_selector(const VertexSelector& sel, LevelStack& stack);

// Parse an exact fraction string list into a coordinate.
Coord parse_coord(const std::vector<std::string>& parts, const std::string& path);

}  // namespace fractsob::cli
