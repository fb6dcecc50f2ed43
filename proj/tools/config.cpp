#include "config.hpp"

#include "fractsob/errors.hpp"

#include <cmath>
#include <set>

namespace fractsob::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(path + "." + key, "unknown field");
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

// A number, or the string "inf".
double get_extended(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    fail(path, "expected a number or \"inf\"");
  }
  return get_number(v, path);
}

std::vector<std::string> get_string_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_string(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> get_int_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void parse_fractal(const json& v, RunConfig& cfg) {
  if (!v.is_object()) fail("config.fractal", "expected an object");
  const json* type = find(v, "type");
  if (!type) fail("config.fractal.type", "required");
  cfg.fractal_type = get_string(*type, "config.fractal.type");
  if (cfg.fractal_type == "sg") {
    require_keys(v, "config.fractal", {"type"});
  } else if (cfg.fractal_type == "vicsek") {
    require_keys(v, "config.fractal", {"type", "L", "N"});
    if (const json* L = find(v, "L")) {
      cfg.vicsek_L = get_int(*L, "config.fractal.L");
      if (cfg.vicsek_L < 1) fail("config.fractal.L", "must be at least 1");
    }
    if (const json* N = find(v, "N")) {
      cfg.vicsek_N = get_int(*N, "config.fractal.N");
      if (cfg.vicsek_N < 1) fail("config.fractal.N", "must be at least 1");
    }
  } else {
    fail("config.fractal.type", "must be \"sg\" or \"vicsek\"");
  }
}

VertexSelector parse_selector(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  VertexSelector sel;
  sel.set = true;
  if (find(v, "coord")) {
    require_keys(v, path, {"coord"});
    sel.coord = get_string_list(*find(v, "coord"), path + ".coord");
    if (sel.coord.empty()) fail(path + ".coord", "must not be empty");
  } else if (find(v, "cell") || find(v, "corner")) {
    require_keys(v, path, {"cell", "corner"});
    const json* cell = find(v, "cell");
    const json* corner = find(v, "corner");
    if (!cell || !corner) fail(path, "cell and corner are both required");
    sel.by_cell = true;
    sel.cell = get_int(*cell, path + ".cell");
    sel.corner = get_int(*corner, path + ".corner");
    if (sel.cell < 1) fail(path + ".cell", "must be at least 1");
    if (sel.corner < 1) fail(path + ".corner", "must be at least 1");
  } else {
    fail(path, "expected coord or cell/corner");
  }
  return sel;
}

BumpConfig parse_bump(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  require_keys(v, path, {"center", "rho"});
  const json* center = find(v, "center");
  const json* rho = find(v, "rho");
  if (!center || !rho) fail(path, "center and rho are both required");
  BumpConfig b;
  b.center = get_string_list(*center, path + ".center");
  b.rho = get_string(*rho, path + ".rho");
  return b;
}

KernelSpec parse_kernel(const json& v) {
  if (!v.is_object()) fail("config.kernel", "expected an object");
  require_keys(v, "config.kernel", {"kind", "s", "t", "lambda"});
  KernelSpec k;
  const json* kind = find(v, "kind");
  if (!kind) fail("config.kernel.kind", "required");
  k.kind = get_string(*kind, "config.kernel.kind");
  if (k.kind != "riesz" && k.kind != "heat" && k.kind != "resolvent")
    fail("config.kernel.kind", "must be \"riesz\", \"heat\", or \"resolvent\"");
  if (const json* s = find(v, "s")) {
    k.s = get_number(*s, "config.kernel.s");
    if (!(k.s > 0.0)) fail("config.kernel.s", "must be positive");
  }
  if (const json* t = find(v, "t")) {
    k.t = get_number(*t, "config.kernel.t");
    if (!(k.t >= 0.0)) fail("config.kernel.t", "must be nonnegative");
  }
  if (const json* lam = find(v, "lambda")) {
    k.lambda = get_number(*lam, "config.kernel.lambda");
    if (!(k.lambda > 0.0)) fail("config.kernel.lambda", "must be positive");
  }
  return k;
}

PhiConfig parse_phi(const json& v) {
  if (!v.is_object()) fail("config.phi", "expected an object");
  require_keys(v, "config.phi", {"kind", "xi", "C", "slope", "offset"});
  PhiConfig phi;
  if (const json* kind = find(v, "kind")) {
    phi.kind = get_string(*kind, "config.phi.kind");
    if (phi.kind != "square" && phi.kind != "abs_power" && phi.kind != "affine")
      fail("config.phi.kind", "must be \"square\", \"abs_power\", or \"affine\"");
  }
  if (const json* xi = find(v, "xi")) phi.xi = get_number(*xi, "config.phi.xi");
  if (const json* C = find(v, "C")) {
    phi.C = get_number(*C, "config.phi.C");
    if (!(phi.C > 0.0)) fail("config.phi.C", "must be positive");
  }
  if (const json* s = find(v, "slope")) phi.slope = get_number(*s, "config.phi.slope");
  if (const json* o = find(v, "offset")) phi.offset = get_number(*o, "config.phi.offset");
  return phi;
}

SearchSpec parse_search(const json& v) {
  if (!v.is_object()) fail("config.search", "expected an object");
  require_keys(v, "config.search", {"L", "n_max"});
  SearchSpec s;
  if (const json* L = find(v, "L")) {
    s.L = get_int(*L, "config.search.L");
    if (s.L < 1) fail("config.search.L", "must be at least 1");
  }
  if (const json* n = find(v, "n_max")) {
    s.n_max = get_int(*n, "config.search.n_max");
    if (s.n_max < 2) fail("config.search.n_max", "must be at least 2");
  }
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config: not valid JSON");
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");

  static const std::set<std::string> kTopLevel{
      "fractal", "level", "bc", "s", "alpha", "p", "Q", "q", "x", "w",
      "u_source", "boundary", "bump", "m_lo", "m_hi", "sup_levels",
      "recompute_per_level", "include_boundary", "f", "du_override", "kernel",
      "phi", "form", "search", "n_points", "trials", "seed", "k",
      "spectral_level", "markov_level"};
  require_keys(root, "config", kTopLevel);

  RunConfig cfg;
  cfg.echo = root;

  if (const json* v = find(root, "fractal")) parse_fractal(*v, cfg);
  if (const json* v = find(root, "level")) {
    cfg.level = get_int(*v, "config.level");
    if (*cfg.level < 0) fail("config.level", "must be nonnegative");
  }
  if (const json* v = find(root, "bc")) {
    cfg.bc = get_string(*v, "config.bc");
    if (cfg.bc != "dirichlet" && cfg.bc != "neumann")
      fail("config.bc", "must be \"dirichlet\" or \"neumann\"");
  }
  if (const json* v = find(root, "s")) {
    cfg.s = get_number(*v, "config.s");
    if (!(*cfg.s > 0.0)) fail("config.s", "must be positive");
  }
  if (const json* v = find(root, "alpha")) {
    cfg.alpha = get_number(*v, "config.alpha");
    if (!(*cfg.alpha > 0.0)) fail("config.alpha", "must be positive");
  }
  if (const json* v = find(root, "p")) {
    cfg.p = get_extended(*v, "config.p");
    cfg.p_given = true;
    if (!(cfg.p > 1.0)) fail("config.p", "must exceed 1");
  }
  if (const json* v = find(root, "Q")) {
    cfg.Q = get_extended(*v, "config.Q");
    cfg.Q_given = true;
    if (!(cfg.Q >= 1.0)) fail("config.Q", "must be at least 1");
  }
  if (const json* v = find(root, "q")) cfg.q = parse_selector(*v, "config.q");
  if (const json* v = find(root, "x")) cfg.x = parse_selector(*v, "config.x");
  if (const json* v = find(root, "w")) cfg.w = get_string(*v, "config.w");
  if (const json* v = find(root, "u_source")) {
    cfg.u_source = get_string(*v, "config.u_source");
    if (cfg.u_source != "harmonic" && cfg.u_source != "spectral")
      fail("config.u_source", "must be \"harmonic\" or \"spectral\"");
  }
  if (const json* v = find(root, "boundary"))
    cfg.boundary = get_string_list(*v, "config.boundary");
  if (const json* v = find(root, "bump")) cfg.bump = parse_bump(*v, "config.bump");
  if (const json* v = find(root, "m_lo")) cfg.m_lo = get_int(*v, "config.m_lo");
  if (const json* v = find(root, "m_hi")) cfg.m_hi = get_int(*v, "config.m_hi");
  if (const json* v = find(root, "sup_levels"))
    cfg.sup_levels = get_int_list(*v, "config.sup_levels");
  if (const json* v = find(root, "recompute_per_level"))
    cfg.recompute_per_level = get_bool(*v, "config.recompute_per_level");
  if (const json* v = find(root, "include_boundary"))
    cfg.include_boundary = get_bool(*v, "config.include_boundary");
  if (const json* v = find(root, "f")) {
    cfg.f_kind = get_string(*v, "config.f");
    if (cfg.f_kind != "ones" && cfg.f_kind != "bump")
      fail("config.f", "must be \"ones\" or \"bump\"");
  }
  if (const json* v = find(root, "du_override"))
    cfg.du_override = get_number(*v, "config.du_override");
  if (const json* v = find(root, "kernel")) cfg.kernel = parse_kernel(*v);
  if (const json* v = find(root, "phi")) cfg.phi = parse_phi(*v);
  if (const json* v = find(root, "form")) {
    cfg.form = get_string(*v, "config.form");
    if (cfg.form != "general" && cfg.form != "sg" && cfg.form != "vicsek")
      fail("config.form", "must be \"general\", \"sg\", or \"vicsek\"");
  }
  if (const json* v = find(root, "search")) cfg.search = parse_search(*v);
  if (const json* v = find(root, "n_points")) {
    cfg.n_points = get_int(*v, "config.n_points");
    if (cfg.n_points < 3) fail("config.n_points", "must be at least 3");
  }
  if (const json* v = find(root, "trials")) {
    cfg.trials = get_int(*v, "config.trials");
    if (cfg.trials < 1) fail("config.trials", "must be at least 1");
  }
  if (const json* v = find(root, "seed")) {
    const int seed = get_int(*v, "config.seed");
    if (seed < 0) fail("config.seed", "must be nonnegative");
    cfg.seed = static_cast<unsigned>(seed);
  }
  if (const json* v = find(root, "k")) {
    cfg.k = get_int(*v, "config.k");
    if (cfg.k < 0) fail("config.k", "must be nonnegative");
  }
  if (const json* v = find(root, "spectral_level")) {
    cfg.spectral_level = get_int(*v, "config.spectral_level");
    if (cfg.spectral_level < 1) fail("config.spectral_level", "must be at least 1");
  }
  if (const json* v = find(root, "markov_level")) {
    cfg.markov_level = get_int(*v, "config.markov_level");
    if (cfg.markov_level < 1) fail("config.markov_level", "must be at least 1");
  }

  if (cfg.s && cfg.alpha) fail("config.alpha", "give either s or alpha, not both");
  return cfg;
}

IfsSpec spec_from(const RunConfig& cfg) {
  if (cfg.fractal_type == "sg") return make_sg();
  return make_vicsek(cfg.vicsek_L, cfg.vicsek_N);
}

Coord parse_coord(const std::vector<std::string>& parts, const std::string& path) {
  Coord c;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      c.emplace_back(parts[i]);
    } catch (const std::exception&) {
      fail(path + "[" + std::to_string(i) + "]", "not an exact fraction: " + parts[i]);
    }
  }
  return c;
}

Coord resolve_selector(const VertexSelector& sel, LevelStack& stack) {
  const IfsSpec& spec = stack.spec();
  if (!sel.by_cell) {
    Coord c = parse_coord(sel.coord, "selector.coord");
    if (static_cast<int>(c.size()) != spec.ambient_dim)
      throw ConfigError("selector.coord: expected " +
                        std::to_string(spec.ambient_dim) + " components");
    return c;
  }
  if (sel.cell > spec.J()) throw ConfigError("selector.cell: only " +
                                             std::to_string(spec.J()) + " maps");
  if (sel.corner > spec.v0_size())
    throw ConfigError("selector.corner: only " + std::to_string(spec.v0_size()) +
                      " boundary points");
  const LevelGraph& g1 = stack.graph(1);
  const int cell_index = g1.cell_index(Word{sel.cell});
  return g1.coords[g1.cells[cell_index].corners[sel.corner - 1]];
}

}  // namespace fractsob::cli
