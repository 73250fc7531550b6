#include "dislo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dislo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawConfig {
  // (section, key) -> value; top-level keys use section ""
  std::map<std::pair<std::string, std::string>, std::string> entries;
  std::vector<std::string> errors;
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.errors.push_back("line " + std::to_string(lineno) +
                             ": malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.errors.push_back("line " + std::to_string(lineno) +
                           ": expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      raw.errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    const auto path = std::make_pair(section, key);
    if (raw.entries.count(path)) {
      raw.errors.push_back("duplicate key '" + section +
                           (section.empty() ? "" : ".") + key + "'");
      continue;
    }
    raw.entries[path] = value;
  }
  return raw;
}

class Extractor {
 public:
  Extractor(RawConfig& raw, std::vector<std::string>& errors)
      : raw_(raw), errors_(errors) {}

  std::string path(const std::string& section, const std::string& key) const {
    return section.empty() ? key : "[" + section + "] " + key;
  }

  std::optional<std::string> take(const std::string& section,
                                  const std::string& key) {
    const auto it = raw_.entries.find({section, key});
    if (it == raw_.entries.end()) return std::nullopt;
    consumed_.insert({section, key});
    return it->second;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) {
    return take(section, key).value_or(fallback);
  }

  double get_double(const std::string& section, const std::string& key,
                    double fallback) {
    const auto v = take(section, key);
    if (!v) return fallback;
    return parse_double(section, key, *v).value_or(fallback);
  }

  std::optional<double> get_optional_double(const std::string& section,
                                            const std::string& key) {
    const auto v = take(section, key);
    if (!v) return std::nullopt;
    return parse_double(section, key, *v);
  }

  int get_int(const std::string& section, const std::string& key, int fallback) {
    const auto v = take(section, key);
    if (!v) return fallback;
    int out = 0;
    const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc{} || res.ptr != v->data() + v->size()) {
      errors_.push_back(path(section, key) + ": expected an integer, got '" + *v + "'");
      return fallback;
    }
    return out;
  }

  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) {
    const auto v = take(section, key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc{} || res.ptr != v->data() + v->size()) {
      errors_.push_back(path(section, key) +
                        ": expected a nonnegative integer, got '" + *v + "'");
      return fallback;
    }
    return out;
  }

  bool get_bool(const std::string& section, const std::string& key, bool fallback) {
    const auto v = take(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    errors_.push_back(path(section, key) + ": expected true/false, got '" + *v + "'");
    return fallback;
  }

  void report_unknown(const std::set<std::string>& allowed_sections) {
    for (const auto& [p, value] : raw_.entries) {
      if (consumed_.count(p)) continue;
      if (!allowed_sections.count(p.first)) {
        errors_.push_back("unknown section '[" + p.first + "]' (key '" + p.second + "')");
      } else {
        errors_.push_back("unknown key '" + path(p.first, p.second) + "'");
      }
    }
  }

 private:
  std::optional<double> parse_double(const std::string& section,
                                     const std::string& key,
                                     const std::string& v) {
    try {
      std::size_t pos = 0;
      const double out = std::stod(v, &pos);
      if (pos != v.size() || !std::isfinite(out)) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      errors_.push_back(path(section, key) + ": expected a number, got '" + v + "'");
      return std::nullopt;
    }
  }

  RawConfig& raw_;
  std::vector<std::string>& errors_;
  std::set<std::pair<std::string, std::string>> consumed_;
};

void check(bool ok, const std::string& message, std::vector<std::string>& errors) {
  if (!ok) errors.push_back(message);
}

}  // namespace

ConfigParseResult parse_config(const std::string& text) {
  ConfigParseResult result;
  RawConfig raw = tokenize(text);
  result.errors = raw.errors;
  Extractor ex(raw, result.errors);
  SimConfig cfg;

  cfg.model = ex.get_string("", "model", "");
  cfg.output_dir = ex.get_string("", "output_dir", "");
  cfg.seed = ex.get_u64("", "seed", 0);

  const std::set<std::string> models = {"micro2d", "gb2d", "sub1d", "gcz1d", "curves"};
  if (cfg.model.empty()) {
    result.errors.push_back("missing required key 'model'");
  } else if (!models.count(cfg.model)) {
    result.errors.push_back("model: expected one of micro2d|gb2d|sub1d|gcz1d|curves, got '" +
                            cfg.model + "'");
  }
  check(!cfg.output_dir.empty(), "missing required key 'output_dir'", result.errors);

  cfg.material.lambda = ex.get_double("material", "lambda", 1.0);
  cfg.material.mu = ex.get_double("material", "mu", 1.0);
  check(cfg.material.mu > 0.0, "[material] mu: precondition mu > 0 violated", result.errors);
  check(3.0 * cfg.material.lambda + 2.0 * cfg.material.mu > 0.0,
        "[material] lambda: precondition 3*lambda + 2*mu > 0 violated", result.errors);

  cfg.time.dt = ex.get_optional_double("time", "dt");
  cfg.time.cfl_factor = ex.get_double("time", "cfl_factor", 0.45);
  cfg.time.t_max = ex.get_double("time", "t_max", 0.0);
  cfg.time.snapshot_every = ex.get_double("time", "snapshot_every", 0.0);
  check(cfg.time.t_max > 0.0, "[time] t_max: required and must be > 0", result.errors);
  check(cfg.time.cfl_factor > 0.0 && cfg.time.cfl_factor <= 1.0,
        "[time] cfl_factor: must lie in (0, 1]", result.errors);
  if (cfg.time.dt) {
    check(*cfg.time.dt > 0.0, "[time] dt: must be > 0", result.errors);
  }
  check(cfg.time.snapshot_every >= 0.0, "[time] snapshot_every: must be >= 0", result.errors);
  if (cfg.time.snapshot_every == 0.0 && cfg.time.t_max > 0.0) {
    cfg.time.snapshot_every = cfg.time.t_max / 10.0;
  }

  std::set<std::string> allowed = {"", "material", "time"};
  if (cfg.model == "micro2d") {
    allowed.insert("micro2d");
    auto& m = cfg.micro2d;
    m.n_particles = ex.get_int("micro2d", "n_particles", 16);
    m.init = ex.get_string("micro2d", "init", "random");
    m.pair_distance = ex.get_double("micro2d", "pair_distance", 0.25);
    m.smoothing_width = ex.get_double("micro2d", "smoothing_width", 0.02);
    m.density_grid = ex.get_int("micro2d", "density_grid", 64);
    m.min_separation = ex.get_double("micro2d", "min_separation", 1e-6);
    check(m.n_particles > 0, "[micro2d] n_particles: must be > 0", result.errors);
    check(m.init == "random" || m.init == "pair",
          "[micro2d] init: expected random|pair", result.errors);
    check(m.pair_distance > 0.0 && m.pair_distance < 1.0,
          "[micro2d] pair_distance: must lie in (0, 1)", result.errors);
    check(m.smoothing_width > 0.0,
          "[micro2d] smoothing_width: precondition smoothing_width > 0 violated",
          result.errors);
    check(m.density_grid >= 2, "[micro2d] density_grid: must be >= 2", result.errors);
    check(m.min_separation > 0.0, "[micro2d] min_separation: must be > 0", result.errors);
    check(cfg.time.dt.has_value(), "[time] dt: required for micro2d", result.errors);
  } else if (cfg.model == "gb2d") {
    allowed.insert("gb2d");
    auto& g = cfg.gb2d;
    g.n1 = ex.get_int("gb2d", "n1", 64);
    g.n2 = ex.get_int("gb2d", "n2", 64);
    g.line_density = ex.get_double("gb2d", "L", 1.0);
    g.amplitude = ex.get_double("gb2d", "amplitude", 0.3);
    g.max_mode = ex.get_int("gb2d", "max_mode", 3);
    check(g.n1 >= 2 && g.n2 >= 2, "[gb2d] n1, n2: must be >= 2", result.errors);
    check(g.line_density > 0.0, "[gb2d] L: precondition L > 0 violated", result.errors);
    check(g.amplitude >= 0.0 && g.amplitude < 1.0,
          "[gb2d] amplitude: must lie in [0, 1) to keep densities positive",
          result.errors);
    check(g.max_mode >= 1, "[gb2d] max_mode: must be >= 1", result.errors);
  } else if (cfg.model == "sub1d") {
    allowed.insert("sub1d");
    auto& s = cfg.sub1d;
    s.n = ex.get_int("sub1d", "n", 128);
    s.line_density = ex.get_double("sub1d", "L", 1.0);
    s.roughness = ex.get_double("sub1d", "roughness", 0.5);
    s.c2_override = ex.get_optional_double("sub1d", "c2_override");
    s.forcing_amplitude = ex.get_double("sub1d", "forcing_amplitude", 0.0);
    s.forcing_period = ex.get_double("sub1d", "forcing_period", 1.0);
    check(s.n >= 2, "[sub1d] n: must be >= 2", result.errors);
    check(s.line_density > 0.0, "[sub1d] L: precondition L > 0 violated", result.errors);
    check(s.roughness >= 0.0 && s.roughness < 1.0,
          "[sub1d] roughness: must lie in [0, 1)", result.errors);
    check(s.forcing_period > 0.0, "[sub1d] forcing_period: must be > 0", result.errors);
  } else if (cfg.model == "gcz1d") {
    allowed.insert("gcz1d");
    auto& g = cfg.gcz1d;
    g.n = ex.get_int("gcz1d", "n", 200);
    g.epsilon = ex.get_double("gcz1d", "epsilon", 0.1);
    g.tau = ex.get_double("gcz1d", "tau", 0.5);
    g.c0 = ex.get_double("gcz1d", "c0", 1.0);
    g.D0 = ex.get_double("gcz1d", "D0", 1.0);
    g.residual_tol = ex.get_double("gcz1d", "residual_tol", 1e-6);
    g.init = ex.get_string("gcz1d", "init", "gaussian_bumps");
    g.support = ex.get_double("gcz1d", "support", 0.8);
    g.margin_fraction = ex.get_double("gcz1d", "margin_fraction", 1e-4);
    g.rho_amplitude = ex.get_double("gcz1d", "rho_amplitude", 0.25);
    g.monitor_gamma = ex.get_double("gcz1d", "monitor_gamma", 0.0);
    g.gamma_floor_rel = ex.get_double("gcz1d", "gamma_floor_rel", 1e-8);
    g.dt_factor = ex.get_double("gcz1d", "dt_factor", 0.4);
    g.backstress_floor = ex.get_double("gcz1d", "backstress_floor", 1e-8);
    check(g.n >= 4, "[gcz1d] n: must be >= 4", result.errors);
    check(g.epsilon > 0.0, "[gcz1d] epsilon: precondition epsilon > 0 violated",
          result.errors);
    check(g.c0 > 0.0, "[gcz1d] c0: precondition c0 > 0 violated", result.errors);
    check(g.D0 > 0.0, "[gcz1d] D0: precondition D0 > 0 violated", result.errors);
    check(g.residual_tol >= 0.0, "[gcz1d] residual_tol: must be >= 0", result.errors);
    check(g.init == "gaussian_bumps" || g.init == "linear_kappa",
          "[gcz1d] init: expected gaussian_bumps|linear_kappa", result.errors);
    check(g.support > 0.0 && g.support < 1.0,
          "[gcz1d] support: must lie in (0, 1)", result.errors);
    check(g.margin_fraction > 0.0 && g.margin_fraction < 1.0,
          "[gcz1d] margin_fraction: must lie in (0, 1)", result.errors);
    check(g.monitor_gamma >= 0.0, "[gcz1d] monitor_gamma: must be >= 0", result.errors);
    check(g.gamma_floor_rel > 0.0, "[gcz1d] gamma_floor_rel: must be > 0", result.errors);
    check(g.dt_factor > 0.0 && g.dt_factor <= 0.5,
          "[gcz1d] dt_factor: must lie in (0, 0.5] for parabolic stability",
          result.errors);
    check(g.backstress_floor > 0.0, "[gcz1d] backstress_floor: must be > 0",
          result.errors);
  } else if (cfg.model == "curves") {
    allowed.insert("curves");
    auto& c = cfg.curves;
    c.n_vertices = ex.get_int("curves", "n_vertices", 256);
    c.radius = ex.get_double("curves", "radius", 1.0);
    c.velocity = ex.get_string("curves", "velocity", "constant");
    c.velocity_value = ex.get_double("curves", "velocity_value", 1.0);
    c.velocity_slope = ex.get_double("curves", "velocity_slope", 1.0);
    c.reparametrize = ex.get_bool("curves", "reparametrize", false);
    c.residual_report = ex.get_bool("curves", "residual_report", false);
    c.refine_levels = ex.get_int("curves", "refine_levels", 2);
    c.test_seed = ex.get_u64("curves", "test_seed", 1234);
    check(c.n_vertices >= 8, "[curves] n_vertices: must be >= 8", result.errors);
    check(c.radius > 0.0, "[curves] radius: must be > 0", result.errors);
    check(c.velocity == "constant" || c.velocity == "linear",
          "[curves] velocity: expected constant|linear", result.errors);
    check(c.refine_levels >= 1, "[curves] refine_levels: must be >= 1", result.errors);
    check(cfg.time.dt.has_value(), "[time] dt: required for curves", result.errors);
  }

  ex.report_unknown(allowed);

  if (result.errors.empty()) {
    result.config = cfg;
  }
  return result;
}

ConfigParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ConfigParseResult r;
    r.errors.push_back("cannot open config file " + path);
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const SimConfig& c) {
  nlohmann::json j;
  j["model"] = c.model;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["material"] = {{"lambda", c.material.lambda}, {"mu", c.material.mu}};
  nlohmann::json t;
  if (c.time.dt) t["dt"] = *c.time.dt;
  t["cfl_factor"] = c.time.cfl_factor;
  t["t_max"] = c.time.t_max;
  t["snapshot_every"] = c.time.snapshot_every;
  j["time"] = t;
  if (c.model == "micro2d") {
    j["micro2d"] = {{"n_particles", c.micro2d.n_particles},
                    {"init", c.micro2d.init},
                    {"pair_distance", c.micro2d.pair_distance},
                    {"smoothing_width", c.micro2d.smoothing_width},
                    {"density_grid", c.micro2d.density_grid},
                    {"min_separation", c.micro2d.min_separation}};
  } else if (c.model == "gb2d") {
    j["gb2d"] = {{"n1", c.gb2d.n1},
                 {"n2", c.gb2d.n2},
                 {"L", c.gb2d.line_density},
                 {"amplitude", c.gb2d.amplitude},
                 {"max_mode", c.gb2d.max_mode}};
  } else if (c.model == "sub1d") {
    nlohmann::json s = {{"n", c.sub1d.n},
                        {"L", c.sub1d.line_density},
                        {"roughness", c.sub1d.roughness},
                        {"forcing_amplitude", c.sub1d.forcing_amplitude},
                        {"forcing_period", c.sub1d.forcing_period}};
    if (c.sub1d.c2_override) s["c2_override"] = *c.sub1d.c2_override;
    j["sub1d"] = s;
  } else if (c.model == "gcz1d") {
    j["gcz1d"] = {{"n", c.gcz1d.n},
                  {"epsilon", c.gcz1d.epsilon},
                  {"tau", c.gcz1d.tau},
                  {"c0", c.gcz1d.c0},
                  {"D0", c.gcz1d.D0},
                  {"residual_tol", c.gcz1d.residual_tol},
                  {"init", c.gcz1d.init},
                  {"support", c.gcz1d.support},
                  {"margin_fraction", c.gcz1d.margin_fraction},
                  {"rho_amplitude", c.gcz1d.rho_amplitude},
                  {"monitor_gamma", c.gcz1d.monitor_gamma},
                  {"gamma_floor_rel", c.gcz1d.gamma_floor_rel},
                  {"dt_factor", c.gcz1d.dt_factor},
                  {"backstress_floor", c.gcz1d.backstress_floor}};
  } else if (c.model == "curves") {
    j["curves"] = {{"n_vertices", c.curves.n_vertices},
                   {"radius", c.curves.radius},
                   {"velocity", c.curves.velocity},
                   {"velocity_value", c.curves.velocity_value},
                   {"velocity_slope", c.curves.velocity_slope},
                   {"reparametrize", c.curves.reparametrize},
                   {"residual_report", c.curves.residual_report},
                   {"refine_levels", c.curves.refine_levels},
                   {"test_seed", c.curves.test_seed}};
  }
  return j.dump(2);
}

}  // namespace dislo
