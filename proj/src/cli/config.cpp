#include "vortexlab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vortexlab/error.hpp"
#include "vortexlab/green/divisor.hpp"

namespace vortexlab::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::ValidationError, message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) invalid((path.empty() ? "config" : path) + ": expected an object");
  return j;
}

// Rejects keys outside `known`, and keys in `known` but not in `allowed`.
void check_keys(const json& j, const std::string& path, const std::set<std::string>& known,
                const std::set<std::string>& allowed, std::string_view kind) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) invalid("unknown key '" + join(path, key) + "'");
    if (!allowed.count(key)) {
      invalid("key '" + join(path, key) + "' does not apply to a " + std::string(kind) +
              " experiment");
    }
  }
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& known) {
  check_keys(j, path, known, known, "");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path + ": expected a finite number");
  return v;
}

long long as_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
      return static_cast<long long>(v);
    }
  }
  invalid(path + ": expected an integer");
}

std::size_t as_count(const json& j, const std::string& path) {
  const long long v = as_integer(j, path);
  if (v < 0) invalid(path + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) invalid(path + ": expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path + ": expected a string");
  return j.get<std::string>();
}

template <class T, class Read>
void read_if(const json& obj, const char* key, const std::string& path, T& out, Read read) {
  if (auto it = obj.find(key); it != obj.end()) out = read(*it, join(path, key));
}

std::vector<PointEntry> read_points(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path + ": expected a list of [x, y, m] triples");
  std::vector<PointEntry> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const json& e = j[k];
    if (!e.is_array() || e.size() != 3) invalid(p + ": expected [x, y, m]");
    const long long m = as_integer(e[2], p + "[2]");
    if (m == 0) invalid(p + ": multiplicity must be nonzero");
    if (std::abs(m) > 1000) invalid(p + ": multiplicity out of range");
    out.push_back({as_number(e[0], p + "[0]"), as_number(e[1], p + "[1]"), static_cast<int>(m)});
  }
  return out;
}

json write_points(const std::vector<PointEntry>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(json::array({p.x, p.y, p.m}));
  return out;
}

CoefficientEntry read_coefficient(const json& j, const std::string& path) {
  CoefficientEntry c;
  if (j.is_number()) {
    c.constant = as_number(j, path);
    return c;
  }
  if (!j.is_object()) invalid(path + ": expected a number or {\"divisor\": ..., \"scale\": ...}");
  check_keys(j, path, {"divisor", "scale"});
  if (!j.contains("divisor")) invalid(join(path, "divisor") + ": required");
  c.from_divisor = true;
  c.divisor = read_points(j["divisor"], join(path, "divisor"));
  read_if(j, "scale", path, c.scale, as_number);
  return c;
}

json write_coefficient(const CoefficientEntry& c) {
  if (!c.from_divisor) return c.constant;
  return json{{"divisor", write_points(c.divisor)}, {"scale", c.scale}};
}

std::vector<KwTermEntry> read_kw_terms(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path + ": expected a list of terms");
  std::vector<KwTermEntry> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    require_object(j[k], p);
    check_keys(j[k], p, {"coefficient", "rate"});
    KwTermEntry t;
    read_if(j[k], "coefficient", p, t.coefficient, read_coefficient);
    read_if(j[k], "rate", p, t.rate, as_number);
    out.push_back(std::move(t));
  }
  return out;
}

json write_kw_terms(const std::vector<KwTermEntry>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    out.push_back(json{{"coefficient", write_coefficient(t.coefficient)}, {"rate", t.rate}});
  }
  return out;
}

std::vector<GeneralizedTermEntry> read_terms(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path + ": expected a list of sections");
  std::vector<GeneralizedTermEntry> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    require_object(j[k], p);
    check_keys(j[k], p, {"divisor", "weight", "scale"});
    GeneralizedTermEntry t;
    read_if(j[k], "divisor", p, t.divisor, read_points);
    if (!j[k].contains("weight")) invalid(join(p, "weight") + ": required");
    const long long w = as_integer(j[k]["weight"], join(p, "weight"));
    if (w == 0) invalid(join(p, "weight") + ": weights must be nonzero");
    if (std::abs(w) > 64) invalid(join(p, "weight") + ": weight out of range");
    t.weight = static_cast<int>(w);
    read_if(j[k], "scale", p, t.scale, as_number);
    out.push_back(std::move(t));
  }
  return out;
}

json write_terms(const std::vector<GeneralizedTermEntry>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    out.push_back(json{{"divisor", write_points(t.divisor)}, {"weight", t.weight}, {"scale", t.scale}});
  }
  return out;
}

const std::set<std::string> kTopKeys = {
    "experiment", "family", "geometry", "grid", "epsilon", "schedule", "divisor",
    "divisor_plus", "divisor_minus", "tau", "scale_plus", "scale_minus", "degree",
    "normalization", "terms", "kw", "solver", "diagnostics", "output"};

std::set<std::string> family_keys(ExperimentKind family) {
  switch (family) {
    case ExperimentKind::Classical: return {"divisor"};
    case ExperimentKind::Mixed:
      return {"divisor_plus", "divisor_minus", "tau", "scale_plus", "scale_minus", "degree",
              "normalization"};
    case ExperimentKind::Generalized: return {"terms", "tau", "normalization"};
    case ExperimentKind::Kw: return {"kw"};
    case ExperimentKind::Sweep: break;
  }
  return {};
}

std::set<std::string> allowed_keys(ExperimentKind experiment, ExperimentKind family) {
  std::set<std::string> keys = {"experiment", "geometry", "grid", "solver", "diagnostics", "output"};
  const auto fam = family_keys(experiment == ExperimentKind::Sweep ? family : experiment);
  keys.insert(fam.begin(), fam.end());
  if (experiment == ExperimentKind::Sweep) {
    keys.insert({"family", "schedule"});
  } else {
    keys.insert("epsilon");
  }
  return keys;
}

void read_solver(const json& j, const std::string& path, SolverEntry& s) {
  require_object(j, path);
  check_keys(j, path,
             {"newton_tol", "max_newton", "armijo_c", "armijo_shrink", "cg_tol", "adaptive_cg",
              "max_backtracks"});
  read_if(j, "newton_tol", path, s.newton_tol, as_number);
  read_if(j, "max_newton", path, s.max_newton,
          [](const json& v, const std::string& p) { return static_cast<int>(as_count(v, p)); });
  read_if(j, "armijo_c", path, s.armijo_c, as_number);
  read_if(j, "armijo_shrink", path, s.armijo_shrink, as_number);
  read_if(j, "cg_tol", path, s.cg_tol, as_number);
  read_if(j, "adaptive_cg", path, s.adaptive_cg, as_bool);
  read_if(j, "max_backtracks", path, s.max_backtracks,
          [](const json& v, const std::string& p) { return static_cast<int>(as_count(v, p)); });
}

void read_diagnostics(const json& j, const std::string& path, DiagnosticsEntry& d) {
  require_object(j, path);
  check_keys(j, path,
             {"omega_radius", "bump_radii", "order_r_min", "order_r_max", "order_radii",
              "order_angles", "heatmaps", "svg"});
  read_if(j, "omega_radius", path, d.omega_radius, as_number);
  if (auto it = j.find("bump_radii"); it != j.end() && !it->is_null()) {
    const std::string p = join(path, "bump_radii");
    if (!it->is_array() || it->size() != 2) invalid(p + ": expected [r_inner, r_outer] or null");
    d.bump_radii = std::array<double, 2>{as_number((*it)[0], p + "[0]"),
                                         as_number((*it)[1], p + "[1]")};
  }
  read_if(j, "order_r_min", path, d.order_r_min, as_number);
  read_if(j, "order_r_max", path, d.order_r_max, as_number);
  read_if(j, "order_radii", path, d.order_radii,
          [](const json& v, const std::string& p) { return static_cast<int>(as_count(v, p)); });
  read_if(j, "order_angles", path, d.order_angles,
          [](const json& v, const std::string& p) { return static_cast<int>(as_count(v, p)); });
  read_if(j, "heatmaps", path, d.heatmaps, as_bool);
  read_if(j, "svg", path, d.svg, as_bool);
}

// 1-based line and column of byte offset `pos` (counted from 1 as nlohmann does).
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t pos) {
  std::size_t line = 1;
  std::size_t column = 0;
  const std::size_t end = std::min(pos, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 0;
    } else {
      ++column;
    }
  }
  return {line, std::max<std::size_t>(column, 1)};
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Kw: return "kw";
    case ExperimentKind::Classical: return "classical";
    case ExperimentKind::Mixed: return "mixed";
    case ExperimentKind::Generalized: return "generalized";
    case ExperimentKind::Sweep: return "sweep";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::Kw, ExperimentKind::Classical, ExperimentKind::Mixed,
                 ExperimentKind::Generalized, ExperimentKind::Sweep}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown experiment kind '" + std::string(name) + "'");
}

kw::SolverConfig SolverEntry::to_solver_config() const {
  kw::SolverConfig c;
  c.newton_tol = newton_tol;
  c.max_newton = max_newton;
  c.armijo_c = armijo_c;
  c.armijo_shrink = armijo_shrink;
  c.cg_tol = cg_tol;
  c.adaptive_cg = adaptive_cg;
  c.max_backtracks = max_backtracks;
  return c;
}

RunConfig parse_config_unchecked(std::string_view text, std::optional<ExperimentKind> expected) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string detail = e.what();
    if (auto pos = detail.find("syntax error"); pos != std::string::npos) detail = detail.substr(pos);
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + detail);
  }
  require_object(root, "");

  RunConfig c;
  if (auto it = root.find("experiment"); it != root.end()) {
    const std::string name = as_string(*it, "experiment");
    try {
      c.experiment = experiment_from_string(name);
    } catch (const Error&) {
      invalid("experiment: unknown kind '" + name +
              "' (expected kw, classical, mixed, generalized or sweep)");
    }
    if (expected && *expected != c.experiment) {
      invalid("experiment: config says '" + name + "' but the subcommand is '" +
              std::string(to_string(*expected)) + "'");
    }
  } else if (expected) {
    c.experiment = *expected;
  } else {
    invalid("experiment: required");
  }

  c.family = c.experiment;
  if (c.experiment == ExperimentKind::Sweep) {
    if (!root.contains("family")) invalid("family: required for a sweep");
    const std::string name = as_string(root["family"], "family");
    if (name != "classical" && name != "mixed" && name != "generalized") {
      invalid("family: expected classical, mixed or generalized, got '" + name + "'");
    }
    c.family = experiment_from_string(name);
  }
  check_keys(root, "", kTopKeys, allowed_keys(c.experiment, c.family),
             c.experiment == ExperimentKind::Sweep
                 ? std::string("sweep over the ") + std::string(to_string(c.family)) + " family"
                 : std::string(to_string(c.experiment)));

  if (auto it = root.find("geometry"); it != root.end()) {
    require_object(*it, "geometry");
    check_keys(*it, "geometry", {"lx", "ly"});
    read_if(*it, "lx", "geometry", c.lx, as_number);
    read_if(*it, "ly", "geometry", c.ly, as_number);
  }
  if (auto it = root.find("grid"); it != root.end()) {
    require_object(*it, "grid");
    check_keys(*it, "grid", {"nx", "ny"});
    read_if(*it, "nx", "grid", c.nx, as_count);
    read_if(*it, "ny", "grid", c.ny, as_count);
  }
  read_if(root, "epsilon", "", c.epsilon, as_number);
  if (auto it = root.find("schedule"); it != root.end()) {
    require_object(*it, "schedule");
    check_keys(*it, "schedule", {"epsilons", "grid_rule", "min_samples"});
    if (auto e = it->find("epsilons"); e != it->end()) {
      if (!e->is_array()) invalid("schedule.epsilons: expected a list of numbers");
      for (std::size_t k = 0; k < e->size(); ++k) {
        c.schedule.epsilons.push_back(
            as_number((*e)[k], "schedule.epsilons[" + std::to_string(k) + "]"));
      }
    }
    read_if(*it, "grid_rule", "schedule", c.schedule.grid_rule, as_string);
    read_if(*it, "min_samples", "schedule", c.schedule.min_samples, as_count);
  } else if (c.experiment == ExperimentKind::Sweep) {
    invalid("schedule: required for a sweep");
  }
  read_if(root, "divisor", "", c.divisor, read_points);
  read_if(root, "divisor_plus", "", c.divisor_plus, read_points);
  read_if(root, "divisor_minus", "", c.divisor_minus, read_points);
  read_if(root, "tau", "", c.tau, as_number);
  read_if(root, "scale_plus", "", c.scale_plus, as_number);
  read_if(root, "scale_minus", "", c.scale_minus, as_number);
  if (auto it = root.find("degree"); it != root.end() && !it->is_null()) {
    c.degree = as_number(*it, "degree");
  }
  read_if(root, "normalization", "", c.normalization, as_string);
  read_if(root, "terms", "", c.terms, read_terms);
  if (auto it = root.find("kw"); it != root.end()) {
    require_object(*it, "kw");
    check_keys(*it, "kw", {"plus", "minus", "w"});
    read_if(*it, "plus", "kw", c.kw.plus, read_kw_terms);
    read_if(*it, "minus", "kw", c.kw.minus, read_kw_terms);
    read_if(*it, "w", "kw", c.kw.w, as_number);
  }
  if (auto it = root.find("solver"); it != root.end()) read_solver(*it, "solver", c.solver);
  if (auto it = root.find("diagnostics"); it != root.end()) {
    read_diagnostics(*it, "diagnostics", c.diagnostics);
  }
  read_if(root, "output", "", c.output, as_string);
  return c;
}

RunConfig parse_config(std::string_view text, std::optional<ExperimentKind> expected) {
  RunConfig c = parse_config_unchecked(text, expected);
  validate(c);
  return c;
}

std::string echo_config(const RunConfig& c) {
  json j;
  j["experiment"] = std::string(to_string(c.experiment));
  if (c.experiment == ExperimentKind::Sweep) j["family"] = std::string(to_string(c.family));
  j["geometry"] = {{"lx", c.lx}, {"ly", c.ly}};
  j["grid"] = {{"nx", c.nx}, {"ny", c.ny}};
  if (c.experiment == ExperimentKind::Sweep) {
    j["schedule"] = {{"epsilons", c.schedule.epsilons},
                     {"grid_rule", c.schedule.grid_rule},
                     {"min_samples", c.schedule.min_samples}};
  } else {
    j["epsilon"] = c.epsilon;
  }
  switch (c.family) {
    case ExperimentKind::Classical: j["divisor"] = write_points(c.divisor); break;
    case ExperimentKind::Mixed:
      j["divisor_plus"] = write_points(c.divisor_plus);
      j["divisor_minus"] = write_points(c.divisor_minus);
      j["tau"] = c.tau;
      j["scale_plus"] = c.scale_plus;
      j["scale_minus"] = c.scale_minus;
      j["degree"] = c.degree ? json(*c.degree) : json(nullptr);
      j["normalization"] = c.normalization;
      break;
    case ExperimentKind::Generalized:
      j["terms"] = write_terms(c.terms);
      j["tau"] = c.tau;
      j["normalization"] = c.normalization;
      break;
    case ExperimentKind::Kw:
      j["kw"] = {{"plus", write_kw_terms(c.kw.plus)},
                 {"minus", write_kw_terms(c.kw.minus)},
                 {"w", c.kw.w}};
      break;
    case ExperimentKind::Sweep: break;
  }
  j["solver"] = {{"newton_tol", c.solver.newton_tol},     {"max_newton", c.solver.max_newton},
                 {"armijo_c", c.solver.armijo_c},         {"armijo_shrink", c.solver.armijo_shrink},
                 {"cg_tol", c.solver.cg_tol},             {"adaptive_cg", c.solver.adaptive_cg},
                 {"max_backtracks", c.solver.max_backtracks}};
  const auto& d = c.diagnostics;
  j["diagnostics"] = {
      {"omega_radius", d.omega_radius},
      {"bump_radii", d.bump_radii ? json::array({(*d.bump_radii)[0], (*d.bump_radii)[1]})
                                  : json(nullptr)},
      {"order_r_min", d.order_r_min},
      {"order_r_max", d.order_r_max},
      {"order_radii", d.order_radii},
      {"order_angles", d.order_angles},
      {"heatmaps", d.heatmaps},
      {"svg", d.svg}};
  j["output"] = c.output;
  return j.dump(2);
}

torus::TorusGeometry make_geometry(const RunConfig& c) { return torus::TorusGeometry(c.lx, c.ly); }
torus::GridSpec make_grid(const RunConfig& c) { return torus::GridSpec(c.nx, c.ny); }

namespace {

green::Divisor make_divisor(const std::vector<PointEntry>& points,
                            const torus::TorusGeometry& geometry) {
  std::vector<green::DivisorPoint> pts;
  for (const auto& p : points) pts.push_back({{p.x, p.y}, p.m});
  return green::Divisor(geometry, std::move(pts));
}

vortex::DensityNormalization make_normalization(const std::string& name) {
  if (name == "mean_one") return vortex::DensityNormalization::MeanOne;
  if (name == "unit_l2") return vortex::DensityNormalization::UnitL2;
  if (name == "raw") return vortex::DensityNormalization::Raw;
  invalid("normalization: expected mean_one, unit_l2 or raw, got '" + name + "'");
}

}  // namespace

vortex::VortexSpec make_spec(const RunConfig& c, double epsilon, const torus::GridSpec& grid) {
  const torus::TorusGeometry geometry = make_geometry(c);
  switch (c.family) {
    case ExperimentKind::Classical:
      return vortex::ClassicalVortexSpec{make_divisor(c.divisor, geometry), epsilon, geometry, grid};
    case ExperimentKind::Mixed:
      return vortex::MixedVortexSpec{make_divisor(c.divisor_plus, geometry),
                                     make_divisor(c.divisor_minus, geometry),
                                     c.tau,
                                     c.scale_plus,
                                     c.scale_minus,
                                     epsilon,
                                     geometry,
                                     grid,
                                     c.degree,
                                     make_normalization(c.normalization)};
    case ExperimentKind::Generalized: {
      std::vector<vortex::GeneralizedTerm> terms;
      for (const auto& t : c.terms) {
        terms.push_back({make_divisor(t.divisor, geometry), t.weight, t.scale});
      }
      return vortex::GeneralizedSpec{std::move(terms), c.tau,
                                     epsilon,          geometry,
                                     grid,             make_normalization(c.normalization)};
    }
    case ExperimentKind::Kw:
    case ExperimentKind::Sweep: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no vortex family for this experiment kind");
}

kw::KWProblem make_kw_problem(const RunConfig& c) {
  const torus::TorusGeometry geometry = make_geometry(c);
  const torus::GridSpec grid = make_grid(c);
  auto terms = [&](const std::vector<KwTermEntry>& entries) {
    std::vector<kw::KWTerm> out;
    for (const auto& e : entries) {
      torus::ScalarField coefficient =
          torus::ScalarField::constant(geometry, grid, e.coefficient.constant);
      if (e.coefficient.from_divisor) {
        const auto potential =
            green::divisor_potential(make_divisor(e.coefficient.divisor, geometry), grid);
        coefficient = green::vanishing_density(potential, 1.0);
        coefficient *= e.coefficient.scale / coefficient.mean();
      }
      out.push_back({std::move(coefficient), e.rate});
    }
    return out;
  };
  return kw::KWProblem(c.epsilon, terms(c.kw.plus), terms(c.kw.minus),
                       torus::ScalarField::constant(geometry, grid, c.kw.w));
}

kw::ContinuationSchedule make_schedule(const RunConfig& c) {
  if (c.schedule.grid_rule == "core_resolving") {
    return kw::ContinuationSchedule::core_resolving(c.schedule.epsilons, make_geometry(c),
                                                    c.schedule.min_samples);
  }
  if (c.schedule.grid_rule == "fixed") {
    return kw::ContinuationSchedule::fixed_grid(c.schedule.epsilons, make_grid(c));
  }
  invalid("schedule.grid_rule: expected core_resolving or fixed, got '" + c.schedule.grid_rule + "'");
}

vortex::DiagnosticsConfig make_diagnostics(const RunConfig& c) {
  vortex::DiagnosticsConfig d;
  d.omega_radius = c.diagnostics.omega_radius;
  if (c.diagnostics.bump_radii) {
    d.bump_radii = vortex::BumpRadii{(*c.diagnostics.bump_radii)[0], (*c.diagnostics.bump_radii)[1]};
  }
  d.order_r_min = c.diagnostics.order_r_min;
  d.order_r_max = c.diagnostics.order_r_max;
  d.order_fit.n_radii = c.diagnostics.order_radii;
  d.order_fit.n_angles = c.diagnostics.order_angles;
  d.solver = c.solver.to_solver_config();
  return d;
}

void validate(const RunConfig& c) {
  try {
    const torus::TorusGeometry geometry = make_geometry(c);
    const torus::GridSpec grid = make_grid(c);
    const double half = 0.5 * geometry.min_length();
    if (c.output.empty()) invalid("output: must name a directory");

    c.solver.to_solver_config().validate();
    const auto& d = c.diagnostics;
    if (!(d.omega_radius > 0.0 && d.omega_radius < half)) {
      invalid("diagnostics.omega_radius: need 0 < omega_radius < min(lx, ly)/2");
    }
    if (d.bump_radii) {
      const auto [ri, ro] = *d.bump_radii;
      if (!(ri > 0.0 && ri < ro && ro < half)) {
        invalid("diagnostics.bump_radii: need 0 < r_inner < r_outer < min(lx, ly)/2");
      }
    }
    if (!(d.order_r_min > 0.0 && d.order_r_max > d.order_r_min && d.order_r_max < half)) {
      invalid("diagnostics: need 0 < order_r_min < order_r_max < min(lx, ly)/2");
    }
    if (d.order_radii < 2 || d.order_angles < 1) {
      invalid("diagnostics: need order_radii >= 2 and order_angles >= 1");
    }
    if (c.family != ExperimentKind::Kw && c.family != ExperimentKind::Classical) {
      make_normalization(c.normalization);
    }

    // Reductions on the smallest grid check divisors, Bradlow bounds and the
    // solvability dichotomy without touching the real grid.
    const torus::GridSpec probe = torus::GridSpec::square(8);
    switch (c.experiment) {
      case ExperimentKind::Kw: {
        if (!(c.epsilon > 0.0)) invalid("epsilon: must be positive");
        const kw::KWProblem problem = make_kw_problem(c);
        if (problem.classification() == kw::Classification::Vacuous) {
          invalid("kw: no positive coefficient in either family; the problem has no solution");
        }
        problem.require_balance();
        break;
      }
      case ExperimentKind::Sweep: {
        if (c.schedule.epsilons.empty()) invalid("schedule.epsilons: must not be empty");
        make_schedule(c).validate(geometry);
        for (double eps : c.schedule.epsilons) {
          try {
            vortex::reduce(make_spec(c, eps, probe));
          } catch (const Error& e) {
            std::ostringstream os;
            os << "at eps=" << eps << ": " << e.what();
            invalid(os.str());
          }
        }
        break;
      }
      default:
        vortex::reduce(make_spec(c, c.epsilon, probe));
        break;
    }
    (void)grid;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid(e.what());
  }
}

}  // namespace vortexlab::cli
