#include "vortexlab/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "vortexlab/torus/quadrature.hpp"

#ifndef VORTEXLAB_VERSION
#define VORTEXLAB_VERSION "unknown"
#endif

namespace vortexlab::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const vortex::DiagnosticsReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"x", p.point.x},
                      {"y", p.point.y},
                      {"expected_mass", optional_number(p.expected_mass)},
                      {"r_inner", p.radii.r_inner},
                      {"r_outer", p.radii.r_outer},
                      {"curvature_mass", p.curvature_mass},
                      {"order_fit", optional_number(p.order_fit)}});
  }
  return {{"epsilon", r.epsilon},
          {"grid", {r.grid.nx(), r.grid.ny()}},
          {"newton_iterations", r.newton_iterations},
          {"residual_sup", r.residual_sup},
          {"energy_monotone", r.energy_monotone},
          {"total_mass", r.total_mass},
          {"complement_mass", r.complement_mass},
          {"sup_deviation", r.sup_deviation},
          {"identities",
           {{"bradlow", r.identities.bradlow},
            {"identity", r.identities.identity},
            {"chern", r.identities.chern}}},
          {"apriori",
           {{"sup_f", r.apriori.sup_f},
            {"sup_grad_f", r.apriori.sup_grad_f},
            {"l2_exp_f", finite_or_null(r.apriori.l2_exp_f)},
            {"l2_exp_minus_f", finite_or_null(r.apriori.l2_exp_minus_f)}}},
          {"points", points},
          {"solve_seconds", r.solve_seconds}};
}

// Sum A e^{alpha f} - sum B e^{-beta f} + w integrated; zero for any solution.
double integrated_equation(const kw::KWProblem& problem, const torus::ScalarField& f) {
  double total = torus::integrate(problem.w());
  for (const auto& t : problem.plus_terms()) {
    const double a = t.rate;
    total += torus::integrate(t.coefficient * f.map([a](double v) { return std::exp(a * v); }));
  }
  for (const auto& t : problem.minus_terms()) {
    const double b = t.rate;
    total -= torus::integrate(t.coefficient * f.map([b](double v) { return std::exp(-b * v); }));
  }
  return total;
}

void record_warnings(RunManifest& m, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    if (std::find(m.warnings.begin(), m.warnings.end(), w) == m.warnings.end()) {
      m.warnings.push_back(w);
    }
  }
}

void emit_fields(const RunConfig& config, const vortex::ReducedModel& model,
                 const torus::ScalarField& f, RunManifest& m) {
  if (!config.diagnostics.heatmaps) return;
  const fs::path dir = config.output;
  const auto fields = vortex::reconstruct(model, f);
  emit_heatmap(fields.phi_sq_total, dir / "phi_sq.pgm", "|phi|^2");
  emit_heatmap(fields.curvature, dir / "curvature.pgm", "curvature");
  emit_heatmap(f, dir / "f.pgm", "f");
  for (const char* name : {"phi_sq.pgm", "curvature.pgm", "f.pgm"}) {
    m.artifacts.push_back(name);
    m.artifacts.push_back(std::string(name) + ".json");
  }
}

void run_kw(const RunConfig& config, RunManifest& m) {
  auto start = Clock::now();
  const kw::KWProblem problem = make_kw_problem(config);
  m.timings.push_back({"setup", seconds_since(start)});

  start = Clock::now();
  kw::KWSolution solution = kw::kw_solve(problem, config.solver.to_solver_config());
  m.timings.push_back({"solve eps=" + eps_label(config.epsilon), seconds_since(start)});

  start = Clock::now();
  CsvRow row;
  row.epsilon = config.epsilon;
  row.point_index = -1;
  row.identity_residual = integrated_equation(problem, solution.f);
  const auto whole = torus::RegionMask::full(problem.geometry(), problem.grid());
  const kw::AprioriRow apriori = kw::apriori_row(config.epsilon, solution.f, whole);
  row.sup_f = apriori.sup_f;
  row.sup_grad_f = apriori.sup_grad_f;
  try {
    const kw::KWProblem limit = problem.with_epsilon(0.0);
    const kw::LimitProfile profile = kw::kw_limit(limit);
    row.sup_deviation = torus::sup_norm(solution.f - profile.f, profile.valid);
  } catch (const Error&) {
    // no pointwise limit (e.g. a one-sided problem with a sign-definite w)
  }
  m.rows = {row};
  m.timings.push_back({"diagnostics", seconds_since(start)});
  if (config.diagnostics.heatmaps) {
    emit_heatmap(solution.f, fs::path(config.output) / "f.pgm", "f");
    m.artifacts.push_back("f.pgm");
    m.artifacts.push_back("f.pgm.json");
  }
  m.kw_solution = std::move(solution);
}

void run_single(const RunConfig& config, RunManifest& m) {
  const auto start = Clock::now();
  const vortex::VortexSpec spec = make_spec(config, config.epsilon, make_grid(config));
  vortex::SingleRun single = vortex::solve_and_diagnose(spec, make_diagnostics(config));
  const double total = seconds_since(start);
  m.timings.push_back({"solve eps=" + eps_label(config.epsilon), single.report.solve_seconds});
  m.timings.push_back({"reduce+diagnostics", total - single.report.solve_seconds});
  record_warnings(m, single.model.warnings);
  m.reports = {single.report};
  m.rows = csv_rows(m.reports);
  emit_fields(config, single.model, single.solution.f, m);
}

void run_sweep(const RunConfig& config, RunManifest& m) {
  const kw::ContinuationSchedule schedule = make_schedule(config);
  const vortex::SpecFamily family = [&config](double eps, const torus::GridSpec& grid) {
    return make_spec(config, eps, grid);
  };
  vortex::SweepReport report;
  std::optional<vortex::SweepError> failure;
  const auto start = Clock::now();
  try {
    report = vortex::adiabatic_sweep(family, schedule, make_diagnostics(config));
  } catch (const vortex::SweepError& e) {
    failure = e;
    report = e.partial();
  }
  double solve_total = 0.0;
  for (const auto& row : report.rows) {
    m.timings.push_back({"solve eps=" + eps_label(row.epsilon), row.solve_seconds});
    solve_total += row.solve_seconds;
  }
  m.timings.push_back({"reduce+diagnostics", seconds_since(start) - solve_total});
  record_warnings(m, report.warnings);
  m.reports = report.rows;
  m.rows = csv_rows(m.reports);

  if (!report.rows.empty()) {
    const auto& last = report.rows.back();
    const vortex::ReducedModel model = vortex::reduce(make_spec(config, last.epsilon, last.grid));
    emit_fields(config, model, report.solutions.back().f, m);
  }
  if (failure) throw *failure;
}

void finish_outputs(const RunConfig& config, RunManifest& m) {
  const fs::path dir = config.output;
  emit_csv(m.rows, dir / "results.csv");
  m.artifacts.insert(m.artifacts.begin(), "results.csv");
  if (config.diagnostics.svg && !m.rows.empty() && config.experiment != ExperimentKind::Kw) {
    write_file_atomic(dir / "convergence.svg", convergence_svg(m.rows));
    m.artifacts.push_back("convergence.svg");
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, dir.string() + ": cannot create directory: " + ec.message());
}

}  // namespace

std::string version_string() { return VORTEXLAB_VERSION; }

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError: return 2;
    case ErrorKind::IoError: return 1;
    default: return 3;
  }
}

RunManifest run(const RunConfig& config) {
  RunManifest m;
  m.version = version_string();
  m.config_echo = echo_config(config);
  ensure_directory(config.output);

  const auto start = Clock::now();
  try {
    switch (config.experiment) {
      case ExperimentKind::Kw: run_kw(config, m); break;
      case ExperimentKind::Sweep: run_sweep(config, m); break;
      default: run_single(config, m); break;
    }
  } catch (const vortex::SweepError& e) {
    m.failure = RunFailure{e.kind(), e.what(), e.epsilon()};
  } catch (const Error& e) {
    std::optional<double> eps;
    if (config.experiment != ExperimentKind::Sweep) eps = config.epsilon;
    m.failure = RunFailure{e.kind(), e.what(), eps};
  }
  m.exit_code = m.failure ? exit_code_for(m.failure->kind) : 0;

  const auto out_start = Clock::now();
  try {
    finish_outputs(config, m);
  } catch (const Error& e) {
    if (!m.failure) m.failure = RunFailure{e.kind(), e.what(), std::nullopt};
    m.exit_code = exit_code_for(e.kind());
  }
  m.timings.push_back({"outputs", seconds_since(out_start)});
  m.timings.push_back({"total", seconds_since(start)});
  write_manifest(m, config.output);
  return m;
}

RunManifest failed_manifest(const std::string& config_echo, const Error& error) {
  RunManifest m;
  m.version = version_string();
  m.config_echo = config_echo;
  m.failure = RunFailure{error.kind(), error.what(), std::nullopt};
  m.exit_code = exit_code_for(error.kind());
  return m;
}

std::string manifest_json(const RunManifest& m) {
  json j;
  j["vortexlab_version"] = m.version;
  j["status"] = m.failure ? "failed" : "ok";
  j["exit_code"] = m.exit_code;
  j["config"] = m.config_echo.empty() ? json(nullptr) : json::parse(m.config_echo);
  json timings = json::array();
  for (const auto& t : m.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  j["timings"] = timings;
  json reports = json::array();
  for (const auto& r : m.reports) reports.push_back(report_json(r));
  json diagnostics = {{"rows", reports}};
  if (m.kw_solution) {
    const auto& s = *m.kw_solution;
    diagnostics["kw"] = {{"epsilon", s.epsilon},
                         {"classification", std::string(kw::to_string(s.classification))},
                         {"newton_iterations", s.iterations},
                         {"cg_iterations", s.cg_iterations},
                         {"residual_sup", s.residual_sup},
                         {"residual_l2", s.residual_l2},
                         {"energy", s.energy},
                         {"energy_history", s.energy_history}};
  }
  json table = json::array();
  for (const auto& r : m.rows) {
    table.push_back({{"epsilon", r.epsilon},
                     {"point_index", r.point_index},
                     {"curvature_mass", optional_number(r.curvature_mass)},
                     {"sup_deviation", optional_number(r.sup_deviation)},
                     {"bradlow_residual", optional_number(r.bradlow_residual)},
                     {"identity_residual", optional_number(r.identity_residual)},
                     {"sup_f", optional_number(r.sup_f)},
                     {"sup_grad_f", optional_number(r.sup_grad_f)},
                     {"order_fit", optional_number(r.order_fit)}});
  }
  diagnostics["table"] = table;
  j["diagnostics"] = diagnostics;
  j["warnings"] = m.warnings;
  j["artifacts"] = m.artifacts;
  if (m.failure) {
    j["error"] = {{"kind", std::string(to_string(m.failure->kind))},
                  {"message", m.failure->message},
                  {"epsilon", optional_number(m.failure->epsilon)}};
  } else {
    j["error"] = nullptr;
  }
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const fs::path& directory) {
  ensure_directory(directory);
  write_file_atomic(directory / "manifest.json", manifest_json(manifest));
}

}  // namespace vortexlab::cli
