#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "vortexlab/cli/run.hpp"
#include "vortexlab/error.hpp"

using namespace vortexlab;
using namespace vortexlab::cli;
using testing::Rng;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir =
      fs::temp_directory_path() / ("vortexlab-cli-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Failure {
  ErrorKind kind;
  std::string message;
};

template <class F>
Failure failure_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  FAIL("expected an Error");
  return {ErrorKind::InvalidArgument, ""};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

int run_binary_with(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + VORTEXLAB_BINARY + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_binary(const std::string& args) { return run_binary_with("", args); }

void write(const fs::path& path, const std::string& text) { write_file_atomic(path, text); }

std::vector<PointEntry> random_points(Rng& rng, int lo, int hi, int max_count) {
  std::vector<PointEntry> out;
  const int n = rng.integer(0, max_count);
  for (int k = 0; k < n; ++k) {
    int m = 0;
    while (m == 0) m = rng.integer(lo, hi);
    out.push_back({rng.uniform(0, 1), rng.uniform(0, 1), m});
  }
  return out;
}

RunConfig random_config(Rng& rng, ExperimentKind kind) {
  RunConfig c;
  c.experiment = kind;
  c.family = kind;
  c.lx = rng.uniform(0.5, 2.0);
  c.ly = rng.uniform(0.5, 2.0);
  c.nx = 8 * static_cast<std::size_t>(rng.integer(1, 32));
  c.ny = 8 * static_cast<std::size_t>(rng.integer(1, 32));
  if (kind == ExperimentKind::Sweep) {
    const int f = rng.integer(0, 2);
    c.family = f == 0 ? ExperimentKind::Classical
                      : (f == 1 ? ExperimentKind::Mixed : ExperimentKind::Generalized);
    double eps = rng.uniform(0.1, 0.5);
    for (int k = rng.integer(1, 4); k > 0; --k) {
      c.schedule.epsilons.push_back(eps);
      eps *= rng.uniform(0.3, 0.9);
    }
    c.schedule.grid_rule = rng.integer(0, 1) ? "fixed" : "core_resolving";
    c.schedule.min_samples = static_cast<std::size_t>(rng.integer(8, 256));
  } else {
    c.epsilon = rng.uniform(1e-3, 1.0);
  }
  const std::vector<std::string> norms = {"mean_one", "unit_l2", "raw"};
  switch (c.family) {
    case ExperimentKind::Classical: c.divisor = random_points(rng, 1, 3, 3); break;
    case ExperimentKind::Mixed:
      c.divisor_plus = random_points(rng, 1, 3, 3);
      c.divisor_minus = random_points(rng, 1, 3, 2);
      c.tau = rng.uniform(-1, 1);
      c.scale_plus = rng.uniform(0.1, 3);
      c.scale_minus = rng.uniform(0.1, 3);
      if (rng.integer(0, 1)) c.degree = rng.uniform(-2, 2);
      c.normalization = norms[static_cast<std::size_t>(rng.integer(0, 2))];
      break;
    case ExperimentKind::Generalized:
      for (int k = rng.integer(1, 3); k > 0; --k) {
        int w = 0;
        while (w == 0) w = rng.integer(-3, 3);
        c.terms.push_back({random_points(rng, 1, 2, 2), w, rng.uniform(0.1, 2)});
      }
      c.tau = rng.uniform(-2, 2);
      c.normalization = norms[static_cast<std::size_t>(rng.integer(0, 2))];
      break;
    case ExperimentKind::Kw:
      for (int k = rng.integer(0, 2); k > 0; --k) {
        KwTermEntry t;
        t.rate = rng.uniform(0.5, 3);
        if (rng.integer(0, 1)) {
          t.coefficient.from_divisor = true;
          t.coefficient.divisor = random_points(rng, 1, 2, 2);
          t.coefficient.scale = rng.uniform(0.1, 2);
        } else {
          t.coefficient.constant = rng.uniform(0, 2);
        }
        (rng.integer(0, 1) ? c.kw.plus : c.kw.minus).push_back(t);
      }
      c.kw.w = rng.uniform(-2, 2);
      break;
    case ExperimentKind::Sweep: break;
  }
  c.solver.newton_tol = rng.uniform(1e-12, 1e-8);
  c.solver.max_newton = rng.integer(5, 100);
  c.solver.adaptive_cg = rng.integer(0, 1) == 1;
  c.diagnostics.omega_radius = rng.uniform(0.05, 0.2);
  if (rng.integer(0, 1)) c.diagnostics.bump_radii = std::array<double, 2>{0.05, 0.1};
  c.diagnostics.order_radii = rng.integer(2, 20);
  c.diagnostics.heatmaps = rng.integer(0, 1) == 1;
  c.output = "out-" + std::to_string(rng.integer(0, 999));
  return c;
}

const char* kMinimal = R"({"experiment": "classical", "epsilon": 0.2, "divisor": [[0.5, 0.5, 1]]})";

}  // namespace

TEST_CASE("minimal classical config echoes every default") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.experiment == ExperimentKind::Classical);
  CHECK(c.nx == 128);
  CHECK(c.solver.newton_tol == 1e-10);
  const std::string echo = echo_config(c);
  for (const char* key : {"\"geometry\"", "\"grid\"", "\"solver\"", "\"newton_tol\"",
                          "\"diagnostics\"", "\"omega_radius\"", "\"output\""}) {
    CHECK(contains(echo, key));
  }
  CHECK_FALSE(contains(echo, "\"terms\""));
  CHECK(parse_config(echo) == c);
}

TEST_CASE("echo round-trips random configs of every kind") {
  Rng rng(71);
  for (auto kind : {ExperimentKind::Kw, ExperimentKind::Classical, ExperimentKind::Mixed,
                    ExperimentKind::Generalized, ExperimentKind::Sweep}) {
    for (int trial = 0; trial < 40; ++trial) {
      const RunConfig c = random_config(rng, kind);
      const RunConfig back = parse_config_unchecked(echo_config(c));
      CHECK(back == c);
    }
  }
}

TEST_CASE("zero multiplicity is a validation error") {
  const auto f = failure_of([] {
    parse_config(R"({"experiment": "classical", "epsilon": 0.2, "divisor": [[0.5, 0.5, 0]]})");
  });
  CHECK(f.kind == ErrorKind::ValidationError);
  CHECK(contains(f.message, "multiplicity must be nonzero"));
}

TEST_CASE("generalized all-positive weights with tau = 0 cite the dichotomy") {
  const auto f = failure_of([] {
    parse_config(R"({"experiment": "generalized", "epsilon": 0.2, "tau": 0,
                     "terms": [{"divisor": [[0.3, 0.3, 1]], "weight": 2},
                               {"divisor": [[0.7, 0.7, 1]], "weight": 1}]})");
  });
  CHECK(f.kind == ErrorKind::ValidationError);
  CHECK(contains(f.message, "solvability dichotomy"));
}

TEST_CASE("Bradlow violation names the inequality") {
  const auto f = failure_of([] {
    parse_config(R"({"experiment": "classical", "epsilon": 0.4,
                     "divisor": [[0.25, 0.25, 1], [0.75, 0.75, 2]]})");
  });
  CHECK(f.kind == ErrorKind::ValidationError);
  CHECK(contains(f.message, "Bradlow: 2πdε² ≥ Vol"));

  const auto g = failure_of([] {
    parse_config(R"({"experiment": "sweep", "family": "classical",
                     "schedule": {"epsilons": [0.4, 0.2]}, "divisor": [[0.5, 0.5, 1]]})");
  });
  CHECK(contains(g.message, "at eps=0.4"));
}

TEST_CASE("syntax errors carry line and column") {
  const auto f = failure_of([] { parse_config("{\n  \"epsilon\": 0.2,\n  oops\n}"); });
  CHECK(f.kind == ErrorKind::ParseError);
  CHECK(contains(f.message, "line 3, column 3"));
}

TEST_CASE("unknown and inapplicable keys are rejected") {
  auto f = failure_of([] { parse_config(R"({"experiment": "classical", "epsilonn": 0.2})"); });
  CHECK(f.kind == ErrorKind::ValidationError);
  CHECK(contains(f.message, "unknown key 'epsilonn'"));

  f = failure_of([] {
    parse_config(R"({"experiment": "classical", "divisor": [], "solver": {"tol": 1}})");
  });
  CHECK(contains(f.message, "unknown key 'solver.tol'"));

  f = failure_of([] { parse_config(R"({"experiment": "classical", "tau": 1})"); });
  CHECK(contains(f.message, "'tau' does not apply to a classical experiment"));

  f = failure_of([] { parse_config(R"({"experiment": "sweep", "family": "mixed", "epsilon": 0.1,
                                       "schedule": {"epsilons": [0.1]}})"); });
  CHECK(contains(f.message, "'epsilon' does not apply"));

  f = failure_of([] { parse_config(R"({"experiment": "classical", "epsilon": "0.2"})"); });
  CHECK(contains(f.message, "epsilon: expected a number"));
}

TEST_CASE("subcommand and config kind must agree") {
  CHECK(parse_config(R"({"epsilon": 0.2, "divisor": []})", ExperimentKind::Classical).experiment ==
        ExperimentKind::Classical);
  const auto f = failure_of([] { parse_config(kMinimal, ExperimentKind::Mixed); });
  CHECK(f.kind == ErrorKind::ValidationError);
  CHECK(failure_of([] { parse_config(R"({"epsilon": 0.2})"); }).kind == ErrorKind::ValidationError);
}

TEST_CASE("validation covers schedule, solver and diagnostics settings") {
  auto kind = [](const std::string& text) { return failure_of([&] { parse_config(text); }).kind; };
  CHECK(kind(R"({"experiment": "sweep", "family": "classical", "divisor": [],
                 "schedule": {"epsilons": [0.1, 0.2]}})") == ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "sweep", "family": "classical", "divisor": [], "grid": {"nx": 16, "ny": 16},
                 "schedule": {"epsilons": [0.1], "grid_rule": "fixed"}})") == ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "classical", "divisor": [], "solver": {"armijo_shrink": 1.5}})") ==
        ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "classical", "divisor": [], "diagnostics": {"bump_radii": [0.2, 0.1]}})") ==
        ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "classical", "divisor": [], "grid": {"nx": 7, "ny": 8}})") ==
        ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "mixed", "divisor_plus": [[0.5, 0.5, -1]]})") ==
        ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "kw", "kw": {"plus": [], "minus": [], "w": 1}})") ==
        ErrorKind::ValidationError);
  CHECK(kind(R"({"experiment": "kw", "kw": {"plus": [{"coefficient": 1}], "w": 1}})") ==
        ErrorKind::ValidationError);
  CHECK_NOTHROW(parse_config(R"({"experiment": "kw", "kw": {"plus": [{"coefficient": 1}], "w": -1}})"));
}

TEST_CASE("csv and pgm round-trip") {
  std::vector<CsvRow> rows(3);
  rows[0] = {0.1, 0, 0.9, 1e-3, 1e-12, -2e-12, 0.5, 1.5, 0.97};
  rows[1] = {0.1, -1, 0.1, 1e-3, 1e-12, -2e-12, 0.5, 1.5, std::nullopt};
  rows[2] = {1.0 / 3.0, 2, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
             std::nullopt, std::nullopt};
  const std::string text = csv_text(rows);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  const auto back = parse_csv(text);
  REQUIRE(back.size() == rows.size());
  CHECK(back[2].epsilon == rows[2].epsilon);
  CHECK(back[0].order_fit == rows[0].order_fit);
  CHECK_FALSE(back[1].order_fit.has_value());
  CHECK(csv_text(back) == text);

  const torus::TorusGeometry g(1.0, 2.0);
  const auto field = torus::ScalarField::from_function(
      g, torus::GridSpec(16, 8), [](double x, double y) { return x + 10 * y; });
  const Heatmap h = make_heatmap(field);
  const std::string bytes = pgm_bytes(h);
  CHECK(bytes.rfind("P5\n16 8\n65535\n", 0) == 0);
  const Heatmap p = parse_pgm(bytes);
  CHECK(p.pixels == h.pixels);
  CHECK(h.pixels[0] == std::lround(65535 * 17.5 / 18.4375));  // top-left: x = 0, y = 1.75
  CHECK(h.pixels[7 * 16] == 0);  // bottom-left is the minimum sample
  CHECK(h.pixels[15] == 65535);  // top-right is the maximum
}

TEST_CASE("exit codes follow the taxonomy") {
  CHECK(exit_code_for(ErrorKind::ParseError) == 2);
  CHECK(exit_code_for(ErrorKind::ValidationError) == 2);
  CHECK(exit_code_for(ErrorKind::MaxIterExceeded) == 3);
  CHECK(exit_code_for(ErrorKind::NoConvergence) == 3);
  CHECK(exit_code_for(ErrorKind::IoError) == 1);
}

TEST_CASE("vacuum runs have vanishing residual columns") {
  const fs::path dir = scratch("vacuum");
  for (const std::string& text :
       {std::string(R"({"experiment": "classical", "epsilon": 0.2, "divisor": [],
                        "grid": {"nx": 32, "ny": 32}, "output": ")") + (dir / "c").string() + "\"}",
        std::string(R"({"experiment": "kw", "epsilon": 0.2, "grid": {"nx": 32, "ny": 32},
                        "kw": {"plus": [{"coefficient": 1}], "minus": [{"coefficient": 1}], "w": 0},
                        "output": ")") + (dir / "k").string() + "\"}"}) {
    const RunConfig c = parse_config(text);
    const RunManifest m = run(c);
    CHECK(m.exit_code == 0);
    const auto rows = parse_csv(read_file(fs::path(c.output) / "results.csv"));
    REQUIRE(rows.size() == 1);
    for (const auto& col : {rows[0].sup_deviation, rows[0].bradlow_residual,
                            rows[0].identity_residual, rows[0].sup_f, rows[0].sup_grad_f}) {
      if (col) CHECK(std::abs(*col) <= 1e-9);
    }
    CHECK(rows[0].identity_residual.has_value());
  }
}

TEST_CASE("heatmap of |phi|^2 has its dark core at the divisor point") {
  const fs::path dir = scratch("heatmap");
  const RunConfig c = parse_config(
      R"({"experiment": "classical", "epsilon": 0.1, "divisor": [[0.3, 0.6, 1]],
          "grid": {"nx": 64, "ny": 64}, "output": ")" + dir.string() + "\"}");
  REQUIRE(run(c).exit_code == 0);
  const Heatmap h = parse_pgm(read_file(dir / "phi_sq.pgm"));
  std::size_t best = 0;
  for (std::size_t k = 1; k < h.pixels.size(); ++k) {
    if (h.pixels[k] < h.pixels[best]) best = k;
  }
  const std::size_t i = best % h.width;
  const std::size_t j = h.height - 1 - best / h.width;
  const double cell = 1.0 / 64.0;
  CHECK(std::abs(i * cell - 0.3) <= 2 * cell);
  CHECK(std::abs(j * cell - 0.6) <= 2 * cell);

  const auto side = nlohmann::json::parse(read_file(dir / "phi_sq.pgm.json"));
  CHECK(side["min"].get<double>() >= 0.0);
  CHECK(side["min"].get<double>() < 0.05);
  CHECK(side["max"].get<double>() <= 1.0);
  CHECK(side["width"].get<int>() == 64);
}

TEST_CASE("manifest records config, timings and diagnostics") {
  const fs::path dir = scratch("manifest");
  const RunConfig c = parse_config(
      R"({"experiment": "mixed", "epsilon": 0.2, "divisor_plus": [[0.25, 0.25, 1]],
          "divisor_minus": [[0.75, 0.75, 1]], "degree": 0.5,
          "grid": {"nx": 32, "ny": 32}, "output": ")" + dir.string() + "\"}");
  const RunManifest m = run(c);
  CHECK(m.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(dir / "manifest.json"));
  CHECK(j["status"] == "ok");
  CHECK(j["vortexlab_version"] == version_string());
  CHECK(j["error"].is_null());
  CHECK(j["config"]["experiment"] == "mixed");
  CHECK(j["timings"].size() >= 3);
  CHECK(j["diagnostics"]["rows"].size() == 1);
  CHECK(j["warnings"].size() == 1);
  for (const auto& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().extension() != ".tmp");
  }
  CHECK(fs::exists(dir / "convergence.svg"));
}

TEST_CASE("solver failure keeps completed rows and records the error") {
  const fs::path dir = scratch("partial");
  const RunConfig c = parse_config(
      R"({"experiment": "sweep", "family": "classical", "divisor": [[0.5, 0.5, 1]],
          "schedule": {"epsilons": [0.2, 0.1, 0.05]}, "solver": {"max_newton": 4},
          "diagnostics": {"heatmaps": false}, "output": ")" + dir.string() + "\"}");
  const RunManifest m = run(c);
  CHECK(m.exit_code == 3);
  REQUIRE(m.failure.has_value());
  CHECK(m.failure->kind == ErrorKind::MaxIterExceeded);
  CHECK(m.failure->epsilon == doctest::Approx(0.1));

  const auto rows = parse_csv(read_file(dir / "results.csv"));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.epsilon == 0.2);
  const auto j = nlohmann::json::parse(read_file(dir / "manifest.json"));
  CHECK(j["status"] == "failed");
  CHECK(j["error"]["kind"] == "MaxIterExceeded");
  CHECK(j["error"]["epsilon"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("binary: identical CSVs, exit codes and report") {
  const fs::path dir = scratch("binary");
  write(dir / "run.json", R"({"experiment": "sweep", "family": "mixed",
      "divisor_plus": [[0.25, 0.25, 1], [0.75, 0.25, 1]], "divisor_minus": [[0.5, 0.75, 1]],
      "schedule": {"epsilons": [0.2, 0.1]}, "diagnostics": {"heatmaps": false}})");
  const std::string cfg = "--config " + (dir / "run.json").string();
  REQUIRE(run_binary("sweep " + cfg + " --quiet --out " + (dir / "a").string()) == 0);
  REQUIRE(run_binary("sweep " + cfg + " --quiet --out " + (dir / "b").string()) == 0);
  CHECK(read_file(dir / "a" / "results.csv") == read_file(dir / "b" / "results.csv"));
  REQUIRE(run_binary_with("VORTEXLAB_THREADS=3", "sweep " + cfg + " --quiet --out " +
                                                     (dir / "c").string()) == 0);
  CHECK(read_file(dir / "a" / "results.csv") == read_file(dir / "c" / "results.csv"));

  fs::remove(dir / "a" / "convergence.svg");
  CHECK(run_binary("report " + (dir / "a").string()) == 0);
  CHECK(fs::exists(dir / "a" / "convergence.svg"));

  write(dir / "bad.json", R"({"experiment": "classical", "divisor": [[0.5, 0.5, 0]]})");
  CHECK(run_binary("classical --config " + (dir / "bad.json").string() + " --out " +
                   (dir / "bad").string()) == 2);
  const auto j = nlohmann::json::parse(read_file(dir / "bad" / "manifest.json"));
  CHECK(j["error"]["kind"] == "ValidationError");

  write(dir / "broken.json", "{\"experiment\": ");
  CHECK(run_binary("classical --config " + (dir / "broken.json").string()) == 2);
  CHECK(run_binary("classical --config " + (dir / "missing.json").string()) == 1);

  write(dir / "fail.json", R"({"experiment": "classical", "epsilon": 0.2, "divisor": [[0.5, 0.5, 1]],
      "grid": {"nx": 32, "ny": 32}, "solver": {"max_newton": 1}})");
  CHECK(run_binary("classical --config " + (dir / "fail.json").string() + " --out " +
                   (dir / "fail").string()) == 3);
  CHECK(fs::exists(dir / "fail" / "manifest.json"));

  write(dir / "eps.json", R"({"experiment": "classical", "epsilon": 0.2, "divisor": [[0.5, 0.5, 1]]})");
  REQUIRE(run_binary("classical --config " + (dir / "eps.json").string() +
                     " --epsilon 0.3 --grid 32 --quiet --out " + (dir / "eps").string()) == 0);
  const auto e = nlohmann::json::parse(read_file(dir / "eps" / "manifest.json"));
  CHECK(e["config"]["epsilon"].get<double>() == 0.3);
  CHECK(e["config"]["grid"]["nx"].get<int>() == 32);
}

TEST_CASE("shipped configs validate") {
  for (const auto& entry : fs::directory_iterator(VORTEXLAB_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(parse_config(read_file(entry.path())));
  }
}

TEST_CASE("sweep CSV reproduces the admissible concentration numbers") {
  const fs::path dir = scratch("concentration");
  RunConfig c = parse_config(read_file(fs::path(VORTEXLAB_CONFIG_DIR) / "sweep_classical.json"));
  c.output = dir.string();
  c.diagnostics.heatmaps = false;
  REQUIRE(run(c).exit_code == 0);
  const auto rows = parse_csv(read_file(dir / "results.csv"));
  REQUIRE(rows.size() == 4 * 3);
  const double targets[] = {1.0, 2.0};
  double previous = INFINITY;
  for (const auto& r : rows) {
    if (r.point_index == -1) {
      CHECK(*r.sup_deviation < previous);
      previous = *r.sup_deviation;
      CHECK(std::abs(*r.bradlow_residual) <= 1e-9);
    }
    if (r.epsilon == 0.025 && r.point_index >= 0) {
      CHECK(std::abs(*r.curvature_mass - targets[r.point_index]) <= 0.02);
    }
  }
  CHECK(previous <= 0.05);
}
