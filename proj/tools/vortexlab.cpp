// vortexlab: run Kazdan-Warner and vortex experiments from a JSON config.
//
//   vortexlab classical --config run.json [--out DIR] [--epsilon F] [--grid N] [--quiet]
//   vortexlab sweep --config sweep.json
//   vortexlab report DIR          (re-plots DIR/results.csv into DIR/convergence.svg)

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vortexlab/cli/run.hpp"

namespace vl = vortexlab;
namespace cli = vortexlab::cli;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<double> epsilon;
  std::optional<std::size_t> grid;
  bool quiet = false;
};

void apply(const Overrides& o, cli::RunConfig& c) {
  if (o.out) c.output = *o.out;
  if (o.epsilon) {
    if (c.experiment == cli::ExperimentKind::Sweep) {
      c.schedule.epsilons = {*o.epsilon};
    } else {
      c.epsilon = *o.epsilon;
    }
  }
  if (o.grid) {
    c.nx = c.ny = *o.grid;
    if (c.experiment == cli::ExperimentKind::Sweep && c.schedule.grid_rule == "core_resolving") {
      c.schedule.min_samples = *o.grid;
    }
  }
}

void print_table(const cli::RunManifest& m) {
  std::printf("%-12s %5s %14s %12s %12s %12s %10s %10s %8s\n", "epsilon", "point", "curv_mass",
              "sup_dev", "bradlow", "identity", "sup_f", "sup_grad", "order");
  auto cell = [](const std::optional<double>& v, const char* fmt, char* buf, std::size_t n) {
    if (v) {
      std::snprintf(buf, n, fmt, *v);
    } else {
      std::snprintf(buf, n, "-");
    }
    return buf;
  };
  char b[7][32];
  for (const auto& r : m.rows) {
    std::printf("%-12g %5d %14s %12s %12s %12s %10s %10s %8s\n", r.epsilon, r.point_index,
                cell(r.curvature_mass, "%.6f", b[0], 32), cell(r.sup_deviation, "%.3e", b[1], 32),
                cell(r.bradlow_residual, "%.2e", b[2], 32),
                cell(r.identity_residual, "%.2e", b[3], 32), cell(r.sup_f, "%.4f", b[4], 32),
                cell(r.sup_grad_f, "%.4f", b[5], 32), cell(r.order_fit, "%.3f", b[6], 32));
  }
}

int run_experiment(cli::ExperimentKind kind, const Overrides& o) {
  std::string echo;
  std::string output = o.out.value_or("");
  try {
    const std::string text = cli::read_file(o.config_path);
    cli::RunConfig config = cli::parse_config_unchecked(text, kind);
    apply(o, config);
    output = config.output;
    echo = cli::echo_config(config);
    cli::validate(config);

    const cli::RunManifest m = cli::run(config);
    if (!o.quiet) {
      for (const auto& w : m.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      print_table(m);
      std::printf("wrote %s/manifest.json\n", config.output.c_str());
    }
    if (m.failure) std::fprintf(stderr, "error: %s\n", m.failure->message.c_str());
    return m.exit_code;
  } catch (const vl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const cli::RunManifest m = cli::failed_manifest(echo, e);
    if (!output.empty() && e.kind() != vl::ErrorKind::IoError) {
      try {
        cli::write_manifest(m, output);
      } catch (const vl::Error& io) {
        std::fprintf(stderr, "error: %s\n", io.what());
        return 1;
      }
    }
    return m.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int run_report(const std::string& dir, bool quiet) {
  try {
    const std::filesystem::path base = dir;
    const auto rows = cli::parse_csv(cli::read_file(base / "results.csv"));
    cli::write_file_atomic(base / "convergence.svg", cli::convergence_svg(rows));
    if (!quiet) std::printf("wrote %s\n", (base / "convergence.svg").string().c_str());
    return 0;
  } catch (const vl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::exit_code_for(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazdan-Warner and vortex experiments on flat tori"};
  app.set_version_flag("--version", cli::version_string());
  app.require_subcommand(1);

  Overrides o;
  std::optional<cli::ExperimentKind> chosen;
  for (auto kind : {cli::ExperimentKind::Kw, cli::ExperimentKind::Classical,
                    cli::ExperimentKind::Mixed, cli::ExperimentKind::Generalized,
                    cli::ExperimentKind::Sweep}) {
    const std::string name(cli::to_string(kind));
    auto* sub = app.add_subcommand(name, "run a " + name + " experiment");
    sub->add_option("--config", o.config_path, "JSON config file")->required();
    sub->add_option("--out", o.out, "output directory (overrides the config)");
    sub->add_option("--epsilon", o.epsilon,
                    "epsilon (a sweep runs just this one value)");
    sub->add_option("--grid", o.grid, "samples per side (a core-resolving sweep uses it as the minimum)")
        ->check(CLI::Range(8, 1 << 14));
    sub->add_flag("--quiet", o.quiet, "print nothing but errors");
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  std::string report_dir;
  bool report_quiet = false;
  auto* report = app.add_subcommand("report", "plot DIR/results.csv into DIR/convergence.svg");
  report->add_option("dir", report_dir, "run directory");
  report->add_option("--out", report_dir, "run directory");
  report->add_flag("--quiet", report_quiet, "print nothing but errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (report->parsed()) {
    if (report_dir.empty()) {
      std::fprintf(stderr, "error: report needs a run directory\n");
      return 2;
    }
    return run_report(report_dir, report_quiet);
  }
  return run_experiment(*chosen, o);
}
